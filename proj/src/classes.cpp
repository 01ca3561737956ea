#include "agler/classes.hpp"

#include <cmath>
#include <sstream>

#include "agler/error.hpp"
#include "agler/linalg.hpp"

namespace agler {
namespace {

std::string fmt_residual(const char* what, double value) {
  std::ostringstream os;
  os << what << " (residual " << value << ")";
  return os.str();
}

// Collects violations; throws on the first one in strict mode.
class Checker {
 public:
  Checker(Validation mode, std::vector<std::string>& sink, ErrorKind kind)
      : mode_(mode), sink_(sink), kind_(kind) {}

  void require(bool ok, const std::string& message) {
    if (ok) return;
    if (mode_ == Validation::kStrict) throw Error(kind_, message);
    sink_.push_back(message);
  }

  void residual(double value, double limit, const char* what) {
    require(value <= limit, fmt_residual(what, value));
  }

 private:
  Validation mode_;
  std::vector<std::string>& sink_;
  ErrorKind kind_;
};

void check_block_shapes(const ComplexMatrix& a, const ComplexMatrix& b,
                        const ComplexMatrix& c, const ComplexMatrix& d,
                        std::size_t dec_dim) {
  const std::size_t n = a.rows();
  if (!a.is_square() || b.rows() != n || c.cols() != n ||
      d.rows() != c.rows() || d.cols() != b.cols()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "colligation blocks have inconsistent shapes");
  }
  if (dec_dim != n) {
    throw Error(ErrorKind::kDimensionMismatch,
                "decomposition dimension " + std::to_string(dec_dim) +
                    " != state dimension " + std::to_string(n));
  }
}

}  // namespace

SchurGRColligation make_schur_gr(ComplexMatrix a, ComplexMatrix b,
                                 ComplexMatrix c, ComplexMatrix d,
                                 DecompositionOfIdentity dec, Metric metric,
                                 Validation mode, const Tolerances& tol) {
  check_block_shapes(a, b, c, d, dec.dim());
  SchurGRColligation col{std::move(a), std::move(b), std::move(c),
                         std::move(d), std::move(dec), metric, {}};
  Checker check(mode, col.warnings, ErrorKind::kInvariantViolation);
  check.require(col.dec.is_spectral(), "decomposition must be spectral");
  const ComplexMatrix u = col.colligation_matrix();
  check.require(u.all_finite(), "non-finite colligation entry");
  switch (metric) {
    case Metric::kUnitary:
      check.require(u.is_square(), "unitary colligation needs p = q");
      if (u.is_square()) {
        check.residual(unitary_residual(u), tol.structure,
                       "colligation is not unitary");
      }
      break;
    case Metric::kIsometric:
      check.residual(isometry_residual(u), tol.structure,
                     "colligation is not isometric");
      break;
    case Metric::kCoisometric:
      check.residual(coisometry_residual(u), tol.structure,
                     "colligation is not coisometric");
      break;
    case Metric::kContractive:
      check.residual(op_norm(u) - 1.0, tol.psd_slack,
                     "colligation is not contractive");
      break;
  }
  return col;
}

HerglotzDiskColligation make_herglotz_colligation(
    ComplexMatrix a, ComplexMatrix b, ComplexMatrix c, ComplexMatrix d,
    DecompositionOfIdentity dec, Validation mode, const Tolerances& tol) {
  check_block_shapes(a, b, c, d, dec.dim());
  if (c.rows() != b.cols()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "Herglotz colligation needs equal input/output dims");
  }
  HerglotzDiskColligation col{std::move(a), std::move(b), std::move(c),
                              std::move(d), std::move(dec), {}};
  Checker check(mode, col.warnings, ErrorKind::kInvariantViolation);
  check.require(col.dec.is_spectral(), "decomposition must be spectral");
  check.residual(unitary_residual(col.a), tol.structure, "A is not unitary");
  check.residual(max_abs_diff(col.b, times_adjoint(col.a, col.c)), tol.structure,
                 "B != AC^*");
  const ComplexMatrix cc = times_adjoint(col.c, col.c);
  check.residual(max_abs_diff(col.d + col.d.adjoint(), cc), tol.structure,
                 "D + D^* != CC^*");
  check.residual(max_abs_diff(cc, adjoint_times(col.b, col.b)), tol.structure,
                 "CC^* != B^*B");
  return col;
}

HerglotzRepresentation make_herglotz_rep(ComplexMatrix r, ComplexMatrix u,
                                         ComplexMatrix v,
                                         DecompositionOfIdentity dec,
                                         Validation mode,
                                         const Tolerances& tol) {
  if (!r.is_square() || !u.is_square() || v.rows() != u.rows() ||
      v.cols() != r.rows()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "Herglotz representation blocks have inconsistent shapes");
  }
  if (dec.dim() != u.rows()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "decomposition dimension != state dimension");
  }
  HerglotzRepresentation rep{std::move(r), std::move(u), std::move(v),
                             std::move(dec), {}};
  Checker check(mode, rep.warnings, ErrorKind::kInvariantViolation);
  check.require(rep.dec.is_spectral(), "decomposition must be spectral");
  check.residual(skew_residual(rep.r), tol.structure, "R is not skew-adjoint");
  check.residual(unitary_residual(rep.u), tol.structure, "U is not unitary");
  return rep;
}

ComplexMatrix scattering_graph_gram(const ComplexMatrix& a,
                                    const ComplexMatrix& b,
                                    const ComplexMatrix& c,
                                    const ComplexMatrix& d) {
  const ComplexMatrix g11 = a + a.adjoint() + adjoint_times(c, c);
  const ComplexMatrix g12 = b + adjoint_times(c, d);
  const ComplexMatrix g22 =
      adjoint_times(d, d) - ComplexMatrix::identity(d.cols());
  return assemble(g11, g12, g12.adjoint(), g22);
}

PiNode make_pi_node(ComplexMatrix a, ComplexMatrix b, ComplexMatrix c,
                    ComplexMatrix d, DecompositionOfIdentity dec,
                    PiFlavor flavor, Validation mode, const Tolerances& tol) {
  check_block_shapes(a, b, c, d, dec.dim());
  PiNode node{std::move(a), std::move(b), std::move(c), std::move(d),
              dec.as_positive(), flavor, {}};
  Checker check(mode, node.warnings, ErrorKind::kInvariantViolation);
  if (flavor == PiFlavor::kImpedance) {
    check.require(node.c.rows() == node.b.cols(),
                  "impedance node needs equal input/output dims");
    check.residual(skew_residual(node.a), tol.structure, "A is not skew-adjoint");
    if (node.c.rows() == node.b.cols()) {
      check.residual(max_abs_diff(node.b, node.c.adjoint()), tol.structure,
                     "B != C^*");
      check.residual(skew_residual(node.d), tol.structure,
                     "D is not skew-adjoint");
    }
  } else {
    check.residual(
        scattering_graph_gram(node.a, node.b, node.c, node.d).max_abs(),
        tol.structure, "graph Gram does not vanish");
  }
  return node;
}

void require_in_polydisk(std::span<const cplx> z, std::size_t d) {
  if (z.size() != d) {
    throw Error(ErrorKind::kDimensionMismatch,
                "point has " + std::to_string(z.size()) +
                    " coordinates, expected " + std::to_string(d));
  }
  for (std::size_t k = 0; k < z.size(); ++k) {
    if (!(std::abs(z[k]) < 1.0)) {
      throw Error(ErrorKind::kOutsideDomain,
                  "coordinate " + std::to_string(k + 1) + " not in the unit disk");
    }
  }
}

void require_in_halfplane(std::span<const cplx> w, std::size_t d) {
  if (w.size() != d) {
    throw Error(ErrorKind::kDimensionMismatch,
                "point has " + std::to_string(w.size()) +
                    " coordinates, expected " + std::to_string(d));
  }
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (!(w[k].real() > 0.0) || !std::isfinite(w[k].imag())) {
      throw Error(ErrorKind::kOutsideDomain,
                  "coordinate " + std::to_string(k + 1) +
                      " not in the right halfplane");
    }
  }
}

namespace {

ComplexMatrix gr_transfer(const ComplexMatrix& a, const ComplexMatrix& b,
                          const ComplexMatrix& c, const ComplexMatrix& d,
                          const DecompositionOfIdentity& dec,
                          std::span<const cplx> z, const Tolerances& tol) {
  require_in_polydisk(z, dec.d());
  const ComplexMatrix p = pencil_at(dec, z);
  const ComplexMatrix lhs = ComplexMatrix::identity(a.rows()) - p * a;
  return d + c * solve(lhs, p * b, tol);
}

}  // namespace

ComplexMatrix eval_schur_disk(const SchurGRColligation& col,
                              std::span<const cplx> z, const Tolerances& tol) {
  return gr_transfer(col.a, col.b, col.c, col.d, col.dec, z, tol);
}

ComplexMatrix eval_herglotz_disk(const HerglotzDiskColligation& col,
                                 std::span<const cplx> z,
                                 const Tolerances& tol) {
  return gr_transfer(col.a, col.b, col.c, col.d, col.dec, z, tol);
}

ComplexMatrix eval_herglotz_rep(const HerglotzRepresentation& rep,
                                std::span<const cplx> z,
                                const Tolerances& tol) {
  require_in_polydisk(z, rep.dec.d());
  const ComplexMatrix p = pencil_at(rep.dec, z);
  const ComplexMatrix x = solve(rep.u - p, (rep.u + p) * rep.v, tol);
  return rep.r + adjoint_times(rep.v, x);
}

ComplexMatrix pi_state_map(const PiNode& node, std::span<const cplx> w,
                           const Tolerances& tol) {
  require_in_halfplane(w, node.dec.d());
  return solve(pencil_at(node.dec, w) - node.a, node.b, tol);
}

ComplexMatrix eval_pi_node(const PiNode& node, std::span<const cplx> w,
                           const Tolerances& tol) {
  return node.d + node.c * pi_state_map(node, w, tol);
}

ComplexMatrix disk_state_map(const ComplexMatrix& a, const ComplexMatrix& b,
                             const DecompositionOfIdentity& dec,
                             std::span<const cplx> z, const Tolerances& tol) {
  require_in_polydisk(z, dec.d());
  return solve(ComplexMatrix::identity(a.rows()) - a * pencil_at(dec, z), b, tol);
}

PiNode impedance_node_from_triple(const ComplexMatrix& t, const ComplexMatrix& v0,
                                  const ComplexMatrix& r,
                                  DecompositionOfIdentity dec,
                                  const Tolerances& tol) {
  if (!t.is_square() || !r.is_square() || v0.rows() != t.rows() ||
      v0.cols() != r.rows()) {
    throw Error(ErrorKind::kDimensionMismatch, "triple shapes");
  }
  if (skew_residual(t) > tol.structure) {
    throw Error(ErrorKind::kNotSkewAdjoint, "T is not skew-adjoint");
  }
  if (skew_residual(r) > tol.structure) {
    throw Error(ErrorKind::kNotSkewAdjoint, "R is not skew-adjoint");
  }
  const ComplexMatrix id = ComplexMatrix::identity(t.rows());
  ComplexMatrix b = (id - t) * v0;
  ComplexMatrix c = adjoint_times(v0, id + t);
  ComplexMatrix d = r - adjoint_times(v0, t * v0);
  return make_pi_node(t, std::move(b), std::move(c), std::move(d),
                      std::move(dec), PiFlavor::kImpedance, Validation::kStrict,
                      tol);
}

}  // namespace agler
