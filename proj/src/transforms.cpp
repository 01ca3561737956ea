#include "agler/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "agler/error.hpp"
#include "agler/linalg.hpp"
#include "agler/random.hpp"

namespace agler {
namespace {

constexpr double kValueRcondMin = 1e-12;

void require_unitary(const ComplexMatrix& u, const Tolerances& tol,
                     const char* what) {
  const double res = unitary_residual(u);
  if (!(res <= tol.structure)) {
    throw Error(ErrorKind::kNotUnitary,
                std::string(what) + ": unitary residual " + std::to_string(res));
  }
}

ComplexMatrix checked_solve(const ComplexMatrix& lhs, const ComplexMatrix& rhs,
                            ErrorKind kind, const char* what) {
  const double rc = rcond(lhs);
  if (rc < kValueRcondMin) {
    throw Error(kind, std::string(what) + ": rcond " + std::to_string(rc));
  }
  return solve(lhs, rhs);
}

}  // namespace

Point cayley_point_d2h(std::span<const cplx> z) {
  Point w(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) {
    const cplx denom = 1.0 - z[k];
    if (denom == cplx(0.0)) {
      throw Error(ErrorKind::kPoleAtOne,
                  "coordinate " + std::to_string(k + 1) + " equals 1");
    }
    w[k] = (1.0 + z[k]) / denom;
  }
  return w;
}

Point cayley_point_h2d(std::span<const cplx> w) {
  Point z(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    const cplx denom = w[k] + 1.0;
    if (denom == cplx(0.0)) {
      throw Error(ErrorKind::kPoleAtMinusOne,
                  "coordinate " + std::to_string(k + 1) + " equals -1");
    }
    z[k] = (w[k] - 1.0) / denom;
  }
  return z;
}

// (F - I) and (F + I)^{-1} commute, so the right quotient is a left solve.
ComplexMatrix cayley_value_F_to_S(const ComplexMatrix& f) {
  const ComplexMatrix id = ComplexMatrix::identity(f.rows());
  return checked_solve(f + id, f - id, ErrorKind::kSingularMatrix, "F + I");
}

ComplexMatrix cayley_value_S_to_F(const ComplexMatrix& s) {
  const ComplexMatrix id = ComplexMatrix::identity(s.rows());
  return checked_solve(id - s, id + s, ErrorKind::kSingularMatrix, "I - S");
}

EigenSplit split_eigenspace_one(const ComplexMatrix& u, double split_tol,
                                const Tolerances& tol) {
  require_unitary(u, tol, "split_eigenspace_one");
  const std::size_t n = u.rows();
  const ComplexMatrix id = ComplexMatrix::identity(n);

  // Stage 1: |1 - lambda|^2 from the Hermitian matrix (I - U)^*(I - U)
  // isolates a cluster of eigenvalues near 1.
  const ComplexMatrix g = hermitian_part(adjoint_times(id - u, id - u));
  const HermitianEig coarse = hermitian_eig(g);
  const double cluster = std::max(1e-6, 4.0 * split_tol * split_tol);
  std::size_t nc = 0;
  while (nc < n && coarse.values[nc] <= cluster) ++nc;
  const ComplexMatrix w = coarse.vectors.block(0, 0, n, nc);
  const ComplexMatrix far = coarse.vectors.block(0, nc, n, n - nc);

  // Stage 2: inside the cluster, the Hermitian matrix (U - U^*)/(2i) has
  // eigenvalues sin(theta), resolved to absolute precision.
  ComplexMatrix near1(n, 0), near0(n, 0);
  if (nc > 0) {
    const ComplexMatrix uw = adjoint_times(w, u * w);
    const ComplexMatrix sine = cplx(0.0, -1.0) * skew_part(uw);
    const HermitianEig fine = hermitian_eig(hermitian_part(sine));
    const ComplexMatrix rotated = w * fine.vectors;
    std::vector<std::size_t> one, other;
    for (std::size_t j = 0; j < nc; ++j) {
      (std::abs(fine.values[j]) <= split_tol ? one : other).push_back(j);
    }
    near1 = ComplexMatrix(n, one.size());
    for (std::size_t j = 0; j < one.size(); ++j)
      near1.set_block(0, j, rotated.col(one[j]));
    near0 = ComplexMatrix(n, other.size());
    for (std::size_t j = 0; j < other.size(); ++j)
      near0.set_block(0, j, rotated.col(other[j]));
  }

  EigenSplit out;
  out.basis1 = near1;
  out.basis0 = hstack(near0, far);
  out.u00 = adjoint_times(out.basis0, u * out.basis0);
  return out;
}

ComplexMatrix unitary_to_skew(const ComplexMatrix& u, const Tolerances& tol) {
  const EigenSplit split = split_eigenspace_one(u, tol.split, tol);
  if (split.basis1.cols() > 0) {
    throw Error(ErrorKind::kEigenvalueOne,
                std::to_string(split.basis1.cols()) +
                    "-dimensional eigenspace for eigenvalue 1");
  }
  const ComplexMatrix id = ComplexMatrix::identity(u.rows());
  return solve(id - u, id + u, tol);
}

ComplexMatrix skew_to_unitary(const ComplexMatrix& y, const Tolerances& tol) {
  if (skew_residual(y) > tol.structure * std::max(1.0, y.max_abs())) {
    throw Error(ErrorKind::kNotSkewAdjoint, "skew_to_unitary input");
  }
  const ComplexMatrix id = ComplexMatrix::identity(y.rows());
  return solve(y + id, y - id, tol);
}

HerglotzRepresentation schur_gr_to_herglotz_rep(const SchurGRColligation& col,
                                                VNormalization norm,
                                                const Tolerances& tol) {
  if (col.metric != Metric::kUnitary || col.input_dim() != col.output_dim()) {
    throw Error(ErrorKind::kNotUnitary, "colligation metric is not unitary");
  }
  require_unitary(col.colligation_matrix(), tol, "schur_gr_to_herglotz_rep");
  const std::size_t q = col.input_dim();
  const ComplexMatrix id = ComplexMatrix::identity(q);
  const ComplexMatrix i_minus_d = id - col.d;
  const double rc = rcond(i_minus_d);
  if (rc < kValueRcondMin) {
    throw Error(ErrorKind::kSingularIminusD, "rcond(I - D) = " + std::to_string(rc));
  }
  // Right quotients X (I - D) = M computed as ((I - D)^{-*} M^*)^*.
  const ComplexMatrix b_over = solve(i_minus_d.adjoint(), col.b.adjoint()).adjoint();
  const ComplexMatrix u0 = col.a + b_over * col.c;
  const ComplexMatrix f0 = solve(i_minus_d, id + col.d);
  ComplexMatrix v = norm == VNormalization::kDerived
                        ? b_over
                        : (1.0 / std::numbers::sqrt2) * col.b;
  return make_herglotz_rep(skew_part(f0), u0.adjoint(), std::move(v), col.dec,
                           Validation::kStrict, tol);
}

PiNode gr_to_pi_impedance(const SchurGRColligation& col, const Tolerances& tol) {
  if (col.metric != Metric::kUnitary || col.input_dim() != col.output_dim()) {
    throw Error(ErrorKind::kNotUnitary, "colligation metric is not unitary");
  }
  const ComplexMatrix y = unitary_to_skew(col.colligation_matrix(), tol);
  const std::size_t n = col.state_dim(), q = col.input_dim();
  return make_pi_node(-y.block(0, 0, n, n), y.block(0, n, n, q),
                      -y.block(n, 0, q, n), y.block(n, n, q, q),
                      col.dec.as_positive(), PiFlavor::kImpedance,
                      Validation::kStrict, tol);
}

HerglotzRepresentation herglotz_colligation_to_rep(
    const HerglotzDiskColligation& col, const Tolerances& tol) {
  return make_herglotz_rep(skew_part(col.d), col.a.adjoint(),
                           (1.0 / std::numbers::sqrt2) * col.b, col.dec,
                           Validation::kStrict, tol);
}

HerglotzDiskColligation herglotz_rep_to_colligation(
    const HerglotzRepresentation& rep, const Tolerances& tol) {
  ComplexMatrix a = rep.u.adjoint();
  ComplexMatrix b = std::numbers::sqrt2 * rep.v;
  ComplexMatrix c = adjoint_times(b, a);
  ComplexMatrix d = rep.r + adjoint_times(rep.v, rep.v);
  return make_herglotz_colligation(std::move(a), std::move(b), std::move(c),
                                   std::move(d), rep.dec, Validation::kStrict,
                                   tol);
}

SchurGRColligation herglotz_colligation_to_schur_gr(
    const HerglotzDiskColligation& col, const Tolerances& tol) {
  const std::size_t q = col.input_dim();
  const ComplexMatrix id = ComplexMatrix::identity(q);
  const ComplexMatrix d_plus = col.d + id;  // Hermitian part >= I
  const ComplexMatrix inv_c = solve(d_plus, col.c, tol);
  const ComplexMatrix b_over =
      solve(d_plus.adjoint(), col.b.adjoint(), tol).adjoint();
  return make_schur_gr(col.a - col.b * inv_c, std::numbers::sqrt2 * b_over,
                       std::numbers::sqrt2 * inv_c,
                       solve(d_plus, col.d - id, tol), col.dec, Metric::kUnitary,
                       Validation::kStrict, tol);
}

double herglotz_rep_conversion_error(const SchurGRColligation& col,
                                     const HerglotzRepresentation& rep,
                                     std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  double err = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const Point z = random_polydisk_point(col.dec.d(), 0.9, rng);
    const ComplexMatrix f = cayley_value_S_to_F(eval_schur_disk(col, z));
    err = std::max(err, max_abs_diff(eval_herglotz_rep(rep, z), f));
  }
  return err;
}

double pi_impedance_conversion_error(const SchurGRColligation& col,
                                     const PiNode& node, std::size_t count,
                                     std::uint64_t seed) {
  Rng rng(seed);
  double err = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const Point w = random_halfplane_point(col.dec.d(), rng);
    const ComplexMatrix f =
        cayley_value_S_to_F(eval_schur_disk(col, cayley_point_h2d(w)));
    err = std::max(err, max_abs_diff(eval_pi_node(node, w), f));
  }
  return err;
}

}  // namespace agler
