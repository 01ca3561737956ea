#include "agler/bessmertnyi.hpp"

#include <algorithm>
#include <cmath>

#include "agler/error.hpp"
#include "agler/linalg.hpp"
#include "agler/random.hpp"
#include "agler/transforms.hpp"

namespace agler {
namespace {

constexpr double kNormalizationTol = 1e-9;
constexpr double kSigma22MinEig = 1e-10;

}  // namespace

BessmertnyiPencil make_pencil(std::size_t q, ComplexMatrix v0,
                              std::vector<ComplexMatrix> vk, Validation mode,
                              const Tolerances& tol) {
  const std::size_t total = v0.rows();
  if (!v0.is_square() || q > total || vk.empty()) {
    throw Error(ErrorKind::kDimensionMismatch, "pencil: V0 shape or empty V_k");
  }
  for (const auto& v : vk) {
    if (!v.is_square() || v.rows() != total) {
      throw Error(ErrorKind::kDimensionMismatch, "pencil: V_k shape");
    }
  }
  BessmertnyiPencil pen{q, total - q, std::move(v0), std::move(vk), {}};
  auto violate = [&](const std::string& msg) {
    if (mode == Validation::kStrict) throw Error(ErrorKind::kInvariantViolation, msg);
    pen.warnings.push_back(msg);
  };
  if (skew_residual(pen.v0) > tol.structure) violate("V0 is not skew-adjoint");
  ComplexMatrix sum(total, total);
  for (std::size_t k = 0; k < pen.vk.size(); ++k) {
    const auto& v = pen.vk[k];
    const std::string label = "V_" + std::to_string(k + 1);
    if (hermitian_residual(v) > tol.structure) {
      violate(label + " is not Hermitian");
    } else if (total > 0 && min_eig_psd(v, tol) < -tol.psd_slack) {
      violate(label + " is not PSD");
    }
    sum += v;
  }
  const ComplexMatrix off = sum.block(0, pen.q, pen.q, pen.n);
  const ComplexMatrix s22 = sum.block(pen.q, pen.q, pen.n, pen.n);
  if (off.max_abs() > kNormalizationTol ||
      max_abs_diff(s22, ComplexMatrix::identity(pen.n)) > kNormalizationTol) {
    violate("sum of V_k is not [[M11, 0], [0, I]]");
  }
  return pen;
}

ComplexMatrix pencil_matrix(const BessmertnyiPencil& pen, std::span<const cplx> w) {
  if (w.size() != pen.d()) {
    throw Error(ErrorKind::kDimensionMismatch, "pencil point dimension");
  }
  ComplexMatrix m = pen.v0;
  for (std::size_t k = 0; k < pen.d(); ++k) m += w[k] * pen.vk[k];
  return m;
}

ComplexMatrix pencil_transfer(const BessmertnyiPencil& pen,
                              std::span<const cplx> w, const Tolerances& tol) {
  require_in_halfplane(w, pen.d());
  const ComplexMatrix m = pencil_matrix(pen, w);
  const std::size_t q = pen.q, n = pen.n;
  const ComplexMatrix v11 = m.block(0, 0, q, q);
  if (n == 0) return v11;
  const ComplexMatrix v22 = m.block(q, q, n, n);
  const double rc = rcond(v22);
  if (rc < tol.rcond_min) {
    throw Error(ErrorKind::kSingularBlock, "rcond(V22(w)) = " + std::to_string(rc));
  }
  return v11 - m.block(0, q, q, n) * solve(v22, m.block(q, 0, n, q), tol);
}

BessmertnyiPencil build_pencil_from_herglotz_rep(const HerglotzRepresentation& rep,
                                                 const Tolerances& tol) {
  const EigenSplit split = split_eigenspace_one(rep.u, tol.split, tol);
  const ComplexMatrix& b1 = split.basis1;
  const ComplexMatrix& b0 = split.basis0;
  const std::size_t q = rep.input_dim(), n0 = b0.cols();
  const ComplexMatrix id0 = ComplexMatrix::identity(n0);
  const ComplexMatrix t = solve(id0 - split.u00, id0 + split.u00, tol);

  const ComplexMatrix v1 = adjoint_times(b1, rep.v);
  const ComplexMatrix v0 = adjoint_times(b0, rep.v);
  const ComplexMatrix one_plus_t = id0 + t;

  ComplexMatrix c0 = assemble(rep.r - adjoint_times(v0, t * v0),
                              adjoint_times(v0, one_plus_t),
                              -adjoint_times(one_plus_t, v0), -t);
  // Exact skew symmetry; rounding in T would otherwise leak into V0 + V0^*.
  c0 = skew_part(c0);

  std::vector<ComplexMatrix> vk;
  for (const auto& p : rep.dec.parts()) {
    const ComplexMatrix p11 = adjoint_times(b1, p * b1);
    const ComplexMatrix p10 = adjoint_times(b1, p * b0);
    const ComplexMatrix p01 = adjoint_times(b0, p * b1);
    const ComplexMatrix p00 = adjoint_times(b0, p * b0);
    vk.push_back(hermitian_part(assemble(adjoint_times(v1, p11 * v1),
                                         adjoint_times(v1, p10), p01 * v1, p00)));
  }
  return make_pencil(q, std::move(c0), std::move(vk), Validation::kStrict, tol);
}

double check_identity_id1(const ComplexMatrix& t, const ComplexMatrix& p00,
                          const Tolerances& tol) {
  const std::size_t n = t.rows();
  if (!t.is_square() || p00.rows() != n || !p00.is_square()) {
    throw Error(ErrorKind::kDimensionMismatch, "id1: shapes");
  }
  const ComplexMatrix id = ComplexMatrix::identity(n);
  const ComplexMatrix resolvent = inverse(p00 - t, tol);
  const ComplexMatrix lhs_inner = (id + t) * resolvent * (id - p00 * t);
  // X (I + T) = lhs_inner  <=>  (I + T)^* X^* = lhs_inner^*
  const ComplexMatrix lhs =
      solve((id + t).adjoint(), lhs_inner.adjoint(), tol).adjoint();
  const ComplexMatrix rhs = -t + (id + t) * resolvent * (id - t);
  return max_abs_diff(lhs, rhs);
}

BessmertnyiPencil normalize_homogeneous_pencil(const BessmertnyiPencil& pen,
                                               const Tolerances& tol) {
  const std::size_t q = pen.q, n = pen.n;
  ComplexMatrix s22(n, n);
  for (const auto& v : pen.vk) s22 += v.block(q, q, n, n);
  s22 = hermitian_part(s22);
  if (n > 0) {
    const HermitianEig e = hermitian_eig(s22, tol);
    if (e.values.front() < kSigma22MinEig) {
      throw Error(ErrorKind::kSingularBlock,
                  "sum of V_k22 has min eigenvalue " + std::to_string(e.values.front()));
    }
  }
  // S^{-1/2} through the eigendecomposition.
  ComplexMatrix inv_root(n, n);
  if (n > 0) {
    const HermitianEig e = hermitian_eig(s22, tol);
    ComplexMatrix scaled = e.vectors;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) scaled(i, j) /= std::sqrt(e.values[j]);
    inv_root = hermitian_part(times_adjoint(scaled, e.vectors));
  }
  const ComplexMatrix congr = block_diag(ComplexMatrix::identity(q), inv_root);
  std::vector<ComplexMatrix> vk;
  for (const auto& v : pen.vk) vk.push_back(hermitian_part(congr * v * congr));
  // Only the 22-sum is normalized; 12/21 coupling of the sum may remain.
  return make_pencil(q, skew_part(congr * pen.v0 * congr), std::move(vk),
                     Validation::kLenient, tol);
}

cplx NevanlinnaData::evaluate(cplx w) const {
  cplx f = alpha * w + r;
  for (const auto& atom : atoms) {
    const cplx z = atom.location;
    f += atom.mass * (z / (1.0 + std::norm(z)) + 1.0 / (z + w));
  }
  return f;
}

NevanlinnaData nevanlinna_atoms(const ComplexMatrix& v1, const ComplexMatrix& r,
                                const ComplexMatrix& t, const ComplexMatrix& v0,
                                const Tolerances& tol) {
  if (v1.cols() != 1 || r.rows() != 1 || r.cols() != 1 || v0.cols() != 1) {
    throw Error(ErrorKind::kNotScalar, "Nevanlinna data needs a scalar input space");
  }
  if (!t.is_square() || v0.rows() != t.rows()) {
    throw Error(ErrorKind::kDimensionMismatch, "T / V0 shapes");
  }
  if (skew_residual(t) > tol.structure * std::max(1.0, t.max_abs())) {
    throw Error(ErrorKind::kNotSkewAdjoint, "T is not skew-adjoint");
  }
  if (std::abs(r(0, 0).real()) > tol.structure) {
    throw Error(ErrorKind::kNotSkewAdjoint, "R is not purely imaginary");
  }
  NevanlinnaData out;
  out.alpha = adjoint_times(v1, v1)(0, 0).real();
  out.r = cplx(0.0, r(0, 0).imag());
  const std::size_t n = t.rows();
  if (n == 0) return out;

  // -iT is Hermitian with eigenvalues lambda_j, so T = Q diag(i lambda) Q^*.
  const HermitianEig e = hermitian_eig(hermitian_part(cplx(0.0, -1.0) * t), tol);
  const ComplexMatrix coeff = adjoint_times(e.vectors, v0);
  std::vector<NevanlinnaAtom> raw;
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double lambda = e.values[j];
    const double mass = std::norm(coeff(j, 0)) * (1.0 + lambda * lambda);
    total += mass;
    raw.push_back({cplx(0.0, 0.0 - lambda), mass});
  }
  // Eigenvalues are ascending, so coincident locations are adjacent.
  for (const auto& atom : raw) {
    if (atom.mass < 1e-14 * total) continue;
    if (!out.atoms.empty()) {
      auto& last = out.atoms.back();
      const double gap = std::abs(last.location.imag() - atom.location.imag());
      if (gap <= 1e-10 * (1.0 + std::abs(atom.location.imag()))) {
        last.mass += atom.mass;
        continue;
      }
    }
    out.atoms.push_back(atom);
  }
  return out;
}

NevanlinnaData nevanlinna_from_pencil(const BessmertnyiPencil& pen,
                                      const Tolerances& tol) {
  if (pen.q != 1) throw Error(ErrorKind::kNotScalar, "pencil input dimension != 1");
  if (pen.d() != 1) {
    throw Error(ErrorKind::kInvariantViolation, "Nevanlinna extraction needs d = 1");
  }
  const std::size_t n = pen.n;
  const ComplexMatrix& v1 = pen.vk[0];
  if (v1.block(0, 1, 1, n).max_abs() > kNormalizationTol ||
      max_abs_diff(v1.block(1, 1, n, n), ComplexMatrix::identity(n)) >
          kNormalizationTol) {
    throw Error(ErrorKind::kInvariantViolation,
                "V_1 is not of the form diag(alpha, I)");
  }
  const double alpha = v1(0, 0).real();
  const ComplexMatrix t = -pen.v0.block(1, 1, n, n);
  const ComplexMatrix id = ComplexMatrix::identity(n);
  // 21 block is -(I + T)^* V0 = (T - I) V0.
  const ComplexMatrix v0 = solve(t - id, pen.v0.block(1, 0, n, 1), tol);
  const ComplexMatrix r = pen.v0.block(0, 0, 1, 1) + adjoint_times(v0, t * v0);
  return nevanlinna_atoms(ComplexMatrix::scalar(std::sqrt(std::max(alpha, 0.0))),
                          ComplexMatrix::scalar(cplx(0.0, r(0, 0).imag())), t, v0,
                          tol);
}

VerificationReport check_pencil_class(const BessmertnyiPencil& pen,
                                      std::uint64_t seed, std::size_t samples,
                                      const Tolerances& tol) {
  VerificationReport rep;
  rep.name = "pencil_class";
  rep.seed = seed;
  rep.add("v0_skew_residual", skew_residual(pen.v0), tol.structure);
  ComplexMatrix sum(pen.q + pen.n, pen.q + pen.n);
  for (std::size_t k = 0; k < pen.d(); ++k) {
    const ComplexMatrix h = hermitian_part(pen.vk[k]);
    rep.add("v" + std::to_string(k + 1) + "_hermitian_residual",
            hermitian_residual(pen.vk[k]), tol.structure);
    rep.add("v" + std::to_string(k + 1) + "_neg_min_eig", -min_eig_psd(h, tol),
            tol.psd_slack);
    sum += h;
  }
  if (pen.n > 0) {
    // Strict positivity of the 22-sum: -min eig must be below -1e-12.
    rep.add("sigma22_neg_min_eig",
            -min_eig_psd(sum.block(pen.q, pen.q, pen.n, pen.n), tol), -1e-12);
  }

  const auto points = halton_halfplane(samples, pen.d(), seed);
  double worst = 0.0;
  bool singular = false;
  for (const auto& w : points) {
    try {
      const ComplexMatrix f = pencil_transfer(pen, w, tol);
      worst = std::min(worst, min_eig_psd(hermitian_part(f + f.adjoint()), tol));
    } catch (const Error&) {
      singular = true;
    }
  }
  rep.add("herglotz_neg_min_eig", singular ? INFINITY : -worst, tol.psd_slack);
  if (singular) rep.notes = "V22(w) singular at a sampled point";

  if (pen.homogeneous()) {
    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> scale(0.1, 10.0);
    std::uniform_real_distribution<double> angle(-1.5, 1.5);
    double hom = 0.0;
    for (std::size_t i = 0; i < std::min<std::size_t>(samples, 32); ++i) {
      Point w = random_halfplane_point(pen.d(), rng);
      cplx lambda;
      Point lw(w.size());
      // Rejection-sample lambda until lambda * w stays in the halfplane.
      for (int tries = 0; tries < 1000; ++tries) {
        lambda = std::polar(scale(rng), angle(rng));
        bool inside = true;
        for (std::size_t k = 0; k < w.size(); ++k) {
          lw[k] = lambda * w[k];
          inside = inside && lw[k].real() > 0.0;
        }
        if (inside) break;
        lambda = 1.0;
        lw = w;
      }
      try {
        const ComplexMatrix lf = lambda * pencil_transfer(pen, w, tol);
        const ComplexMatrix fl = pencil_transfer(pen, lw, tol);
        hom = std::max(hom, max_abs_diff(fl, lf) / (1.0 + lf.max_abs()));
      } catch (const Error&) {
        hom = INFINITY;
      }
    }
    rep.add("homogeneity_residual", hom, 1e-9);
  }
  return rep;
}

}  // namespace agler
