#include "agler/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "agler/error.hpp"
#include "agler/simd/kernels.hpp"

namespace agler {
namespace {

void require_square(const ComplexMatrix& a, const char* what) {
  if (!a.is_square()) {
    throw Error(ErrorKind::kDimensionMismatch,
                std::string(what) + ": matrix is " + std::to_string(a.rows()) +
                    "x" + std::to_string(a.cols()));
  }
}

double norm1(const ComplexMatrix& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += std::abs(a(i, j));
    best = std::max(best, s);
  }
  return best;
}

// Unpivoted in-place factorization; returns false on an exactly zero pivot.
bool factor_in_place(ComplexMatrix& lu, std::vector<std::size_t>& perm) {
  const std::size_t n = lu.rows();
  perm.resize(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  const auto& k = simd::kernels();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    double best = std::abs(lu(c, c));
    for (std::size_t r = c + 1; r < n; ++r) {
      const double v = std::abs(lu(r, c));
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) return false;
    if (piv != c) {
      std::swap_ranges(lu.row(c).begin(), lu.row(c).end(), lu.row(piv).begin());
      std::swap(perm[c], perm[piv]);
    }
    const cplx inv_pivot = 1.0 / lu(c, c);
    const std::size_t tail = n - c - 1;
    for (std::size_t r = c + 1; r < n; ++r) {
      const cplx f = lu(r, c) * inv_pivot;
      lu(r, c) = f;
      if (f != cplx(0.0)) k.axpy(tail, -f, &lu(c, c + 1), &lu(r, c + 1));
    }
  }
  return true;
}

// Rotation J (acting on coordinates p, q) that diagonalizes the Hermitian
// 2x2 block [[app, apq], [conj(apq), aqq]] under J^* A J. Returned as the
// four entries (Jpp, Jpq, Jqp, Jqq).
struct Rotation {
  cplx pp, pq, qp, qq;
  double t;  // tangent; diagonal shifts are -t|apq|, +t|apq|
};

Rotation jacobi_rotation(double app, double aqq, cplx apq) {
  const double b = std::abs(apq);
  const cplx phase = apq / b;  // e^{i phi}
  const double theta = (aqq - app) / (2.0 * b);
  double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  if (theta < 0.0) t = -t;
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const cplx conj_phase = std::conj(phase);
  return {c, s, -s * conj_phase, c * conj_phase, t};
}

}  // namespace

ComplexMatrix LuFactorization::solve(const ComplexMatrix& b) const {
  const std::size_t n = lu.rows();
  if (b.rows() != n) {
    throw Error(ErrorKind::kDimensionMismatch, "solve: rhs rows");
  }
  const std::size_t m = b.cols();
  ComplexMatrix x(n, m);
  for (std::size_t i = 0; i < n; ++i) x.set_block(i, 0, b.block(perm[i], 0, 1, m));
  const auto& k = simd::kernels();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (lu(i, j) != cplx(0.0)) k.axpy(m, -lu(i, j), &x(j, 0), &x(i, 0));
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t j = ii + 1; j < n; ++j)
      if (lu(ii, j) != cplx(0.0)) k.axpy(m, -lu(ii, j), &x(j, 0), &x(ii, 0));
    const cplx inv = 1.0 / lu(ii, ii);
    for (std::size_t c = 0; c < m; ++c) x(ii, c) *= inv;
  }
  return x;
}

LuFactorization lu_factor(const ComplexMatrix& a, const Tolerances& tol) {
  require_square(a, "lu_factor");
  LuFactorization f;
  f.lu = a;
  if (!a.all_finite()) {
    throw Error(ErrorKind::kSingularMatrix, "non-finite entries");
  }
  if (a.rows() == 0) {
    f.rcond = 1.0;
    return f;
  }
  if (!factor_in_place(f.lu, f.perm)) {
    throw Error(ErrorKind::kSingularMatrix, "zero pivot");
  }
  const ComplexMatrix inv = f.solve(ComplexMatrix::identity(a.rows()));
  const double denom = norm1(a) * norm1(inv);
  f.rcond = (denom > 0.0 && std::isfinite(denom)) ? 1.0 / denom : 0.0;
  if (f.rcond < tol.rcond_min) {
    throw Error(ErrorKind::kSingularMatrix,
                "rcond " + std::to_string(f.rcond) + " below threshold");
  }
  return f;
}

double rcond(const ComplexMatrix& a) {
  require_square(a, "rcond");
  if (a.rows() == 0) return 1.0;
  if (!a.all_finite()) return 0.0;
  ComplexMatrix lu = a;
  std::vector<std::size_t> perm;
  if (!factor_in_place(lu, perm)) return 0.0;
  LuFactorization f{std::move(lu), std::move(perm), 0.0};
  const ComplexMatrix inv = f.solve(ComplexMatrix::identity(a.rows()));
  const double denom = norm1(a) * norm1(inv);
  return (denom > 0.0 && std::isfinite(denom)) ? 1.0 / denom : 0.0;
}

ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b,
                    const Tolerances& tol) {
  if (a.rows() != b.rows()) {
    throw Error(ErrorKind::kDimensionMismatch, "solve: A.rows != B.rows");
  }
  return lu_factor(a, tol).solve(b);
}

ComplexMatrix inverse(const ComplexMatrix& a, const Tolerances& tol) {
  return solve(a, ComplexMatrix::identity(a.rows()), tol);
}

HermitianEig hermitian_eig(const ComplexMatrix& m, const Tolerances& tol) {
  require_square(m, "hermitian_eig");
  const double herm_res = hermitian_residual(m);
  if (herm_res > tol.herm * std::max(1.0, m.max_abs())) {
    throw Error(ErrorKind::kNotHermitian,
                "|M - M^*|_max = " + std::to_string(herm_res));
  }
  const std::size_t n = m.rows();
  ComplexMatrix a = hermitian_part(m);
  // Rows of qt are the columns of Q, so rotations act on contiguous memory.
  ComplexMatrix qt = ComplexMatrix::identity(n);
  const auto& k = simd::kernels();

  const double scale = std::max(a.frobenius(), 1e-300);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(2.0 * off) <= 1e-17 * scale) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double app = a(p, p).real(), aqq = a(q, q).real();
        if (sweep > 3 && std::abs(apq) <= 1e-18 * (std::abs(app) + std::abs(aqq)))
        {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const Rotation r = jacobi_rotation(app, aqq, apq);
        // A <- A J (columns p, q).
        for (std::size_t i = 0; i < n; ++i) {
          const cplx aip = a(i, p), aiq = a(i, q);
          a(i, p) = aip * r.pp + aiq * r.qp;
          a(i, q) = aip * r.pq + aiq * r.qq;
        }
        // A <- J^* A (rows p, q).
        k.rot(n, &a(p, 0), &a(q, 0), std::conj(r.pp), std::conj(r.qp),
              std::conj(r.pq), std::conj(r.qq));
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        // Q <- Q J, i.e. rows p, q of Q^T.
        k.rot(n, &qt(p, 0), &qt(q, 0), r.pp, r.qp, r.pq, r.qq);
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });
  HermitianEig out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = a(order[c], order[c]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, c) = qt(order[c], i);
  }
  return out;
}

double min_eig_psd(const ComplexMatrix& m, const Tolerances& tol) {
  if (m.rows() == 0) return 0.0;
  return hermitian_eig(m, tol).values.front();
}

double max_eig(const ComplexMatrix& m, const Tolerances& tol) {
  if (m.rows() == 0) return 0.0;
  return hermitian_eig(m, tol).values.back();
}

Svd svd(const ComplexMatrix& m) {
  const std::size_t rows = m.rows(), n = m.cols();
  ComplexMatrix gt = m.transpose();  // row j = column j of M
  ComplexMatrix vt = ComplexMatrix::identity(n);
  const auto& k = simd::kernels();

  for (int sweep = 0; sweep < 80; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = k.dotc(rows, &gt(p, 0), &gt(p, 0)).real();
        const double beta = k.dotc(rows, &gt(q, 0), &gt(q, 0)).real();
        const cplx gamma = k.dotc(rows, &gt(p, 0), &gt(q, 0));
        if (std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta) ||
            std::abs(gamma) <= 1e-300) {
          continue;
        }
        rotated = true;
        const Rotation r = jacobi_rotation(alpha, beta, gamma);
        k.rot(rows, &gt(p, 0), &gt(q, 0), r.pp, r.qp, r.pq, r.qq);
        k.rot(n, &vt(p, 0), &vt(q, 0), r.pp, r.qp, r.pq, r.qq);
      }
    }
    if (!rotated) break;
  }

  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j)
    norms[j] = std::sqrt(k.dotc(rows, &gt(j, 0), &gt(j, 0)).real());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return norms[i] > norms[j]; });

  Svd out;
  out.s.resize(n);
  out.u = ComplexMatrix(rows, n);
  out.v = ComplexMatrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t j = order[c];
    out.s[c] = norms[j];
    for (std::size_t i = 0; i < n; ++i) out.v(i, c) = vt(j, i);
    if (norms[j] > 0.0) {
      for (std::size_t i = 0; i < rows; ++i) out.u(i, c) = gt(j, i) / norms[j];
    }
  }
  return out;
}

std::size_t numerical_rank(const Svd& f, const Tolerances& tol) {
  if (f.s.empty() || f.s.front() == 0.0) return 0;
  const double cut = tol.rank_rel * f.s.front();
  return static_cast<std::size_t>(
      std::count_if(f.s.begin(), f.s.end(), [&](double s) { return s > cut; }));
}

double op_norm(const ComplexMatrix& m) {
  if (m.empty()) return 0.0;
  const ComplexMatrix g = hermitian_part(adjoint_times(m, m));
  return std::sqrt(std::max(0.0, max_eig(g)));
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m, const Tolerances& tol) {
  const HermitianEig e = hermitian_eig(m, tol);
  const std::size_t n = m.rows();
  ComplexMatrix scaled = e.vectors;
  for (std::size_t j = 0; j < n; ++j) {
    double lam = e.values[j];
    if (lam < -tol.psd_slack) {
      throw Error(ErrorKind::kInvariantViolation,
                  "psd_sqrt: eigenvalue " + std::to_string(lam));
    }
    const double root = std::sqrt(std::max(lam, 0.0));
    for (std::size_t i = 0; i < n; ++i) scaled(i, j) *= root;
  }
  return times_adjoint(scaled, e.vectors);
}

ComplexMatrix orthonormalize_columns(const ComplexMatrix& m) {
  const std::size_t rows = m.rows(), n = m.cols();
  ComplexMatrix qt = m.transpose();
  const auto& k = simd::kernels();
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t j = 0; j < n; ++j) {
      const double before = std::sqrt(k.dotc(rows, &qt(j, 0), &qt(j, 0)).real());
      for (std::size_t i = 0; i < j; ++i) {
        const cplx proj = k.dotc(rows, &qt(i, 0), &qt(j, 0));
        k.axpy(rows, -proj, &qt(i, 0), &qt(j, 0));
      }
      const double nrm = std::sqrt(k.dotc(rows, &qt(j, 0), &qt(j, 0)).real());
      // Second pass sees unit columns, so the relative test covers both.
      if (nrm == 0.0 || nrm <= 1e-12 * before) {
        throw Error(ErrorKind::kInvariantViolation,
                    "orthonormalize_columns: dependent columns");
      }
      for (std::size_t i = 0; i < rows; ++i) qt(j, i) /= nrm;
    }
  }
  return qt.transpose();
}

ComplexMatrix orthonormal_complement(const ComplexMatrix& w) {
  const std::size_t n = w.rows(), r = w.cols();
  if (r > n) {
    throw Error(ErrorKind::kDimensionMismatch, "complement: more columns than rows");
  }
  if (r == n) return ComplexMatrix(n, 0);
  const ComplexMatrix proj =
      ComplexMatrix::identity(n) - hermitian_part(times_adjoint(w, w));
  const HermitianEig e = hermitian_eig(proj);
  // The n - r largest eigenvalues are ~1, the rest ~0.
  return orthonormalize_columns(e.vectors.block(0, r, n, n - r));
}

}  // namespace agler
