#include "agler/lurking.hpp"

#include <algorithm>
#include <cmath>

#include "agler/error.hpp"
#include "agler/linalg.hpp"
#include "agler/transforms.hpp"

namespace agler {
namespace {

struct Shape {
  std::size_t d = 0, p = 0, q = 0, n = 0;
  std::vector<std::size_t> sizes;
};

Shape check_shape(const std::vector<DecompositionSample>& samples) {
  if (samples.empty()) {
    throw Error(ErrorKind::kDimensionMismatch, "no samples");
  }
  Shape s;
  const auto& first = samples.front();
  s.d = first.point.size();
  s.p = first.value.rows();
  s.q = first.value.cols();
  if (s.d == 0 || first.factors.size() != s.d) {
    throw Error(ErrorKind::kDimensionMismatch, "need one factor per variable");
  }
  for (const auto& h : first.factors) s.sizes.push_back(h.rows());
  for (std::size_t m : s.sizes) s.n += m;
  for (const auto& smp : samples) {
    if (smp.point.size() != s.d || smp.value.rows() != s.p ||
        smp.value.cols() != s.q || smp.factors.size() != s.d) {
      throw Error(ErrorKind::kDimensionMismatch, "inconsistent sample shapes");
    }
    for (std::size_t k = 0; k < s.d; ++k) {
      if (smp.factors[k].rows() != s.sizes[k] || smp.factors[k].cols() != s.q) {
        throw Error(ErrorKind::kDimensionMismatch, "inconsistent factor shapes");
      }
    }
    require_in_polydisk(smp.point, s.d);
  }
  return s;
}

ComplexMatrix stacked(const DecompositionSample& smp, bool weighted) {
  ComplexMatrix h = smp.factors[0];
  if (weighted) h *= smp.point[0];
  for (std::size_t k = 1; k < smp.factors.size(); ++k) {
    h = vstack(h, weighted ? smp.point[k] * smp.factors[k] : smp.factors[k]);
  }
  return h;
}

double gram_residual(const std::vector<DecompositionSample>& samples, bool herglotz) {
  const Shape s = check_shape(samples);
  double worst = 0.0;
  for (const auto& w : samples) {
    for (const auto& z : samples) {
      ComplexMatrix lhs = herglotz
          ? w.value.adjoint() + z.value
          : ComplexMatrix::identity(s.q) - adjoint_times(w.value, z.value);
      double scale = 1.0;
      for (std::size_t k = 0; k < s.d; ++k) {
        const ComplexMatrix term = (1.0 - std::conj(w.point[k]) * z.point[k]) *
                                   adjoint_times(w.factors[k], z.factors[k]);
        scale = std::max(scale, term.max_abs());
        lhs -= term;
      }
      worst = std::max(worst, lhs.max_abs() / scale);
    }
  }
  return worst;
}

// Isometric part of the map L -> R: W_R W_L^* on span(L), where L = W_L S X^*.
struct SpanPair {
  ComplexMatrix wl, wr;
};

SpanPair matched_spans(const ComplexMatrix& l, const ComplexMatrix& r,
                       const Tolerances& tol) {
  const Svd f = svd(l);
  const std::size_t rank = numerical_rank(f, tol);
  ComplexMatrix wl(l.rows(), rank);
  ComplexMatrix wr(r.rows(), rank);
  const ComplexMatrix rx = r * f.v;
  for (std::size_t j = 0; j < rank; ++j) {
    for (std::size_t i = 0; i < l.rows(); ++i) wl(i, j) = f.u(i, j);
    for (std::size_t i = 0; i < r.rows(); ++i) wr(i, j) = rx(i, j) / f.s[j];
  }
  // Equal Grams make wr orthonormal up to gram-level noise; clean it up.
  if (rank > 0) wr = orthonormalize_columns(wr);
  return {wl, wr};
}

ComplexMatrix take_cols(const ComplexMatrix& m, std::size_t count) {
  return m.block(0, 0, m.rows(), count);
}

}  // namespace

double schur_gram_residual(const std::vector<DecompositionSample>& samples) {
  return gram_residual(samples, false);
}

double herglotz_gram_residual(const std::vector<DecompositionSample>& samples) {
  return gram_residual(samples, true);
}

SchurGRColligation realize_schur_from_samples(
    const std::vector<DecompositionSample>& samples, const Tolerances& tol) {
  const Shape s = check_shape(samples);
  const double res = schur_gram_residual(samples);
  if (!(res <= tol.gram)) {
    throw Error(ErrorKind::kGramMismatch,
                "sample Gram identity residual " + std::to_string(res));
  }
  ComplexMatrix l(s.n + s.q, 0), r(s.n + s.p, 0);
  for (const auto& smp : samples) {
    l = hstack(l, vstack(stacked(smp, true), ComplexMatrix::identity(s.q)));
    r = hstack(r, vstack(stacked(smp, false), smp.value));
  }
  const SpanPair sp = matched_spans(l, r, tol);
  const ComplexMatrix wl_perp = orthonormal_complement(sp.wl);
  const ComplexMatrix wr_perp = orthonormal_complement(sp.wr);
  const std::size_t extra = std::min(wl_perp.cols(), wr_perp.cols());

  ComplexMatrix u = times_adjoint(sp.wr, sp.wl);
  if (extra > 0) u += times_adjoint(take_cols(wr_perp, extra), take_cols(wl_perp, extra));

  Metric metric = Metric::kUnitary;
  if (s.p > s.q) metric = Metric::kIsometric;
  if (s.p < s.q) metric = Metric::kCoisometric;
  return make_schur_gr(u.block(0, 0, s.n, s.n), u.block(0, s.n, s.n, s.q),
                       u.block(s.n, 0, s.p, s.n), u.block(s.n, s.n, s.p, s.q),
                       block_decomposition(s.sizes), metric, Validation::kStrict,
                       tol);
}

HerglotzDiskColligation realize_herglotz_from_samples(
    const std::vector<DecompositionSample>& samples, const Tolerances& tol) {
  const Shape s = check_shape(samples);
  if (s.p != s.q) throw Error(ErrorKind::kDimensionMismatch, "F must be square");
  const double res = herglotz_gram_residual(samples);
  if (!(res <= tol.gram)) {
    throw Error(ErrorKind::kGramMismatch,
                "sample Gram identity residual " + std::to_string(res));
  }
  const ComplexMatrix id = ComplexMatrix::identity(s.q);
  std::vector<DecompositionSample> schur;
  for (const auto& smp : samples) {
    const ComplexMatrix fp = smp.value + id;
    if (rcond(fp) < 1e-12) {
      throw Error(ErrorKind::kSingularMatrix, "F + I singular at a sample");
    }
    const ComplexMatrix inv = inverse(fp, tol);
    DecompositionSample out{smp.point, cayley_value_F_to_S(smp.value), {}};
    for (const auto& h : smp.factors) out.factors.push_back(std::sqrt(2.0) * (h * inv));
    schur.push_back(std::move(out));
  }
  const SchurGRColligation sc = realize_schur_from_samples(schur, tol);

  // Invert A_s = A - B(D+I)^{-1}C, B_s = sqrt2 B(D+I)^{-1},
  // C_s = sqrt2 (D+I)^{-1}C, D_s = (D-I)(D+I)^{-1}.
  const ComplexMatrix imd = id - sc.d;
  if (rcond(imd) < 1e-12) {
    throw Error(ErrorKind::kSingularIminusD, "I - D of the Schur completion");
  }
  const ComplexMatrix imd_inv = inverse(imd, tol);
  const double r2 = std::sqrt(2.0);
  ComplexMatrix d = (id + sc.d) * imd_inv;
  ComplexMatrix b = r2 * (sc.b * imd_inv);
  ComplexMatrix c = r2 * (imd_inv * sc.c);
  ComplexMatrix a = sc.a + sc.b * imd_inv * sc.c;
  return make_herglotz_colligation(std::move(a), std::move(b), std::move(c),
                                   std::move(d), sc.dec, Validation::kStrict, tol);
}

double sample_residual(const SchurGRColligation& col,
                       const std::vector<DecompositionSample>& samples) {
  double worst = 0.0;
  for (const auto& smp : samples)
    worst = std::max(worst, max_abs_diff(eval_schur_disk(col, smp.point), smp.value));
  return worst;
}

double sample_residual(const HerglotzDiskColligation& col,
                       const std::vector<DecompositionSample>& samples) {
  double worst = 0.0;
  for (const auto& smp : samples)
    worst = std::max(worst, max_abs_diff(eval_herglotz_disk(col, smp.point), smp.value));
  return worst;
}

namespace {

// Orthonormal basis of range(P_k) for each projection.
std::vector<ComplexMatrix> range_bases(const DecompositionOfIdentity& dec,
                                       const Tolerances& tol) {
  if (!dec.is_spectral()) {
    throw Error(ErrorKind::kNotDecomposition, "factors need a spectral decomposition");
  }
  std::vector<ComplexMatrix> out;
  for (const auto& p : dec.parts()) {
    const HermitianEig e = hermitian_eig(hermitian_part(p), tol);
    std::size_t first = 0;
    while (first < e.values.size() && e.values[first] < 0.5) ++first;
    out.push_back(e.vectors.block(0, first, p.rows(), p.rows() - first));
  }
  return out;
}

template <typename Col, typename Eval>
std::vector<DecompositionSample> sample_impl(const Col& col,
                                             const std::vector<Point>& points,
                                             Eval eval, const Tolerances& tol) {
  const auto bases = range_bases(col.dec, tol);
  std::vector<DecompositionSample> out;
  for (const auto& z : points) {
    const ComplexMatrix h = disk_state_map(col.a, col.b, col.dec, z, tol);
    DecompositionSample smp{z, eval(col, z), {}};
    for (const auto& e : bases) smp.factors.push_back(adjoint_times(e, h));
    out.push_back(std::move(smp));
  }
  return out;
}

}  // namespace

std::vector<DecompositionSample> samples_from_colligation(
    const SchurGRColligation& col, const std::vector<Point>& points,
    const Tolerances& tol) {
  return sample_impl(col, points,
                     [&](const SchurGRColligation& c, const Point& z) {
                       return eval_schur_disk(c, z, tol);
                     },
                     tol);
}

std::vector<DecompositionSample> samples_from_colligation(
    const HerglotzDiskColligation& col, const std::vector<Point>& points,
    const Tolerances& tol) {
  return sample_impl(col, points,
                     [&](const HerglotzDiskColligation& c, const Point& z) {
                       return eval_herglotz_disk(c, z, tol);
                     },
                     tol);
}

}  // namespace agler
