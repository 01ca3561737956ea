#include "agler/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

#include "agler/error.hpp"
#include "agler/linalg.hpp"
#include "agler/random.hpp"

namespace agler {
namespace {

constexpr double kCommutatorTol = 1e-10;
constexpr double kResidualThreshold = 1e-9;
constexpr double kTaylorThreshold = 1e-6;
constexpr double kGrowthThreshold = 1e-5;

ComplexMatrix kron_sum(const std::vector<ComplexMatrix>& parts,
                       const std::vector<ComplexMatrix>& mats) {
  ComplexMatrix out = kron(parts[0], mats[0]);
  for (std::size_t k = 1; k < parts.size(); ++k) out += kron(parts[k], mats[k]);
  return out;
}

void require_tuple(const CommutingTuple& t, std::size_t d, TupleKind kind) {
  if (t.kind != kind) {
    throw Error(ErrorKind::kWrongTupleKind,
                kind == TupleKind::kStrictContraction
                    ? "disk classes need a strict contraction tuple"
                    : "halfplane classes need a strictly accretive tuple");
  }
  if (t.d != d || t.mats.size() != d) {
    throw Error(ErrorKind::kDimensionMismatch, "tuple length != d");
  }
}

template <typename Col>
ComplexMatrix disk_tuple_eval(const Col& col, const CommutingTuple& t,
                              const Tolerances& tol) {
  require_tuple(t, col.dec.d(), TupleKind::kStrictContraction);
  const ComplexMatrix im = ComplexMatrix::identity(t.m);
  const ComplexMatrix pt = kron_sum(col.dec.parts(), t.mats);
  const ComplexMatrix big_a = kron(col.a, im);
  const ComplexMatrix lhs = ComplexMatrix::identity(pt.rows()) - pt * big_a;
  const ComplexMatrix x = solve(lhs, pt * kron(col.b, im), tol);
  return kron(col.d, im) + kron(col.c, im) * x;
}

// Coefficients W_n of (I - P(z)A)^{-1} P(z) B, expanded monomial by monomial.
template <typename Col>
TaylorResult taylor_impl(const Col& col, const CommutingTuple& t,
                         std::size_t degree, double tail_tol) {
  require_tuple(t, col.dec.d(), TupleKind::kStrictContraction);
  const std::size_t d = t.d;
  const double rho = (1.0 - t.margin) * op_norm(col.a);
  TaylorResult out;
  out.tail_bound = rho < 1.0 ? op_norm(col.c) * op_norm(col.b) *
                                   std::pow(rho, double(degree + 1)) / (1.0 - rho)
                             : std::numeric_limits<double>::infinity();
  if (!(out.tail_bound <= tail_tol)) {
    throw Error(ErrorKind::kDegreeTooSmall,
                "tail bound " + std::to_string(out.tail_bound) + " at degree " +
                    std::to_string(degree));
  }
  using Index = std::vector<unsigned>;
  std::map<Index, ComplexMatrix> w_prev, t_prev;  // degree m - 1
  const ComplexMatrix im = ComplexMatrix::identity(t.m);
  out.value = kron(col.d, im);
  std::vector<ComplexMatrix> pa;
  for (const auto& p : col.dec.parts()) pa.push_back(p * col.a);

  for (std::size_t m = 1; m <= degree; ++m) {
    std::map<Index, ComplexMatrix> w_cur, t_cur;
    if (m == 1) {
      for (std::size_t k = 0; k < d; ++k) {
        Index n(d, 0);
        n[k] = 1;
        w_cur[n] = col.dec.part(k) * col.b;
        t_cur[n] = t.mats[k];
      }
    } else {
      for (const auto& [prev, wp] : w_prev) {
        for (std::size_t k = 0; k < d; ++k) {
          Index n = prev;
          ++n[k];
          if (w_cur.count(n)) continue;
          // W_n = sum_j P_j A W_{n - e_j}
          ComplexMatrix acc(col.a.rows(), col.b.cols());
          for (std::size_t j = 0; j < d; ++j) {
            if (n[j] == 0) continue;
            Index lower = n;
            --lower[j];
            auto it = w_prev.find(lower);
            if (it != w_prev.end()) acc += pa[j] * it->second;
          }
          w_cur[n] = std::move(acc);
          t_cur[n] = t.mats[k] * t_prev.at(prev);
        }
      }
    }
    for (const auto& [n, wn] : w_cur) {
      out.value += kron(col.c * wn, t_cur.at(n));
      ++out.monomials;
    }
    w_prev = std::move(w_cur);
    t_prev = std::move(t_cur);
  }
  return out;
}

bool in_polydisk(const Point& z) {
  return std::all_of(z.begin(), z.end(), [](cplx v) { return std::abs(v) < 1.0; });
}
bool in_halfplane(const Point& w) {
  return std::all_of(w.begin(), w.end(), [](cplx v) { return v.real() > 0.0; });
}

template <typename Col>
KernelEvaluator disk_kernels(const Col& col, const Tolerances& tol) {
  return [a = col.a, b = col.b, dec = col.dec, tol](std::span<const cplx> w,
                                                    std::span<const cplx> z) {
    const ComplexMatrix hw = disk_state_map(a, b, dec, w, tol);
    const ComplexMatrix hz = disk_state_map(a, b, dec, z, tol);
    std::vector<ComplexMatrix> out;
    for (const auto& p : dec.parts()) out.push_back(adjoint_times(hw, p * hz));
    return out;
  };
}

double min_gram_eig(const KernelEvaluator& kernels, std::size_t d,
                    const std::vector<Point>& points, const Tolerances& tol) {
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < d; ++k)
    worst = std::min(worst, kernel_gram_psd(kernel_component(kernels, k), points, tol));
  return worst;
}

VerificationReport kernel_report(const std::string& name, const FunctionEvaluator& f,
                                 const KernelEvaluator& kernels, std::size_t d,
                                 bool disk, AglerFlavor flavor, std::uint64_t seed,
                                 std::size_t pairs, const Tolerances& tol) {
  VerificationReport rep;
  rep.name = name;
  rep.seed = seed;
  const auto pp = disk ? polydisk_pairs(pairs, d, seed) : halfplane_pairs(pairs, d, seed);
  double res;
  try {
    res = agler_residual(f, kernels, pp, flavor);
  } catch (const Error& e) {
    res = std::numeric_limits<double>::infinity();
    rep.notes = e.what();
  }
  rep.add("agler_residual", res, kResidualThreshold);
  const auto pts = disk ? halton_polydisk(20, d, 0.9, seed) : halton_halfplane(20, d, seed);
  double gram;
  try {
    gram = min_gram_eig(kernels, d, pts, tol);
  } catch (const Error& e) {
    gram = -std::numeric_limits<double>::infinity();
    rep.notes = e.what();
  }
  rep.add("kernel_gram_neg_min_eig", -gram, tol.psd_slack);
  return rep;
}

double margin_for(std::size_t i) {
  static const double kMargins[] = {0.01, 0.05, 0.1, 0.3, 0.5};
  return kMargins[i % 5];
}

}  // namespace

CommutingTuple make_commuting_tuple(std::vector<ComplexMatrix> mats, TupleKind kind,
                                    double margin, const Tolerances& tol) {
  if (mats.empty()) throw Error(ErrorKind::kDimensionMismatch, "empty tuple");
  if (!(margin > 0.0 && margin < 1.0)) {
    throw Error(ErrorKind::kBadParams, "margin must lie in (0, 1)");
  }
  CommutingTuple t{mats.size(), mats[0].rows(), std::move(mats), kind, margin};
  for (const auto& m : t.mats) {
    if (!m.is_square() || m.rows() != t.m) {
      throw Error(ErrorKind::kDimensionMismatch, "tuple matrices must share a size");
    }
  }
  if (commutator_residual(t) > kCommutatorTol) {
    throw Error(ErrorKind::kInvariantViolation, "tuple does not commute");
  }
  for (const auto& m : t.mats) {
    if (kind == TupleKind::kStrictContraction) {
      if (op_norm(m) > 1.0 - margin + tol.structure) {
        throw Error(ErrorKind::kInvariantViolation, "tuple norm exceeds 1 - margin");
      }
    } else if (min_eig_psd(hermitian_part(m), tol) < margin - tol.structure) {
      throw Error(ErrorKind::kInvariantViolation, "tuple Hermitian part below margin");
    }
  }
  return t;
}

CommutingTuple random_commuting_tuple(std::size_t d, std::size_t m, TupleKind kind,
                                      double margin, std::uint64_t seed) {
  if (!(margin > 0.0 && margin < 1.0) || d == 0 || m == 0) {
    throw Error(ErrorKind::kBadParams, "need d, m >= 1 and margin in (0, 1)");
  }
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const ComplexMatrix q = haar_unitary(m, rng);
  CommutingTuple t{d, m, {}, kind, margin};
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<cplx> diag(m);
    for (auto& v : diag) {
      if (kind == TupleKind::kStrictContraction) {
        v = std::polar((1.0 - margin) * std::sqrt(unit(rng)), 2.0 * M_PI * unit(rng));
      } else {
        v = cplx(margin + 5.0 * unit(rng), 10.0 * unit(rng) - 5.0);
      }
    }
    t.mats.push_back(q * times_adjoint(ComplexMatrix::diagonal(diag), q));
  }
  return t;
}

double commutator_residual(const CommutingTuple& t) {
  double worst = 0.0;
  for (std::size_t j = 0; j < t.mats.size(); ++j)
    for (std::size_t k = j + 1; k < t.mats.size(); ++k)
      worst = std::max(worst,
                       max_abs_diff(t.mats[j] * t.mats[k], t.mats[k] * t.mats[j]));
  return worst;
}

KernelEvaluator kernels_from_gr(const SchurGRColligation& col, const Tolerances& tol) {
  return disk_kernels(col, tol);
}

KernelEvaluator kernels_from_herglotz(const HerglotzDiskColligation& col,
                                      const Tolerances& tol) {
  return disk_kernels(col, tol);
}

KernelEvaluator kernels_from_pi_node(const PiNode& node, const Tolerances& tol) {
  return [node, tol](std::span<const cplx> z, std::span<const cplx> w) {
    const ComplexMatrix hz = pi_state_map(node, z, tol);
    const ComplexMatrix hw = pi_state_map(node, w, tol);
    std::vector<ComplexMatrix> out;
    for (const auto& y : node.dec.parts()) out.push_back(adjoint_times(hz, y * hw));
    return out;
  };
}

KernelEvaluator kernels_from_pencil(const BessmertnyiPencil& pen, const Tolerances& tol) {
  auto state = [pen, tol](std::span<const cplx> w) {
    const ComplexMatrix m = pencil_matrix(pen, w);
    const ComplexMatrix top = ComplexMatrix::identity(pen.q);
    if (pen.n == 0) return top;
    const ComplexMatrix v22 = m.block(pen.q, pen.q, pen.n, pen.n);
    return vstack(top, -solve(v22, m.block(pen.q, 0, pen.n, pen.q), tol));
  };
  return [pen, state](std::span<const cplx> z, std::span<const cplx> w) {
    const ComplexMatrix hz = state(z), hw = state(w);
    std::vector<ComplexMatrix> out;
    for (const auto& v : pen.vk) out.push_back(adjoint_times(hz, v * hw));
    return out;
  };
}

FunctionEvaluator evaluator(const SchurGRColligation& col, const Tolerances& tol) {
  return [col, tol](std::span<const cplx> z) { return eval_schur_disk(col, z, tol); };
}
FunctionEvaluator evaluator(const HerglotzDiskColligation& col, const Tolerances& tol) {
  return [col, tol](std::span<const cplx> z) { return eval_herglotz_disk(col, z, tol); };
}
FunctionEvaluator evaluator(const PiNode& node, const Tolerances& tol) {
  return [node, tol](std::span<const cplx> w) { return eval_pi_node(node, w, tol); };
}
FunctionEvaluator evaluator(const BessmertnyiPencil& pen, const Tolerances& tol) {
  return [pen, tol](std::span<const cplx> w) { return pencil_transfer(pen, w, tol); };
}

double agler_residual(const FunctionEvaluator& f, const KernelEvaluator& kernels,
                      const std::vector<PointPair>& pairs, AglerFlavor flavor) {
  const bool disk = flavor == AglerFlavor::kDiskSchur || flavor == AglerFlavor::kDiskHerglotz;
  const bool schur = flavor == AglerFlavor::kDiskSchur || flavor == AglerFlavor::kPiSchur;
  double worst = 0.0;
  for (const auto& [w, z] : pairs) {
    if (w.size() != z.size() || (disk && !(in_polydisk(w) && in_polydisk(z))) ||
        (!disk && !(in_halfplane(w) && in_halfplane(z)))) {
      throw Error(ErrorKind::kDomainMismatch,
                  disk ? "pair outside the polydisk" : "pair outside the halfplane");
    }
    const ComplexMatrix fw = f(w), fz = f(z);
    ComplexMatrix lhs = schur
        ? ComplexMatrix::identity(fz.cols()) - adjoint_times(fw, fz)
        : fw.adjoint() + fz;
    const auto ks = kernels(w, z);
    if (ks.size() != w.size()) {
      throw Error(ErrorKind::kDomainMismatch, "kernel count != point dimension");
    }
    for (std::size_t k = 0; k < ks.size(); ++k) {
      const cplx weight = disk ? 1.0 - std::conj(w[k]) * z[k] : std::conj(w[k]) + z[k];
      lhs -= weight * ks[k];
    }
    worst = std::max(worst, lhs.max_abs());
  }
  return worst;
}

Kernel kernel_component(const KernelEvaluator& kernels, std::size_t index) {
  return [kernels, index](std::span<const cplx> w, std::span<const cplx> z) {
    return kernels(w, z).at(index);
  };
}

double kernel_gram_psd(const Kernel& k, const std::vector<Point>& points,
                       const Tolerances& tol) {
  if (points.empty()) throw Error(ErrorKind::kDimensionMismatch, "no points");
  std::vector<std::vector<ComplexMatrix>> blocks(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = 0; j < points.size(); ++j)
      blocks[i].push_back(k(points[i], points[j]));
  const std::size_t r = blocks[0][0].rows(), c = blocks[0][0].cols();
  ComplexMatrix g(points.size() * r, points.size() * c);
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = 0; j < points.size(); ++j) g.set_block(i * r, j * c, blocks[i][j]);
  return min_eig_psd(hermitian_part(g), tol);
}

ComplexMatrix eval_on_tuple(const SchurGRColligation& col, const CommutingTuple& t,
                            const Tolerances& tol) {
  return disk_tuple_eval(col, t, tol);
}

ComplexMatrix eval_on_tuple(const HerglotzDiskColligation& col,
                            const CommutingTuple& t, const Tolerances& tol) {
  return disk_tuple_eval(col, t, tol);
}

ComplexMatrix eval_on_tuple(const PiNode& node, const CommutingTuple& t,
                            const Tolerances& tol) {
  require_tuple(t, node.dec.d(), TupleKind::kStrictlyAccretive);
  const ComplexMatrix im = ComplexMatrix::identity(t.m);
  const ComplexMatrix yt = kron_sum(node.dec.parts(), t.mats);
  const ComplexMatrix x = solve(yt - kron(node.a, im), kron(node.b, im), tol);
  return kron(node.d, im) + kron(node.c, im) * x;
}

TaylorResult taylor_eval_on_tuple(const SchurGRColligation& col,
                                  const CommutingTuple& t, std::size_t degree,
                                  double tail_tol) {
  return taylor_impl(col, t, degree, tail_tol);
}

TaylorResult taylor_eval_on_tuple(const HerglotzDiskColligation& col,
                                  const CommutingTuple& t, std::size_t degree,
                                  double tail_tol) {
  return taylor_impl(col, t, degree, tail_tol);
}

GrowthResult growth_limit(const FunctionEvaluator& f, std::size_t d,
                          const std::vector<double>& grid) {
  if (grid.empty() || grid.back() < 1e4 || d == 0) {
    throw Error(ErrorKind::kBadParams, "growth grid must end at t >= 1e4");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || (i > 0 && !(grid[i] > grid[i - 1]))) {
      throw Error(ErrorKind::kBadParams, "growth grid must be positive and increasing");
    }
  }
  GrowthResult out;
  for (double t : grid) {
    const Point w(d, cplx(t, 0.0));
    out.limit = (1.0 / t) * f(w);
    out.norms.push_back(out.limit.max_abs());
  }
  return out;
}

std::vector<double> default_growth_grid() { return {1e2, 1e3, 1e4, 1e5, 1e6}; }

VerificationReport resolvent_bound_check(const PiNode& node,
                                         const std::vector<Point>& samples,
                                         const Tolerances& tol) {
  const double top = max_eig(hermitian_part(node.a + node.a.adjoint()), tol);
  if (top > tol.psd_slack) {
    throw Error(ErrorKind::kNotDissipative,
                "max eig(A + A^*) = " + std::to_string(top));
  }
  VerificationReport rep;
  rep.name = "resolvent_bound";
  double worst = -1.0;
  for (const auto& w : samples) {
    require_in_halfplane(w, node.dec.d());
    double min_re = w[0].real();
    for (cplx v : w) min_re = std::min(min_re, v.real());
    const ComplexMatrix res = inverse(pencil_at(node.dec, w) - node.a, tol);
    worst = std::max(worst, op_norm(res) * min_re - 1.0);
  }
  rep.add("resolvent_slack", worst, kResidualThreshold);
  return rep;
}

std::vector<PointPair> polydisk_pairs(std::size_t count, std::size_t d,
                                      std::uint64_t seed, double radius) {
  Rng rng(seed);
  std::vector<PointPair> out;
  for (std::size_t i = 0; i < count; ++i) {
    Point w = random_polydisk_point(d, radius, rng);
    out.emplace_back(std::move(w), random_polydisk_point(d, radius, rng));
  }
  return out;
}

std::vector<PointPair> halfplane_pairs(std::size_t count, std::size_t d,
                                       std::uint64_t seed) {
  Rng rng(seed);
  std::vector<PointPair> out;
  for (std::size_t i = 0; i < count; ++i) {
    Point z = random_halfplane_point(d, rng);
    out.emplace_back(std::move(z), random_halfplane_point(d, rng));
  }
  return out;
}

VerificationReport verify_kernels(const SchurGRColligation& col, std::uint64_t seed,
                                  std::size_t pairs, const Tolerances& tol) {
  VerificationReport rep =
      kernel_report("kernels", evaluator(col, tol), kernels_from_gr(col, tol),
                    col.dec.d(), true, AglerFlavor::kDiskSchur, seed, pairs, tol);
  const ComplexMatrix u = col.colligation_matrix();
  double metric = 0.0;
  switch (col.metric) {
    case Metric::kUnitary: metric = unitary_residual(u); break;
    case Metric::kIsometric: metric = isometry_residual(u); break;
    case Metric::kCoisometric: metric = coisometry_residual(u); break;
    case Metric::kContractive: metric = std::max(0.0, op_norm(u) - 1.0); break;
  }
  rep.add("colligation_metric_residual", metric, tol.structure);
  return rep;
}

VerificationReport verify_kernels(const HerglotzDiskColligation& col,
                                  std::uint64_t seed, std::size_t pairs,
                                  const Tolerances& tol) {
  return kernel_report("kernels", evaluator(col, tol), kernels_from_herglotz(col, tol),
                       col.dec.d(), true, AglerFlavor::kDiskHerglotz, seed, pairs, tol);
}

VerificationReport verify_kernels(const PiNode& node, std::uint64_t seed,
                                  std::size_t pairs, const Tolerances& tol) {
  const AglerFlavor flavor = node.flavor == PiFlavor::kImpedance
                                 ? AglerFlavor::kPiHerglotz
                                 : AglerFlavor::kPiSchur;
  return kernel_report("kernels", evaluator(node, tol), kernels_from_pi_node(node, tol),
                       node.dec.d(), false, flavor, seed, pairs, tol);
}

VerificationReport verify_kernels(const BessmertnyiPencil& pen, std::uint64_t seed,
                                  std::size_t pairs, const Tolerances& tol) {
  return kernel_report("kernels", evaluator(pen, tol), kernels_from_pencil(pen, tol),
                       pen.d(), false, AglerFlavor::kPiHerglotz, seed, pairs, tol);
}

namespace {

template <typename Col, typename Check>
VerificationReport disk_tuple_report(const Col& col, std::uint64_t seed,
                                     std::size_t count, const Tolerances& tol,
                                     const std::string& label, Check check) {
  VerificationReport rep;
  rep.name = "tuples";
  rep.seed = seed;
  const std::size_t d = col.dec.d();
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < count; ++i) {
    const auto t = random_commuting_tuple(d, 1 + i % 4, TupleKind::kStrictContraction,
                                          margin_for(i), seed * 1000003 + i);
    worst = std::max(worst, check(eval_on_tuple(col, t, tol)));
  }
  rep.add(label, worst, kResidualThreshold);

  // Cross-oracle against the truncated power series.
  double diff = 0.0, tail = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto t = random_commuting_tuple(d, 3, TupleKind::kStrictContraction, 0.3,
                                          seed * 7919 + 17 + i);
    const TaylorResult tr = taylor_eval_on_tuple(col, t, d >= 3 ? 30 : 40,
                                                 std::numeric_limits<double>::infinity());
    diff = std::max(diff, max_abs_diff(tr.value, eval_on_tuple(col, t, tol)));
    tail = std::max(tail, tr.tail_bound);
  }
  rep.add("taylor_cross_oracle", diff, kTaylorThreshold);
  char buf[48];
  std::snprintf(buf, sizeof buf, "taylor tail bound %.3e", tail);
  rep.notes = buf;
  return rep;
}

}  // namespace

VerificationReport verify_tuples(const SchurGRColligation& col, std::uint64_t seed,
                                 std::size_t count, const Tolerances& tol) {
  return disk_tuple_report(col, seed, count, tol, "tuple_norm_excess",
                           [](const ComplexMatrix& s) { return op_norm(s) - 1.0; });
}

VerificationReport verify_tuples(const HerglotzDiskColligation& col,
                                 std::uint64_t seed, std::size_t count,
                                 const Tolerances& tol) {
  return disk_tuple_report(col, seed, count, tol, "tuple_herglotz_neg_min_eig",
                           [&](const ComplexMatrix& f) {
                             return -min_eig_psd(hermitian_part(f + f.adjoint()), tol);
                           });
}

VerificationReport verify_tuples(const PiNode& node, std::uint64_t seed,
                                 std::size_t count, const Tolerances& tol) {
  VerificationReport rep;
  rep.name = "tuples";
  rep.seed = seed;
  const bool impedance = node.flavor == PiFlavor::kImpedance;
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < count; ++i) {
    const auto t = random_commuting_tuple(node.dec.d(), 1 + i % 4,
                                          TupleKind::kStrictlyAccretive,
                                          margin_for(i), seed * 1000003 + i);
    const ComplexMatrix f = eval_on_tuple(node, t, tol);
    worst = std::max(worst, impedance
                                ? -min_eig_psd(hermitian_part(f + f.adjoint()), tol)
                                : op_norm(f) - 1.0);
  }
  rep.add(impedance ? "tuple_herglotz_neg_min_eig" : "tuple_norm_excess", worst,
          kResidualThreshold);
  return rep;
}

VerificationReport verify_growth(const BessmertnyiPencil& pen) {
  VerificationReport rep;
  rep.name = "growth";
  ComplexMatrix sum(pen.q + pen.n, pen.q + pen.n);
  for (const auto& v : pen.vk) sum += v;
  const GrowthResult g = growth_limit(evaluator(pen), pen.d(), default_growth_grid());
  rep.add("growth_limit_error", max_abs_diff(g.limit, sum.block(0, 0, pen.q, pen.q)),
          kGrowthThreshold);
  return rep;
}

VerificationReport verify_growth(const PiNode& node) {
  VerificationReport rep;
  rep.name = "growth";
  const GrowthResult g = growth_limit(evaluator(node), node.dec.d(), default_growth_grid());
  rep.add("growth_limit_error", g.limit.max_abs(), kGrowthThreshold);
  return rep;
}

}  // namespace agler
