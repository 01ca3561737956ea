// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "agler/bessmertnyi.hpp"
#include "agler/classes.hpp"
#include "agler/decomp.hpp"
#include "agler/error.hpp"
#include "agler/io.hpp"
#include "agler/linalg.hpp"
#include "agler/lurking.hpp"
#include "agler/random.hpp"
#include "agler/transforms.hpp"
#include "agler/verify.hpp"

using namespace agler;

namespace {

constexpr std::uint64_t kSeeds = 20;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Tracks the worst value of each measured quantity against its bound.
class Tally {
 public:
  void check(const std::string& label, double value, double bound) {
    for (auto& e : entries_) {
      if (e.label == label) {
        if (!(value <= e.worst) || std::isnan(value)) e.worst = value;
        return;
      }
    }
    entries_.push_back({label, value, bound});
  }
  void flag(const std::string& label, bool ok) { check(label, ok ? 0.0 : 1.0, 0.0); }

  Outcome outcome() const {
    Outcome o;
    char buf[160];
    for (const auto& e : entries_) {
      const bool ok = e.worst <= e.bound;
      o.pass = o.pass && ok;
      std::snprintf(buf, sizeof buf, "%s%s=%.2e(<=%.0e)", o.detail.empty() ? "" : " ",
                    e.label.c_str(), e.worst, e.bound);
      o.detail += buf;
    }
    return o;
  }

 private:
  struct Entry {
    std::string label;
    double worst;
    double bound;
  };
  std::vector<Entry> entries_;
};

std::size_t dim_d(std::uint64_t seed) { return 1 + seed % 3; }
std::size_t dim_n(std::uint64_t seed) { return dim_d(seed) + seed % (9 - dim_d(seed)); }

Outcome criterion1() {
  Tally t;
  Rng rng(1);
  for (const auto& z : halton_polydisk(1000, 3, 0.999, 1)) {
    const Point back = cayley_point_h2d(cayley_point_d2h(z));
    for (std::size_t k = 0; k < z.size(); ++k) t.check("disk_roundtrip", std::abs(back[k] - z[k]), 1e-14);
  }
  for (const auto& w : halton_halfplane(1000, 3, 1)) {
    const Point back = cayley_point_d2h(cayley_point_h2d(w));
    double err = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) err = std::max(err, std::abs(back[k] - w[k]) / std::max(1.0, std::abs(w[k])));
    t.check("halfplane_roundtrip_rel", err, 1e-14);
  }
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + i % 4;
    const ComplexMatrix g = random_gaussian(n, n, rng);
    const ComplexMatrix f = g.adjoint() * g + 0.1 * ComplexMatrix::identity(n) + random_skew(n, rng);
    t.check("value_roundtrip", max_abs_diff(cayley_value_S_to_F(cayley_value_F_to_S(f)), f) / (1.0 + f.max_abs()), 1e-12);
  }
  return t.outcome();
}

Outcome criterion2() {
  Tally t;
  for (std::uint64_t s = 0; s < kSeeds; ++s) {
    Rng rng(s);
    const std::size_t d = dim_d(s), n = dim_n(s), q = 1 + s % 2;
    const VerificationReport reps[] = {
        verify_kernels(random_unitary_colligation(d, n, q, rng), s, 100),
        verify_kernels(random_herglotz_colligation(d, n, q, rng), s, 100),
        verify_kernels(random_impedance_node(d, n, q, rng), s, 100)};
    for (const auto& rep : reps)
      for (const auto& r : rep.residuals) t.check(r.label, r.value, r.threshold);
  }
  return t.outcome();
}

Outcome criterion3() {
  Tally t;
  for (std::uint64_t s = 0; s < kSeeds; ++s) {
    Rng rng(100 + s);
    const std::size_t d = dim_d(s), n = dim_n(s), q = 1 + s % 2;
    const auto col = random_unitary_colligation(d, n, q, rng);
    const auto rep = schur_gr_to_herglotz_rep(col);
    t.check("herglotz_rep_error", herglotz_rep_conversion_error(col, rep, 20, s), 1e-9);
    t.check("pi_impedance_error", pi_impedance_conversion_error(col, gr_to_pi_impedance(col), 20, s), 1e-9);
    const ComplexMatrix f0 = cayley_value_S_to_F(col.d);
    t.check("vstar_v_minus_re_f0", max_abs_diff(rep.v.adjoint() * rep.v, hermitian_part(f0)), 1e-9);
  }
  return t.outcome();
}

Outcome criterion4() {
  Tally t;
  for (std::uint64_t s = 0; s < kSeeds; ++s) {
    Rng rng(200 + s);
    const std::size_t d = dim_d(s), n = dim_n(s), q = 1 + s % 2;
    const auto rep = random_herglotz_rep(d, n, q, rng);
    const auto pen = build_pencil_from_herglotz_rep(rep);
    t.check("v0_skew", max_abs_diff(pen.v0, -1.0 * pen.v0.adjoint()), 1e-10);
    ComplexMatrix sum(pen.v0.rows(), pen.v0.cols());
    for (const auto& v : pen.vk) {
      t.check("vk_neg_min_eig", -min_eig_psd(hermitian_part(v)), 1e-9);
      sum += v;
    }
    const std::size_t m = sum.rows() - pen.q;
    ComplexMatrix target = sum;
    target.set_block(pen.q, pen.q, ComplexMatrix::identity(m));
    target.set_block(0, pen.q, ComplexMatrix(pen.q, m));
    target.set_block(pen.q, 0, ComplexMatrix(m, pen.q));
    t.check("normalization", max_abs_diff(sum, target), 1e-9);
    for (const auto& w : halton_halfplane(50, d, s)) {
      const ComplexMatrix fv = pencil_transfer(pen, w);
      t.check("transfer_vs_double_cayley", max_abs_diff(fv, eval_herglotz_rep(rep, cayley_point_h2d(w))), 1e-9);
    }
  }
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + i % 6;
    const auto dec = random_positive_decomposition(2, n, rng);
    t.check("id1", check_identity_id1(random_skew(n, rng), dec.part(0)), 1e-10);
  }
  return t.outcome();
}

Outcome criterion5() {
  Tally t;
  for (std::uint64_t s = 0; s < kSeeds; ++s) {
    Rng rng(300 + s);
    const std::size_t d = 1 + s % 2, n = d + s % (6 - d), q = 1 + (s / 2) % 2;
    const auto col = random_unitary_colligation(d, n, q, rng);
    const auto samples = samples_from_colligation(col, halton_polydisk(12, d, 0.9, s));
    const auto rec = realize_schur_from_samples(samples);
    t.flag("metric_unitary", rec.metric == Metric::kUnitary);
    const ComplexMatrix u = rec.colligation_matrix();
    t.check("unitarity", max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(u.rows())), 1e-9);
    t.check("sample_residual", sample_residual(rec, samples), 1e-9);
    for (const auto& z : halton_polydisk(50, d, 0.9, 1000 + s))
      t.check("heldout", max_abs_diff(eval_schur_disk(rec, z), eval_schur_disk(col, z)), 1e-8);
  }
  return t.outcome();
}

Outcome criterion6() {
  Tally t;
  for (std::uint64_t s = 0; s < kSeeds; ++s) {
    Rng rng(400 + s);
    const std::size_t d = dim_d(s), n = std::min<std::size_t>(dim_n(s), 6), q = 1 + s % 2;
    const auto col = random_unitary_colligation(d, n, q, rng);
    const auto hc = random_herglotz_colligation(d, n, q, rng);
    const VerificationReport reps[] = {verify_tuples(col, s, 200), verify_tuples(hc, s, 200)};
    for (const auto& rep : reps)
      for (const auto& r : rep.residuals)
        if (r.label != "taylor_cross_oracle") t.check(r.label, r.value, r.threshold);
    // Taylor oracle at margin 0.3 and degree 40, every d.
    const auto tup = random_commuting_tuple(d, 2, TupleKind::kStrictContraction, 0.3, s);
    const auto inf = std::numeric_limits<double>::infinity();
    t.check("taylor_schur", max_abs_diff(taylor_eval_on_tuple(col, tup, 40, inf).value, eval_on_tuple(col, tup)), 1e-6);
    t.check("taylor_herglotz", max_abs_diff(taylor_eval_on_tuple(hc, tup, 40, inf).value, eval_on_tuple(hc, tup)), 1e-6);
  }
  return t.outcome();
}

// Normalized pencil with unit-scale blocks: V_k = X^* E_k X, X = diag(L, I),
// so sum V_k = diag(L^*L, I).
BessmertnyiPencil unit_pencil(std::size_t d, std::size_t q, std::size_t n, Rng& rng) {
  const auto e = random_positive_decomposition(d, q + n, rng);
  const ComplexMatrix x = block_diag(random_gaussian(q, q, rng), ComplexMatrix::identity(n));
  std::vector<ComplexMatrix> vk;
  for (std::size_t k = 0; k < d; ++k) vk.push_back(hermitian_part(x.adjoint() * e.part(k) * x));
  return make_pencil(q, random_skew(q + n, rng), std::move(vk));
}

Outcome criterion7() {
  Tally t;
  for (std::uint64_t s = 0; s < kSeeds; ++s) {
    Rng rng(500 + s);
    const std::size_t d = dim_d(s), n = dim_n(s), q = 1 + s % 2;
    const auto node = random_impedance_node(d, n, q, rng);
    for (const auto& r : resolvent_bound_check(node, halton_halfplane(100, d, s)).residuals)
      t.check(r.label, r.value, r.threshold);
    for (const auto& r : verify_growth(node).residuals) t.check("node_" + r.label, r.value, r.threshold);
    for (const auto& r : verify_growth(unit_pencil(d, q, n, rng)).residuals)
      t.check("pencil_" + r.label, r.value, r.threshold);
    // Pencils from representations can carry a large constant term f0 =
    // V0_11, and f(te)/t - M11 = f0/t + O(1/t^2); check that law instead.
    const auto pen = build_pencil_from_herglotz_rep(random_herglotz_rep(d, n, q, rng));
    const auto grid = default_growth_grid();
    const double tmax = grid.back();
    ComplexMatrix m11(q, q);
    for (const auto& v : pen.vk) m11 += v.block(0, 0, q, q);
    const ComplexMatrix lim = growth_limit(evaluator(pen), d, grid).limit;
    const ComplexMatrix f0 = pen.v0.block(0, 0, q, q);
    t.check("rep_pencil_defect_minus_f0_over_t",
            max_abs_diff(tmax * (lim - m11), f0) / (1.0 + f0.max_abs()), 1e-3);
  }
  return t.outcome();
}

Outcome criterion8() {
  Tally t;
  for (std::uint64_t s = 0; s < kSeeds; ++s) {
    Rng rng(600 + s);
    const std::size_t n = 1 + s % 8, k = s % 3;
    const ComplexMatrix tm = random_skew(n, rng), v0 = random_gaussian(n, 1, rng);
    const ComplexMatrix v1 = random_gaussian(k, 1, rng);
    const ComplexMatrix r = ComplexMatrix::scalar(cplx(0.0, random_skew(1, rng)(0, 0).imag()));
    const NevanlinnaData nv = nevanlinna_atoms(v1, r, tm, v0);
    const ComplexMatrix ipt = ComplexMatrix::identity(n) + tm;
    for (const auto& w : halton_halfplane(50, 1, s)) {
      const ComplexMatrix res = solve(w[0] * ComplexMatrix::identity(n) - tm, ipt.adjoint() * v0);
      const cplx direct = r(0, 0) + w[0] * (v1.adjoint() * v1)(0, 0) +
                          (v0.adjoint() * (-1.0 * tm * v0 + ipt * res))(0, 0);
      t.check("reevaluation", std::abs(nv.evaluate(w[0]) - direct), 1e-10);
    }
  }
  return t.outcome();
}

Outcome criterion9() {
  Tally t;
  Rng rng(9);
  for (int i = 0; i < 20; ++i) {
    const std::size_t d = 1 + i % 4, dim = 1 + i % 6;
    const auto dec = random_positive_decomposition(d, dim, rng);
    const auto nd = naimark_dilate(dec);
    t.check("isometry", max_abs_diff(nd.iota.adjoint() * nd.iota, ComplexMatrix::identity(dim)), 1e-10);
    for (std::size_t k = 0; k < d; ++k)
      t.check("compression", max_abs_diff(nd.iota.adjoint() * nd.spectral.part(k) * nd.iota, dec.part(k)), 1e-10);
  }
  return t.outcome();
}

Outcome criterion10() {
  Outcome o;
  int cases = 0;
  auto expect = [&](const char* name, ErrorKind kind, const std::function<void()>& f) {
    ++cases;
    std::string got = "no error";
    try {
      f();
    } catch (const Error& e) {
      if (e.kind() == kind) return;
      got = std::string(to_string(e.kind()));
    }
    o.pass = false;
    o.detail += std::string(o.detail.empty() ? "" : " ") + name + ":" + got;
  };
  auto expect_fail = [&](const char* name, const VerificationReport& rep) {
    ++cases;
    if (!rep.all_pass()) return;
    o.pass = false;
    o.detail += std::string(o.detail.empty() ? "" : " ") + name + ":passed";
  };
  const ComplexMatrix zero = ComplexMatrix::scalar(0.0), one = ComplexMatrix::scalar(1.0);
  const std::size_t sz1[] = {1};
  const auto dec1 = block_decomposition(sz1);
  const cplx two[] = {2.0};

  expect("decomp_sum", ErrorKind::kNotDecomposition, [&] {
    make_decomposition({ComplexMatrix::scalar(0.5)}, DecompositionKind::kPositive);
  });
  expect("naimark_neg", ErrorKind::kNotDecomposition, [&] {
    make_decomposition({ComplexMatrix::scalar(-0.5), ComplexMatrix::scalar(1.5)}, DecompositionKind::kPositive);
  });
  expect("not_unitary", ErrorKind::kInvariantViolation, [&] {
    make_schur_gr(zero, one, one, ComplexMatrix::scalar(0.5), dec1, Metric::kUnitary);
  });
  expect("outside_disk", ErrorKind::kOutsideDomain, [&] {
    eval_schur_disk(make_schur_gr(zero, one, one, zero, dec1, Metric::kUnitary), two);
  });
  expect("shape", ErrorKind::kDimensionMismatch, [&] { ComplexMatrix(2, 3) * ComplexMatrix(2, 3); });
  expect("singular", ErrorKind::kSingularMatrix, [&] { solve(ComplexMatrix(2, 2), ComplexMatrix(2, 1)); });
  expect("not_hermitian", ErrorKind::kNotHermitian, [&] { hermitian_eig(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}); });
  expect("pole_one", ErrorKind::kPoleAtOne, [&] { const cplx z[] = {1.0}; cayley_point_d2h(z); });
  expect("pole_minus_one", ErrorKind::kPoleAtMinusOne, [&] { const cplx w[] = {-1.0}; cayley_point_h2d(w); });
  expect("value_singular", ErrorKind::kSingularMatrix, [&] { cayley_value_S_to_F(one); });
  expect("eigenvalue_one", ErrorKind::kEigenvalueOne, [&] { unitary_to_skew(one); });
  expect("not_skew", ErrorKind::kNotSkewAdjoint, [&] { skew_to_unitary(one); });
  expect("singular_i_minus_d", ErrorKind::kSingularIminusD, [&] {
    schur_gr_to_herglotz_rep(make_schur_gr(one, zero, zero, one, dec1, Metric::kUnitary));
  });
  expect("pencil_invariant", ErrorKind::kInvariantViolation, [&] {
    make_pencil(1, ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}}, {ComplexMatrix::identity(2)});
  });
  expect("singular_block", ErrorKind::kSingularBlock, [&] {
    const auto pen = make_pencil(1, ComplexMatrix(2, 2), {ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}}},
                                 Validation::kLenient);
    const cplx w[] = {1.0};
    pencil_transfer(pen, w);
  });
  expect("not_scalar", ErrorKind::kNotScalar, [&] {
    nevanlinna_atoms(ComplexMatrix(0, 2), ComplexMatrix(2, 2), ComplexMatrix(1, 1), ComplexMatrix(1, 2));
  });
  expect("gram_mismatch", ErrorKind::kGramMismatch, [&] {
    const auto col = make_schur_gr(zero, one, one, zero, dec1, Metric::kUnitary);
    auto samples = samples_from_colligation(col, {{0.1}, {0.3}, {-0.4}});
    samples[1].value(0, 0) = 0.35;
    realize_schur_from_samples(samples);
  });
  expect("domain_mismatch", ErrorKind::kDomainMismatch, [&] {
    const auto col = make_schur_gr(zero, one, one, zero, dec1, Metric::kUnitary);
    agler_residual(evaluator(col), kernels_from_gr(col), {{{cplx(-3.0)}, {cplx(0.0)}}}, AglerFlavor::kDiskSchur);
  });
  const auto shift = make_schur_gr(zero, one, one, zero, dec1, Metric::kUnitary);
  const auto acc = random_commuting_tuple(1, 2, TupleKind::kStrictlyAccretive, 0.3, 1);
  expect("wrong_tuple_kind", ErrorKind::kWrongTupleKind, [&] { eval_on_tuple(shift, acc); });
  expect("degree_too_small", ErrorKind::kDegreeTooSmall, [&] {
    Rng rng(3);
    taylor_eval_on_tuple(random_unitary_colligation(2, 3, 1, rng),
                         random_commuting_tuple(2, 2, TupleKind::kStrictContraction, 0.05, 1), 2, 1e-6);
  });
  expect("not_dissipative", ErrorKind::kNotDissipative, [&] {
    resolvent_bound_check(make_pi_node(one, zero, zero, zero, dec1, PiFlavor::kImpedance, Validation::kLenient),
                          halton_halfplane(5, 1, 1));
  });
  expect("bad_params", ErrorKind::kBadParams, [&] {
    random_commuting_tuple(1, 1, TupleKind::kStrictContraction, 2.0, 1);
  });
  expect("non_commuting", ErrorKind::kInvariantViolation, [&] {
    make_commuting_tuple({ComplexMatrix{{0.0, 0.5}, {0.0, 0.0}}, ComplexMatrix{{0.0, 0.0}, {0.5, 0.0}}},
                         TupleKind::kStrictContraction, 0.1);
  });
  expect("parse", ErrorKind::kParseError, [&] { parse_text("{\"type\":"); });

  // Lenient construction of corrupted objects: every report must fail.
  Rng rng(11);
  auto bad = random_unitary_colligation(2, 3, 1, rng);
  bad = make_schur_gr(bad.a, bad.b, bad.c, 1.05 * bad.d + ComplexMatrix::scalar(0.1), bad.dec,
                      Metric::kUnitary, Validation::kLenient);
  expect_fail("corrupted_colligation", verify_kernels(bad, 1, 100));
  auto hb = random_herglotz_colligation(2, 3, 1, rng);
  hb = make_herglotz_colligation(hb.a, hb.b, hb.c, hb.d - ComplexMatrix::scalar(2.0), hb.dec, Validation::kLenient);
  expect_fail("corrupted_herglotz", verify_kernels(hb, 1, 100));
  const auto pen = make_pencil(1, ComplexMatrix{{0.1, 1.0}, {-1.0, 0.0}}, {ComplexMatrix{{0.0, 0.0}, {0.0, 1.0}}},
                               Validation::kLenient);
  expect_fail("corrupted_pencil", check_pencil_class(pen));
  // Off-diagonal coupling in sum V_k moves the growth limit off M11.
  expect_fail("wrong_growth", verify_growth(make_pencil(1, ComplexMatrix{{0.0, 1.0}, {-1.0, 0.0}},
                                                        {ComplexMatrix{{1.0, 0.5}, {0.5, 1.0}}},
                                                        Validation::kLenient)));

  if (o.pass) o.detail = std::to_string(cases) + " corrupted inputs rejected";
  return o;
}

}  // namespace

int main() {
  const std::function<Outcome()> criteria[] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                               criterion6, criterion7, criterion8, criterion9, criterion10};
  const char* names[] = {"cayley lattice",        "agler decomposition", "conversion consistency",
                         "bessmertnyi pipeline",  "lurking isometry",    "functional calculus",
                         "pi-geometry bounds",    "nevanlinna round-trip", "naimark dilation",
                         "negative controls"};
  int failed = 0;
  for (int i = 0; i < 10; ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("unexpected error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2d %s  %s  [%.1fs] %s\n", i + 1, o.pass ? "PASS" : "FAIL", names[i], secs,
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
