#include <gtest/gtest.h>

#include <cmath>

#include "agler/classes.hpp"
#include "agler/linalg.hpp"
#include "agler/random.hpp"
#include "test_util.hpp"

using namespace agler;

namespace {

DecompositionOfIdentity one_block(std::size_t n = 1) {
  const std::size_t s[] = {n};
  return block_decomposition(s);
}

SchurGRColligation shift() {
  return make_schur_gr(ComplexMatrix::scalar(0.0), ComplexMatrix::scalar(1.0),
                       ComplexMatrix::scalar(1.0), ComplexMatrix::scalar(0.0), one_block(),
                       Metric::kUnitary);
}

// Oracle: truncated Neumann series D + sum_m C (P A)^{m-1} P B.
ComplexMatrix neumann(const SchurGRColligation& c, const Point& z, int degree) {
  const ComplexMatrix p = pencil_at(c.dec, z);
  ComplexMatrix term = p * c.b, sum = c.d;
  for (int m = 1; m <= degree; ++m) {
    sum += c.c * term;
    term = p * (c.a * term);
  }
  return sum;
}

}  // namespace

TEST(SchurGR, ShiftIsIdentityFunction) {
  const auto col = shift();
  for (double x : {-0.9, -0.3, 0.0, 0.25, 0.77}) {
    const cplx z[] = {x};
    EXPECT_NEAR(std::abs(eval_schur_disk(col, z)(0, 0) - x), 0.0, 1e-15);
  }
  const cplx zi[] = {cplx(0.1, 0.6)};
  EXPECT_LT(std::abs(eval_schur_disk(col, zi)(0, 0) - zi[0]), 1e-15);
}

TEST(SchurGR, AtOriginEqualsD) {
  Rng rng(1);
  const auto col = random_unitary_colligation(2, 4, 2, rng);
  const cplx z[] = {0.0, 0.0};
  EXPECT_LT(max_abs_diff(eval_schur_disk(col, z), col.d), 1e-15);
}

TEST(SchurGR, MatchesNeumannSeries) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(seed);
    const auto col = random_unitary_colligation(2, 4, 2, rng);
    const Point z = random_polydisk_point(2, 0.5, rng);
    EXPECT_LT(max_abs_diff(eval_schur_disk(col, z), neumann(col, z, 60)), 1e-8);
  }
}

TEST(SchurGR, RejectsBadInputs) {
  const auto i1 = ComplexMatrix::scalar(1.0);
  expect_error(ErrorKind::kInvariantViolation, [&] {
    make_schur_gr(i1, i1, i1, i1, one_block(), Metric::kUnitary);
  });
  const auto lenient = make_schur_gr(i1, i1, i1, i1, one_block(), Metric::kUnitary,
                                     Validation::kLenient);
  EXPECT_FALSE(lenient.warnings.empty());
  expect_error(ErrorKind::kDimensionMismatch, [&] {
    make_schur_gr(ComplexMatrix(2, 2), i1, i1, i1, one_block(), Metric::kUnitary);
  });
  const auto col = shift();
  const cplx out[] = {1.0};
  expect_error(ErrorKind::kOutsideDomain, [&] { eval_schur_disk(col, out); });
  const cplx two[] = {0.1, 0.1};
  expect_error(ErrorKind::kDimensionMismatch, [&] { eval_schur_disk(col, two); });
}

TEST(SchurGR, ContractiveMetricAccepted) {
  const auto h = ComplexMatrix::scalar(0.5);
  const auto col = make_schur_gr(h, h, h, h, one_block(), Metric::kContractive);
  EXPECT_TRUE(col.warnings.empty());
}

TEST(HerglotzColligation, ConstantSkewAndPositivity) {
  const auto col = make_herglotz_colligation(ComplexMatrix::scalar(1.0), ComplexMatrix::scalar(0.0),
                                             ComplexMatrix::scalar(0.0),
                                             ComplexMatrix::scalar(cplx(0.0, 2.0)), one_block());
  const cplx z[] = {0.4};
  EXPECT_LT(std::abs(eval_herglotz_disk(col, z)(0, 0) - cplx(0.0, 2.0)), 1e-15);

  Rng rng(4);
  const auto rc = random_herglotz_colligation(2, 4, 2, rng);
  for (int i = 0; i < 100; ++i) {
    const Point p = random_polydisk_point(2, 0.99, rng);
    const auto f = eval_herglotz_disk(rc, p);
    EXPECT_GE(min_eig_psd(hermitian_part(f + f.adjoint())), -1e-9);
  }
}

TEST(HerglotzColligation, RejectsBrokenRelations) {
  const auto one = ComplexMatrix::scalar(1.0);
  // B != AC^*
  expect_error(ErrorKind::kInvariantViolation, [&] {
    make_herglotz_colligation(one, ComplexMatrix::scalar(2.0), one, ComplexMatrix::scalar(0.5),
                              one_block());
  });
}

TEST(HerglotzRep, ScalarExamples) {
  const auto rep = make_herglotz_rep(ComplexMatrix::scalar(0.0), ComplexMatrix::scalar(1.0),
                                     ComplexMatrix::scalar(1.0), one_block());
  const cplx z0[] = {0.0}, z[] = {cplx(0.3, -0.2)};
  EXPECT_LT(std::abs(eval_herglotz_rep(rep, z0)(0, 0) - 1.0), 1e-15);
  EXPECT_LT(std::abs(eval_herglotz_rep(rep, z)(0, 0) - (1.0 + z[0]) / (1.0 - z[0])), 1e-14);

  const auto rep2 = make_herglotz_rep(ComplexMatrix::scalar(0.0), ComplexMatrix::scalar(-1.0),
                                      ComplexMatrix::scalar(1.0), one_block());
  const cplx half[] = {0.5};
  EXPECT_LT(std::abs(eval_herglotz_rep(rep2, half)(0, 0) - 1.0 / 3.0), 1e-15);

  expect_error(ErrorKind::kInvariantViolation, [&] {
    make_herglotz_rep(ComplexMatrix::scalar(1.0), ComplexMatrix::scalar(1.0),
                      ComplexMatrix::scalar(1.0), one_block());
  });
}

TEST(HerglotzRep, OriginIsRPlusVStarV) {
  Rng rng(8);
  const auto rep = random_herglotz_rep(2, 3, 2, rng);
  const cplx z[] = {0.0, 0.0};
  EXPECT_LT(max_abs_diff(eval_herglotz_rep(rep, z), rep.r + adjoint_times(rep.v, rep.v)), 1e-12);
}

TEST(PiNode, OneOverWFromTriple) {
  const auto node = impedance_node_from_triple(ComplexMatrix::scalar(0.0), ComplexMatrix::scalar(1.0),
                                               ComplexMatrix::scalar(0.0), one_block());
  EXPECT_EQ(node.a(0, 0), cplx(0.0));
  EXPECT_EQ(node.b(0, 0), cplx(1.0));
  EXPECT_EQ(node.c(0, 0), cplx(1.0));
  EXPECT_EQ(node.d(0, 0), cplx(0.0));
  for (cplx w : {cplx(1.0), cplx(2.0, 3.0), cplx(0.01, -7.0)}) {
    const cplx p[] = {w};
    EXPECT_LT(std::abs(eval_pi_node(node, p)(0, 0) - 1.0 / w), 1e-14);
  }
  const cplx bad[] = {cplx(0.0, 1.0)};
  expect_error(ErrorKind::kOutsideDomain, [&] { eval_pi_node(node, bad); });
}

TEST(PiNode, ConstantSkewTriple) {
  const auto node = impedance_node_from_triple(ComplexMatrix::scalar(0.0), ComplexMatrix::scalar(0.0),
                                               ComplexMatrix::scalar(cplx(0.0, 0.7)), one_block());
  const cplx w[] = {cplx(3.0, 1.0)};
  EXPECT_LT(std::abs(eval_pi_node(node, w)(0, 0) - cplx(0.0, 0.7)), 1e-15);
}

TEST(PiNode, RandomTripleValueAtOne) {
  Rng rng(5);
  const auto t = random_skew(5, rng), r = random_skew(2, rng);
  const auto v0 = random_gaussian(5, 2, rng);
  const auto node = impedance_node_from_triple(t, v0, r, random_positive_decomposition(2, 5, rng));
  const cplx e[] = {1.0, 1.0};
  EXPECT_LT(max_abs_diff(eval_pi_node(node, e), adjoint_times(v0, v0) + r), 1e-10);
  expect_error(ErrorKind::kNotSkewAdjoint, [&] {
    impedance_node_from_triple(ComplexMatrix::identity(5), v0, r, node.dec);
  });
}

TEST(PiNode, ScatteringExample) {
  const double s2 = std::sqrt(2.0);
  const auto node = make_pi_node(ComplexMatrix::scalar(-1.0), ComplexMatrix::scalar(-s2),
                                 ComplexMatrix::scalar(s2), ComplexMatrix::scalar(1.0), one_block(),
                                 PiFlavor::kScattering);
  EXPECT_LT(scattering_graph_gram(node.a, node.b, node.c, node.d).max_abs(), 1e-15);
  const cplx w[] = {cplx(2.0, 1.0)};
  EXPECT_LT(std::abs(eval_pi_node(node, w)(0, 0) - (w[0] - 1.0) / (w[0] + 1.0)), 1e-15);
  expect_error(ErrorKind::kInvariantViolation, [&] {
    make_pi_node(ComplexMatrix::scalar(-1.0), ComplexMatrix::scalar(s2), ComplexMatrix::scalar(s2),
                 ComplexMatrix::scalar(1.0), one_block(), PiFlavor::kScattering);
  });
}

TEST(PiNode, AtUnitPointUsesResolventOfA) {
  Rng rng(9);
  const auto node = random_impedance_node(2, 3, 1, rng);
  const cplx e[] = {1.0, 1.0};
  const auto expect = node.d + node.c * solve(ComplexMatrix::identity(3) - node.a, node.b);
  EXPECT_LT(max_abs_diff(eval_pi_node(node, e), expect), 1e-12);
}
