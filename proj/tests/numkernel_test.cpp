#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "agler/error.hpp"
#include "agler/linalg.hpp"
#include "agler/random.hpp"
#include "agler/simd/kernels.hpp"
#include "test_util.hpp"

using namespace agler;

namespace {

// Independent oracle: triple loop product.
ComplexMatrix naive_mul(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      cplx s = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

}  // namespace

TEST(Matrix, ProductsAgreeWithNaiveLoops) {
  Rng rng(1);
  for (std::size_t n : {1u, 2u, 3u, 5u, 9u}) {
    const auto a = random_gaussian(n, n + 2, rng), b = random_gaussian(n + 2, n + 1, rng);
    EXPECT_LT(max_abs_diff(a * b, naive_mul(a, b)), 1e-13);
    EXPECT_LT(max_abs_diff(adjoint_times(a, a), naive_mul(a.adjoint(), a)), 1e-13);
    EXPECT_LT(max_abs_diff(times_adjoint(b, b), naive_mul(b, b.adjoint())), 1e-13);
  }
}

TEST(Matrix, ShapeErrors) {
  const ComplexMatrix a(2, 3), b(2, 3);
  expect_error(ErrorKind::kDimensionMismatch, [&] { (void)(a * b); });
  expect_error(ErrorKind::kDimensionMismatch, [&] { (void)(a + ComplexMatrix(3, 2)); });
  EXPECT_TRUE(std::isinf(unitary_residual(a)));
}

TEST(Matrix, KronAndBlocks) {
  const ComplexMatrix a{{1.0, 2.0}, {3.0, 4.0}};
  const ComplexMatrix i2 = ComplexMatrix::identity(2);
  const ComplexMatrix k = kron(a, i2);
  EXPECT_EQ(k.rows(), 4u);
  EXPECT_EQ(k(0, 2), cplx(2.0));
  EXPECT_EQ(k(3, 1), cplx(3.0));
  EXPECT_EQ(k(3, 3), cplx(4.0));
  EXPECT_EQ(k(1, 0), cplx(0.0));
  const ComplexMatrix m = assemble(a, ComplexMatrix(2, 1), ComplexMatrix(1, 2), ComplexMatrix::scalar(5.0));
  EXPECT_EQ(m.block(2, 2, 1, 1)(0, 0), cplx(5.0));
}

TEST(Lu, SolvesAndReportsCondition) {
  Rng rng(2);
  for (std::size_t n : {1u, 3u, 8u}) {
    const auto a = random_gaussian(n, n, rng), b = random_gaussian(n, 2, rng);
    const auto x = solve(a, b);
    EXPECT_LT(max_abs_diff(naive_mul(a, x), b), 1e-11);
    EXPECT_LT(max_abs_diff(naive_mul(a, inverse(a)), ComplexMatrix::identity(n)), 1e-11);
  }
  // Diagonal: rcond in the 1-norm is min/max exactly.
  const double d[] = {4.0, 0.5, 2.0};
  EXPECT_NEAR(rcond(ComplexMatrix::diagonal(std::span<const double>(d))), 0.125, 1e-15);
}

TEST(Lu, SingularThrows) {
  expect_error(ErrorKind::kSingularMatrix, [] { lu_factor(ComplexMatrix{{1.0, 2.0}, {2.0, 4.0}}); });
  const double d[] = {1.0, 1e-16};
  expect_error(ErrorKind::kSingularMatrix,
               [&] { solve(ComplexMatrix::diagonal(std::span<const double>(d)), ComplexMatrix(2, 1)); });
  expect_error(ErrorKind::kDimensionMismatch, [] { solve(ComplexMatrix(2, 3), ComplexMatrix(2, 1)); });
}

TEST(Eig, RecoversPlantedSpectrum) {
  Rng rng(3);
  for (std::size_t n : {1u, 2u, 4u, 7u}) {
    const auto q = haar_unitary(n, rng);
    std::vector<double> lam(n);
    for (std::size_t i = 0; i < n; ++i) lam[i] = -3.0 + 1.1 * double(i) * double(i);
    const auto m = hermitian_part(q * times_adjoint(ComplexMatrix::diagonal(std::span<const double>(lam)), q));
    const auto e = hermitian_eig(m);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(e.values[i], lam[i], 1e-12);
    EXPECT_LT(unitary_residual(e.vectors), 1e-13);
    const auto back = e.vectors * times_adjoint(ComplexMatrix::diagonal(std::span<const double>(e.values)), e.vectors);
    EXPECT_LT(max_abs_diff(back, m), 1e-12);
  }
}

TEST(Eig, RepeatedEigenvaluesAndErrors) {
  const auto e = hermitian_eig(ComplexMatrix::identity(3));
  for (double v : e.values) EXPECT_DOUBLE_EQ(v, 1.0);
  expect_error(ErrorKind::kNotHermitian, [] { hermitian_eig(ComplexMatrix{{1.0, 1.0}, {0.0, 1.0}}); });
  expect_error(ErrorKind::kDimensionMismatch, [] { hermitian_eig(ComplexMatrix(2, 3)); });
  EXPECT_EQ(min_eig_psd(ComplexMatrix(0, 0)), 0.0);
}

TEST(Svd, ReconstructsAndRanks) {
  Rng rng(4);
  const auto a = random_gaussian(5, 3, rng) * random_gaussian(3, 4, rng);  // rank 3
  const Svd f = svd(a);
  ASSERT_EQ(f.s.size(), 4u);
  for (std::size_t i = 1; i < f.s.size(); ++i) EXPECT_GE(f.s[i - 1], f.s[i]);
  EXPECT_EQ(numerical_rank(f), 3u);
  ComplexMatrix us = f.u;
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t i = 0; i < 5; ++i) us(i, j) *= f.s[j];
  EXPECT_LT(max_abs_diff(times_adjoint(us, f.v), a), 1e-12);
  EXPECT_NEAR(op_norm(a), f.s[0], 1e-10 * f.s[0]);
}

TEST(Sqrt, PsdRootAndNegativeInput) {
  Rng rng(5);
  const auto g = random_gaussian(4, 4, rng);
  const auto m = hermitian_part(times_adjoint(g, g));
  const auto r = psd_sqrt(m);
  EXPECT_LT(max_abs_diff(r * r, m), 1e-11);
  EXPECT_LT(hermitian_residual(r), 1e-13);
  expect_error(ErrorKind::kInvariantViolation, [] { psd_sqrt(ComplexMatrix::scalar(-1.0)); });
}

TEST(Orthonormal, ComplementCompletesBasis) {
  Rng rng(6);
  const auto w = orthonormalize_columns(random_gaussian(6, 2, rng));
  EXPECT_LT(isometry_residual(w), 1e-13);
  const auto c = orthonormal_complement(w);
  ASSERT_EQ(c.cols(), 4u);
  EXPECT_LT(unitary_residual(hstack(w, c)), 1e-12);
  expect_error(ErrorKind::kInvariantViolation,
               [] { orthonormalize_columns(ComplexMatrix{{1.0, 2.0}, {1.0, 2.0}}); });
}

TEST(Dispatch, LinalgIndependentOfIsa) {
  // Same answers on both ISAs up to rounding; the scalar ctest run repeats
  // every test here with AGLER_SIMD=scalar.
  const char* env = std::getenv("AGLER_SIMD");
  if (env && std::string(env) == "scalar") EXPECT_EQ(simd::active_isa(), simd::Isa::kScalar);
  Rng rng(7);
  const auto a = random_gaussian(6, 6, rng);
  EXPECT_LT(max_abs_diff(a * inverse(a), ComplexMatrix::identity(6)), 1e-11);
}
