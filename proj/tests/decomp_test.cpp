#include <gtest/gtest.h>

#include <cmath>

#include "agler/decomp.hpp"
#include "agler/linalg.hpp"
#include "agler/random.hpp"
#include "test_util.hpp"

using namespace agler;

TEST(Decomposition, SingleIdentityIsSpectral) {
  const auto dec = make_decomposition({ComplexMatrix::identity(3)}, DecompositionKind::kSpectral);
  EXPECT_EQ(dec.d(), 1u);
  EXPECT_EQ(dec.dim(), 3u);
  EXPECT_TRUE(dec.is_spectral());
}

TEST(Decomposition, HalvesArePositiveNotSpectral) {
  const auto half = ComplexMatrix::scalar(0.5);
  const auto dec = make_decomposition({half, half}, DecompositionKind::kPositive);
  EXPECT_FALSE(dec.is_spectral());
  expect_error(ErrorKind::kNotDecomposition,
               [&] { make_decomposition({half, half}, DecompositionKind::kSpectral); });
}

TEST(Decomposition, DiagonalProjections) {
  const auto dec = make_decomposition({ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}},
                                       ComplexMatrix{{0.0, 0.0}, {0.0, 1.0}}},
                                      DecompositionKind::kSpectral);
  EXPECT_TRUE(dec.is_spectral());
}

TEST(Decomposition, RejectsBrokenParts) {
  const auto i2 = ComplexMatrix::identity(2);
  // sum != I
  expect_error(ErrorKind::kNotDecomposition,
               [&] { make_decomposition({i2, i2}, DecompositionKind::kPositive); });
  // not Hermitian
  expect_error(ErrorKind::kNotDecomposition, [] {
    make_decomposition({ComplexMatrix{{0.5, 0.1}, {0.0, 0.5}}, ComplexMatrix{{0.5, -0.1}, {0.0, 0.5}}},
                       DecompositionKind::kPositive);
  });
  // not PSD, although the sum is I
  expect_error(ErrorKind::kNotDecomposition, [] {
    make_decomposition({ComplexMatrix::scalar(-0.5), ComplexMatrix::scalar(1.5)},
                       DecompositionKind::kPositive);
  });
  // shapes
  expect_error(ErrorKind::kNotDecomposition, [&] {
    make_decomposition({i2, ComplexMatrix::identity(3)}, DecompositionKind::kPositive);
  });
  expect_error(ErrorKind::kNotDecomposition,
               [] { make_decomposition({}, DecompositionKind::kPositive); });
}

TEST(Decomposition, ErrorNamesTheViolation) {
  try {
    make_decomposition({ComplexMatrix::scalar(0.5), ComplexMatrix::scalar(0.5)},
                       DecompositionKind::kSpectral);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("part 1"), std::string::npos) << e.what();
  }
}

TEST(Pencil, KnownValues) {
  const std::size_t sizes[] = {1, 1};
  const auto dec = block_decomposition(sizes);
  const cplx zero[] = {0.0, 0.0}, ones[] = {1.0, 1.0}, w[] = {2.0, cplx(0.0, 3.0)};
  EXPECT_EQ(pencil_at(dec, zero).max_abs(), 0.0);
  EXPECT_EQ(max_abs_diff(pencil_at(dec, ones), ComplexMatrix::identity(2)), 0.0);
  const auto y = pencil_at(dec, w);
  EXPECT_EQ(y(0, 0), cplx(2.0));
  EXPECT_EQ(y(1, 1), cplx(0.0, 3.0));
  EXPECT_EQ(y(0, 1), cplx(0.0));
  expect_error(ErrorKind::kDimensionMismatch, [&] { pencil_at(dec, std::span<const cplx>(w, 1)); });
}

TEST(Naimark, ScalarHalves) {
  const auto half = ComplexMatrix::scalar(0.5);
  const auto nd = naimark_dilate(make_decomposition({half, half}, DecompositionKind::kPositive));
  ASSERT_EQ(nd.iota.rows(), 2u);
  EXPECT_NEAR(nd.iota(0, 0).real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(nd.iota(1, 0).real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(adjoint_times(nd.iota, nd.spectral.part(0) * nd.iota)(0, 0).real(), 0.5, 1e-15);
  EXPECT_TRUE(nd.spectral.is_spectral());
}

TEST(Naimark, RandomPositiveDecompositions) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    const auto dec = random_positive_decomposition(3, 4, rng);
    const auto nd = naimark_dilate(dec);
    EXPECT_LT(isometry_residual(nd.iota), 1e-10);
    for (std::size_t k = 0; k < 3; ++k) {
      // Oracle: multiply out by hand.
      const auto back = adjoint_times(nd.iota, nd.spectral.part(k) * nd.iota);
      EXPECT_LT(max_abs_diff(back, dec.part(k)), 1e-10);
    }
  }
}

TEST(Naimark, SpectralInputRecovered) {
  const std::size_t sizes[] = {2, 1};
  const auto dec = block_decomposition(sizes);
  const auto nd = naimark_dilate(dec);
  for (std::size_t k = 0; k < 2; ++k)
    EXPECT_LT(max_abs_diff(adjoint_times(nd.iota, nd.spectral.part(k) * nd.iota), dec.part(k)), 1e-14);
}

TEST(Padding, ExtraDimensionsGoToFirstPart) {
  const auto half = ComplexMatrix::scalar(0.5);
  const auto p = make_decomposition({half, half}, DecompositionKind::kPositive).padded(2);
  EXPECT_EQ(p.dim(), 3u);
  EXPECT_EQ(p.part(0)(1, 1), cplx(1.0));
  EXPECT_EQ(p.part(1)(2, 2), cplx(0.0));
  EXPECT_EQ(p.part(0)(0, 0), cplx(0.5));
}
