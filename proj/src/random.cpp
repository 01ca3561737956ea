#include "agler/random.hpp"

#include <cmath>
#include <numbers>

#include "agler/error.hpp"
#include "agler/linalg.hpp"

namespace agler {

ComplexMatrix random_gaussian(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = cplx(re, im) / std::numbers::sqrt2;
    }
  return m;
}

ComplexMatrix haar_unitary(std::size_t n, Rng& rng) {
  // Gram-Schmidt on a Gaussian matrix gives R with positive diagonal, which
  // makes the Q factor Haar distributed.
  return orthonormalize_columns(random_gaussian(n, n, rng));
}

ComplexMatrix random_hermitian(std::size_t n, Rng& rng) {
  return hermitian_part(random_gaussian(n, n, rng));
}

ComplexMatrix random_skew(std::size_t n, Rng& rng) {
  return skew_part(random_gaussian(n, n, rng));
}

std::vector<std::size_t> split_sizes(std::size_t n, std::size_t d) {
  std::vector<std::size_t> sizes(d, n / d);
  for (std::size_t k = 0; k < n % d; ++k) ++sizes[k];
  return sizes;
}

DecompositionOfIdentity random_positive_decomposition(std::size_t d,
                                                      std::size_t dim,
                                                      Rng& rng) {
  std::vector<ComplexMatrix> grams;
  ComplexMatrix sum(dim, dim);
  for (std::size_t k = 0; k < d; ++k) {
    const ComplexMatrix g = random_gaussian(dim, dim, rng);
    grams.push_back(hermitian_part(times_adjoint(g, g)));
    sum += grams.back();
  }
  // Y_k = S^{-1/2} G_k S^{-1/2} with S = sum G_k.
  const HermitianEig e = hermitian_eig(sum);
  ComplexMatrix scaled = e.vectors;
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t i = 0; i < dim; ++i) scaled(i, j) /= std::sqrt(e.values[j]);
  const ComplexMatrix inv_root = times_adjoint(scaled, e.vectors);
  std::vector<ComplexMatrix> parts;
  for (const auto& g : grams) {
    parts.push_back(hermitian_part(inv_root * g * inv_root));
  }
  return make_decomposition(std::move(parts), DecompositionKind::kPositive);
}

SchurGRColligation random_unitary_colligation(std::size_t d, std::size_t n,
                                              std::size_t q, Rng& rng) {
  const ComplexMatrix u = haar_unitary(n + q, rng);
  const auto sizes = split_sizes(n, d);
  return make_schur_gr(u.block(0, 0, n, n), u.block(0, n, n, q),
                       u.block(n, 0, q, n), u.block(n, n, q, q),
                       block_decomposition(sizes), Metric::kUnitary);
}

HerglotzDiskColligation random_herglotz_colligation(std::size_t d,
                                                    std::size_t n,
                                                    std::size_t q, Rng& rng) {
  ComplexMatrix a = haar_unitary(n, rng);
  ComplexMatrix c = random_gaussian(q, n, rng);
  ComplexMatrix b = times_adjoint(a, c);
  ComplexMatrix d_blk =
      0.5 * hermitian_part(times_adjoint(c, c)) + random_skew(q, rng);
  const auto sizes = split_sizes(n, d);
  return make_herglotz_colligation(std::move(a), std::move(b), std::move(c),
                                   std::move(d_blk), block_decomposition(sizes));
}

HerglotzRepresentation random_herglotz_rep(std::size_t d, std::size_t n,
                                           std::size_t q, Rng& rng) {
  ComplexMatrix u = haar_unitary(n, rng);
  ComplexMatrix v = random_gaussian(n, q, rng);
  ComplexMatrix r = random_skew(q, rng);
  const auto sizes = split_sizes(n, d);
  return make_herglotz_rep(std::move(r), std::move(u), std::move(v),
                           block_decomposition(sizes));
}

PiNode random_impedance_node(std::size_t d, std::size_t n, std::size_t q,
                             Rng& rng) {
  ComplexMatrix a = random_skew(n, rng);
  ComplexMatrix b = random_gaussian(n, q, rng);
  ComplexMatrix c = b.adjoint();
  ComplexMatrix d_blk = random_skew(q, rng);
  return make_pi_node(std::move(a), std::move(b), std::move(c),
                      std::move(d_blk), random_positive_decomposition(d, n, rng),
                      PiFlavor::kImpedance);
}

Point random_polydisk_point(std::size_t d, double radius, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Point z(d);
  for (auto& zk : z) {
    const double r = radius * std::sqrt(unit(rng));
    const double theta = 2.0 * std::numbers::pi * unit(rng);
    zk = std::polar(r, theta);
  }
  return z;
}

Point random_halfplane_point(std::size_t d, Rng& rng, double re_lo,
                             double re_hi, double im_abs) {
  std::uniform_real_distribution<double> re(re_lo, re_hi);
  std::uniform_real_distribution<double> im(-im_abs, im_abs);
  Point w(d);
  for (auto& wk : w) {
    const double x = re(rng);
    wk = cplx(x, im(rng));
  }
  return w;
}

namespace {

constexpr unsigned kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31,
                                37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79};

double radical_inverse(std::uint64_t index, unsigned base) {
  double result = 0.0, f = 1.0 / base;
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f /= base;
  }
  return result;
}

void require_halton_dims(std::size_t d) {
  if (2 * d > std::size(kPrimes)) {
    throw Error(ErrorKind::kBadParams, "Halton grid supports d <= 11");
  }
}

}  // namespace

std::vector<Point> halton_polydisk(std::size_t count, std::size_t d,
                                   double radius, std::uint64_t seed) {
  require_halton_dims(d);
  std::vector<Point> out;
  out.reserve(count);
  const std::uint64_t start = 1 + seed * 7919;
  for (std::size_t i = 0; i < count; ++i) {
    Point z(d);
    for (std::size_t k = 0; k < d; ++k) {
      const double r = radius * std::sqrt(radical_inverse(start + i, kPrimes[2 * k]));
      const double theta =
          2.0 * std::numbers::pi * radical_inverse(start + i, kPrimes[2 * k + 1]);
      z[k] = std::polar(r, theta);
    }
    out.push_back(std::move(z));
  }
  return out;
}

std::vector<Point> halton_halfplane(std::size_t count, std::size_t d,
                                    std::uint64_t seed) {
  require_halton_dims(d);
  std::vector<Point> out;
  out.reserve(count);
  const std::uint64_t start = 1 + seed * 7919;
  for (std::size_t i = 0; i < count; ++i) {
    Point w(d);
    for (std::size_t k = 0; k < d; ++k) {
      const double re = 0.1 + 9.9 * radical_inverse(start + i, kPrimes[2 * k]);
      const double im = -10.0 + 20.0 * radical_inverse(start + i, kPrimes[2 * k + 1]);
      w[k] = cplx(re, im);
    }
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace agler
