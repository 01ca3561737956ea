#pragma once

// Seeded generators for every object type, plus quasi-random point grids.
// All generators are deterministic for a fixed seed on a given platform.

#include <cstdint>
#include <random>
#include <vector>

#include "agler/classes.hpp"
#include "agler/decomp.hpp"
#include "agler/matrix.hpp"

namespace agler {

using Rng = std::mt19937_64;

ComplexMatrix random_gaussian(std::size_t rows, std::size_t cols, Rng& rng);
ComplexMatrix haar_unitary(std::size_t n, Rng& rng);
ComplexMatrix random_hermitian(std::size_t n, Rng& rng);
ComplexMatrix random_skew(std::size_t n, Rng& rng);

/// State-block sizes for n state dimensions over d variables, as even as
/// possible with the larger blocks first.
std::vector<std::size_t> split_sizes(std::size_t n, std::size_t d);

DecompositionOfIdentity random_positive_decomposition(std::size_t d,
                                                      std::size_t dim,
                                                      Rng& rng);

/// Haar-random unitary colligation on C^n + C^q over block projections.
SchurGRColligation random_unitary_colligation(std::size_t d, std::size_t n,
                                              std::size_t q, Rng& rng);

/// A Haar unitary, C Gaussian, B = AC^*, D = CC^*/2 + random skew.
HerglotzDiskColligation random_herglotz_colligation(std::size_t d,
                                                    std::size_t n,
                                                    std::size_t q, Rng& rng);

HerglotzRepresentation random_herglotz_rep(std::size_t d, std::size_t n,
                                           std::size_t q, Rng& rng);

/// A skew, B Gaussian, C = B^*, D skew, over a random positive decomposition.
PiNode random_impedance_node(std::size_t d, std::size_t n, std::size_t q,
                             Rng& rng);

/// Uniform-area random point of the polydisk with |z_k| <= radius.
Point random_polydisk_point(std::size_t d, double radius, Rng& rng);
/// Random point with Re w_k in [re_lo, re_hi], Im w_k in [-im_abs, im_abs].
Point random_halfplane_point(std::size_t d, Rng& rng, double re_lo = 0.1,
                             double re_hi = 10.0, double im_abs = 10.0);

/// Halton points over the polydisk of the given radius; `seed` shifts the
/// starting index so different seeds give disjoint segments.
std::vector<Point> halton_polydisk(std::size_t count, std::size_t d,
                                   double radius, std::uint64_t seed);
/// Halton points over the box Re in [0.1, 10], Im in [-10, 10].
std::vector<Point> halton_halfplane(std::size_t count, std::size_t d,
                                    std::uint64_t seed);

}  // namespace agler
