#pragma once

#include <vector>

#include "agler/classes.hpp"
#include "agler/decomp.hpp"
#include "agler/matrix.hpp"
#include "agler/tolerances.hpp"

namespace agler {

/// One sample of a function on the polydisk with Kolmogorov factors of its
/// Agler kernels: value = S(point), factors[k] = H_k(point) (m_k x q).
struct DecompositionSample {
  Point point;
  ComplexMatrix value;
  std::vector<ComplexMatrix> factors;
};

/// Max over sample pairs of
///   |I - S(w)^*S(z) - sum_k (1 - conj(w_k) z_k) H_k(w)^* H_k(z)|.
double schur_gram_residual(const std::vector<DecompositionSample>& samples);
/// Same with F(w)^* + F(z) on the left.
double herglotz_gram_residual(const std::vector<DecompositionSample>& samples);

/// Colligation U with U [P(z)H(z); I] = [H(z); S(z)] at every sample.
/// Unitary for square values; isometric (p > q) or coisometric (p < q)
/// otherwise. Throws GramMismatch, DimensionMismatch.
SchurGRColligation realize_schur_from_samples(
    const std::vector<DecompositionSample>& samples,
    const Tolerances& tol = default_tolerances());

/// Samples of a Herglotz function with factors of F(w)^* + F(z); goes
/// through the Schur picture and back. Throws GramMismatch, SingularMatrix,
/// SingularIminusD.
HerglotzDiskColligation realize_herglotz_from_samples(
    const std::vector<DecompositionSample>& samples,
    const Tolerances& tol = default_tolerances());

/// Max |eval(col, z_i) - value_i| over the samples.
double sample_residual(const SchurGRColligation& col,
                       const std::vector<DecompositionSample>& samples);
double sample_residual(const HerglotzDiskColligation& col,
                       const std::vector<DecompositionSample>& samples);

/// Samples of a known colligation with factors H_k = P_k-block rows of
/// (I - A P(z))^{-1} B.
std::vector<DecompositionSample> samples_from_colligation(
    const SchurGRColligation& col, const std::vector<Point>& points,
    const Tolerances& tol = default_tolerances());
std::vector<DecompositionSample> samples_from_colligation(
    const HerglotzDiskColligation& col, const std::vector<Point>& points,
    const Tolerances& tol = default_tolerances());

}  // namespace agler
