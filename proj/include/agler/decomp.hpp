#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "agler/matrix.hpp"
#include "agler/tolerances.hpp"

namespace agler {

/// A point of C^d (polydisk or right polyhalfplane, depending on context).
using Point = std::vector<cplx>;

enum class DecompositionKind { kPositive, kSpectral };

/// d-tuple (Y_1, ..., Y_d) of Hermitian contractions 0 <= Y_k <= I with
/// sum I. The spectral kind additionally has Y_k^2 = Y_k. Only constructible
/// through make_decomposition, so every instance satisfies its invariants.
class DecompositionOfIdentity {
 public:
  std::size_t d() const { return parts_.size(); }
  std::size_t dim() const { return dim_; }
  DecompositionKind kind() const { return kind_; }
  bool is_spectral() const { return kind_ == DecompositionKind::kSpectral; }
  const std::vector<ComplexMatrix>& parts() const { return parts_; }
  const ComplexMatrix& part(std::size_t k) const { return parts_.at(k); }

  /// Same parts, relabelled as a positive decomposition.
  DecompositionOfIdentity as_positive() const;

  /// Extends the space by `extra` dimensions, all assigned to the first part.
  DecompositionOfIdentity padded(std::size_t extra) const;

 private:
  friend DecompositionOfIdentity make_decomposition(std::vector<ComplexMatrix>,
                                                    DecompositionKind,
                                                    const Tolerances&);
  DecompositionOfIdentity(std::vector<ComplexMatrix> parts, std::size_t dim,
                          DecompositionKind kind)
      : parts_(std::move(parts)), dim_(dim), kind_(kind) {}

  std::vector<ComplexMatrix> parts_;
  std::size_t dim_ = 0;
  DecompositionKind kind_ = DecompositionKind::kPositive;
};

/// Validates and wraps `parts`. Throws NotDecomposition naming the first
/// violated invariant.
DecompositionOfIdentity make_decomposition(
    std::vector<ComplexMatrix> parts, DecompositionKind kind,
    const Tolerances& tol = default_tolerances());

/// Spectral decomposition of C^{sum sizes} into coordinate blocks.
DecompositionOfIdentity block_decomposition(std::span<const std::size_t> sizes);

/// Y(w) = sum_k w_k Y_k. Throws DimensionMismatch when w.size() != d.
ComplexMatrix pencil_at(const DecompositionOfIdentity& dec,
                        std::span<const cplx> w);

struct NaimarkDilation {
  DecompositionOfIdentity spectral;  // block projections on C^{d * dim}
  ComplexMatrix iota;                // (d * dim) x dim isometry
};

/// iota = [Q_1; ...; Q_d] with Q_k the PSD square root of Y_k, so that
/// iota^* P_k iota = Y_k.
NaimarkDilation naimark_dilate(const DecompositionOfIdentity& dec,
                               const Tolerances& tol = default_tolerances());

}  // namespace agler
