#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace agler {

/// Every numerical threshold used by the library. Functions take a
/// `const Tolerances&` defaulting to `default_tolerances()`; nothing reads a
/// global mutable value.
struct Tolerances {
  double solve = 1e-10;       // residual target for linear solves
  double herm = 1e-10;        // allowed |M - M^*| for Hermitian inputs
  double psd_slack = 1e-9;    // min eig >= -psd_slack counts as PSD
  double rcond_min = 1e-14;   // below this a matrix is singular
  double structure = 1e-10;   // unitary / skew / projection / sum checks
  double split = 1e-8;        // |lambda - 1| <= split -> eigenvalue one
  double gram = 1e-8;         // Gram identity mismatch in lurking samples
  double rank_rel = 1e-10;    // sigma > rank_rel * sigma_max counts in rank

  /// Sets one field by name ("psd_slack", "split", ...). Returns false for
  /// an unknown name.
  bool set(std::string_view name, double value);
  double get(std::string_view name) const;  // NaN for an unknown name

  static std::vector<std::string> names();
};

inline const Tolerances& default_tolerances() {
  static const Tolerances kDefaults{};
  return kDefaults;
}

}  // namespace agler
