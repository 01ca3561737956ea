#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace agler {

struct Residual {
  std::string label;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;  // value <= threshold (NaN fails)
};

struct VerificationReport {
  std::string name;
  std::vector<Residual> residuals;
  std::uint64_t seed = 0;
  std::string notes;

  void add(std::string label, double value, double threshold) {
    residuals.push_back({std::move(label), value, threshold, value <= threshold});
  }

  bool all_pass() const {
    for (const auto& r : residuals)
      if (!r.pass) return false;
    return true;
  }

  void append(const VerificationReport& other) {
    residuals.insert(residuals.end(), other.residuals.begin(),
                     other.residuals.end());
    if (!other.notes.empty()) {
      if (!notes.empty()) notes += "; ";
      notes += other.notes;
    }
  }
};

}  // namespace agler
