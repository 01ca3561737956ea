#include "agler/error.hpp"

#include <limits>

#include "agler/tolerances.hpp"

namespace agler {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kSingularMatrix: return "SingularMatrix";
    case ErrorKind::kNotHermitian: return "NotHermitian";
    case ErrorKind::kNotDecomposition: return "NotDecomposition";
    case ErrorKind::kOutsideDomain: return "OutsideDomain";
    case ErrorKind::kNotSkewAdjoint: return "NotSkewAdjoint";
    case ErrorKind::kNotUnitary: return "NotUnitary";
    case ErrorKind::kPoleAtOne: return "PoleAtOne";
    case ErrorKind::kPoleAtMinusOne: return "PoleAtMinusOne";
    case ErrorKind::kEigenvalueOne: return "EigenvalueOne";
    case ErrorKind::kSingularIminusD: return "SingularIminusD";
    case ErrorKind::kSingularBlock: return "SingularBlock";
    case ErrorKind::kNotScalar: return "NotScalar";
    case ErrorKind::kGramMismatch: return "GramMismatch";
    case ErrorKind::kDomainMismatch: return "DomainMismatch";
    case ErrorKind::kWrongTupleKind: return "WrongTupleKind";
    case ErrorKind::kDegreeTooSmall: return "DegreeTooSmall";
    case ErrorKind::kNotDissipative: return "NotDissipative";
    case ErrorKind::kInvariantViolation: return "InvariantViolation";
    case ErrorKind::kBadParams: return "BadParams";
    case ErrorKind::kParseError: return "ParseError";
  }
  return "Unknown";
}

bool Tolerances::set(std::string_view name, double value) {
  if (name == "solve") solve = value;
  else if (name == "herm") herm = value;
  else if (name == "psd_slack") psd_slack = value;
  else if (name == "rcond_min") rcond_min = value;
  else if (name == "structure") structure = value;
  else if (name == "split") split = value;
  else if (name == "gram") gram = value;
  else if (name == "rank_rel") rank_rel = value;
  else return false;
  return true;
}

double Tolerances::get(std::string_view name) const {
  if (name == "solve") return solve;
  if (name == "herm") return herm;
  if (name == "psd_slack") return psd_slack;
  if (name == "rcond_min") return rcond_min;
  if (name == "structure") return structure;
  if (name == "split") return split;
  if (name == "gram") return gram;
  if (name == "rank_rel") return rank_rel;
  return std::numeric_limits<double>::quiet_NaN();
}

std::vector<std::string> Tolerances::names() {
  return {"solve", "herm", "psd_slack", "rcond_min",
          "structure", "split", "gram", "rank_rel"};
}

}  // namespace agler
