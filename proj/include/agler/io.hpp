#pragma once

// JSON envelope shared by every object type:
//   {"type": ..., "d": ..., "dims": {...}, "blocks": {...},
//    "meta": {"seed": ..., "tolerances": {...}}}
// Matrices are {"rows", "cols", "data": [[re, im], ...]} in row-major order.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "agler/bessmertnyi.hpp"
#include "agler/classes.hpp"
#include "agler/lurking.hpp"
#include "agler/report.hpp"
#include "agler/tolerances.hpp"
#include "agler/verify.hpp"

namespace agler {

using json = nlohmann::json;

struct SampleSet {
  std::vector<DecompositionSample> samples;
  bool herglotz = false;  // values are F rather than S
};

struct PointSet {
  std::size_t d = 0;
  std::vector<Point> points;
};

using AnyObject =
    std::variant<SchurGRColligation, HerglotzDiskColligation, HerglotzRepresentation,
                 PiNode, BessmertnyiPencil, CommutingTuple, SampleSet, PointSet,
                 NevanlinnaData>;

struct Meta {
  std::uint64_t seed = 0;
  Tolerances tolerances;
};

// Everything below throws ParseError on malformed input.
json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);
json point_to_json(const Point& p);
Point point_from_json(const json& j);

std::string type_name(const AnyObject& obj);

json to_json(const AnyObject& obj, const Meta& meta = {});
/// Construction validators run in `mode`; shape problems always throw.
AnyObject from_json(const json& j, Validation mode = Validation::kStrict,
                    const Tolerances& tol = default_tolerances());
Meta meta_from_json(const json& j);

json report_to_json(const VerificationReport& rep);

/// Canonical text: two-space indent, sorted keys, trailing newline.
std::string dump(const json& j);
json parse_text(const std::string& text);
json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace agler
