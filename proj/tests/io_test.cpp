#include <gtest/gtest.h>

#include "agler/io.hpp"
#include "agler/random.hpp"
#include "test_util.hpp"

using namespace agler;

namespace {

std::string round_trip(const AnyObject& obj, const Meta& meta = {}) {
  const std::string text = dump(to_json(obj, meta));
  const json parsed = parse_text(text);
  const std::string again = dump(to_json(from_json(parsed), meta_from_json(parsed)));
  EXPECT_EQ(text, again);
  return text;
}

}  // namespace

TEST(Io, MatrixJson) {
  const ComplexMatrix m{{cplx(1.0, -2.0), 0.5}, {0.0, cplx(0.0, 3.0)}};
  const json j = matrix_to_json(m);
  EXPECT_EQ(j["rows"], 2);
  EXPECT_EQ(j["data"][0][1], -2.0);
  EXPECT_EQ(max_abs_diff(matrix_from_json(j), m), 0.0);
  const ComplexMatrix empty(0, 3);
  EXPECT_EQ(matrix_from_json(matrix_to_json(empty)).cols(), 3u);
}

TEST(Io, RoundTripEveryType) {
  Rng rng(11);
  Meta meta;
  meta.seed = 11;
  meta.tolerances.gram = 1e-7;
  round_trip(random_unitary_colligation(2, 4, 2, rng), meta);
  round_trip(random_herglotz_colligation(2, 3, 1, rng));
  round_trip(random_herglotz_rep(3, 4, 2, rng));
  round_trip(random_impedance_node(2, 3, 2, rng));
  round_trip(make_pencil(1, ComplexMatrix{{0.0, 1.0}, {-1.0, 0.0}},
                         {ComplexMatrix{{0.0, 0.0}, {0.0, 1.0}}}));
  round_trip(random_commuting_tuple(2, 3, TupleKind::kStrictContraction, 0.2, 7));
  round_trip(PointSet{2, {{0.1, cplx(0.0, 0.2)}, {-0.3, 0.4}}});
  SampleSet s;
  s.samples.push_back({{0.5}, ComplexMatrix::scalar(0.5), {ComplexMatrix::scalar(1.0)}});
  round_trip(s);
  NevanlinnaData nv;
  nv.alpha = 1.5;
  nv.r = cplx(0.0, 0.25);
  nv.atoms.push_back({cplx(0.0, -1.0), 2.0});
  round_trip(nv);
}

TEST(Io, MetaTolerancesSurvive) {
  Rng rng(1);
  Meta meta;
  meta.seed = 99;
  meta.tolerances.split = 3e-9;
  const json j = parse_text(dump(to_json(random_unitary_colligation(1, 2, 1, rng), meta)));
  const Meta back = meta_from_json(j);
  EXPECT_EQ(back.seed, 99u);
  EXPECT_EQ(back.tolerances.split, 3e-9);
}

TEST(Io, ValuesSurviveRoundTrip) {
  Rng rng(3);
  const auto col = random_unitary_colligation(2, 4, 2, rng);
  const auto back = std::get<SchurGRColligation>(from_json(parse_text(dump(to_json(col)))));
  const cplx z[] = {0.3, cplx(-0.1, 0.5)};
  EXPECT_EQ(max_abs_diff(eval_schur_disk(col, z), eval_schur_disk(back, z)), 0.0);
}

TEST(Io, ParseErrors) {
  expect_error(ErrorKind::kParseError, [] { parse_text("{not json"); });
  expect_error(ErrorKind::kParseError, [] { from_json(json::parse(R"({"type":"nope"})")); });
  expect_error(ErrorKind::kParseError, [] { from_json(json::parse("[1,2]")); });
  expect_error(ErrorKind::kParseError, [] {
    matrix_from_json(json::parse(R"({"rows":2,"cols":1,"data":[[1,0]]})"));
  });
  expect_error(ErrorKind::kParseError, [] {
    matrix_from_json(json::parse(R"({"rows":1,"cols":1,"data":[[1]]})"));
  });
  expect_error(ErrorKind::kParseError, [] {
    matrix_from_json(json::parse(R"({"rows":1,"cols":1,"data":[["a",0]]})"));
  });
  expect_error(ErrorKind::kParseError, [] { read_json_file("/nonexistent/agler.json"); });
}

TEST(Io, MissingBlockIsParseError) {
  Rng rng(2);
  json j = to_json(random_unitary_colligation(1, 2, 1, rng));
  j["blocks"].erase("A");
  expect_error(ErrorKind::kParseError, [&] { from_json(j); });
}

TEST(Io, ValidationModes) {
  Rng rng(5);
  json j = to_json(random_unitary_colligation(1, 2, 1, rng));
  j["blocks"]["D"]["data"][0][0] = 5.0;
  expect_error(ErrorKind::kInvariantViolation, [&] { from_json(j); });
  EXPECT_NO_THROW(from_json(j, Validation::kLenient));
}

TEST(Io, ReportJson) {
  VerificationReport rep;
  rep.name = "x";
  rep.add("a", 1e-12, 1e-9);
  rep.add("b", 1.0, 1e-9);
  const json j = report_to_json(rep);
  EXPECT_EQ(j["type"], "report");
  EXPECT_FALSE(j["pass"].get<bool>());
  EXPECT_TRUE(j["residuals"][0]["pass"].get<bool>());
}
