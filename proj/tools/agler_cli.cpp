// agler: generate, evaluate, convert, verify and realize Agler-class objects.
// Exit codes: 0 pass, 1 verification failure, 2 parse or precondition error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "agler/bessmertnyi.hpp"
#include "agler/error.hpp"
#include "agler/io.hpp"
#include "agler/lurking.hpp"
#include "agler/random.hpp"
#include "agler/transforms.hpp"
#include "agler/verify.hpp"

using namespace agler;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitError = 2;

struct Options {
  std::vector<std::string> tol_overrides;
  std::uint64_t seed = 0;
  std::size_t points = 20;
  std::string out;

  // gen
  std::string kind, preset, domain = "disk", tuple_kind = "strict_contraction";
  std::size_t d = 1, n = 2, q = 1, m = 3;
  double margin = 0.2;

  // eval / convert / verify / realize
  std::string object_path, points_path, target, suite = "all";
};

Tolerances parse_tolerances(const std::vector<std::string>& items) {
  Tolerances tol;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::kBadParams, "--tol expects name=value, got '" + item + "'");
    }
    double value = 0.0;
    try {
      value = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw Error(ErrorKind::kBadParams, "bad tolerance value in '" + item + "'");
    }
    if (!tol.set(item.substr(0, eq), value)) {
      throw Error(ErrorKind::kBadParams, "unknown tolerance '" + item.substr(0, eq) + "'");
    }
  }
  return tol;
}

void emit(const Options& opt, const json& j, const std::string& summary) {
  if (opt.out.empty()) {
    std::cout << dump(j);
  } else {
    write_text_file(opt.out, dump(j));
    std::cout << summary << "\n";
  }
}

// ---- gen -------------------------------------------------------------------

AnyObject preset_object(const std::string& name, const Tolerances& tol) {
  const std::size_t one[] = {1};
  if (name == "shift") {
    return make_schur_gr(ComplexMatrix::scalar(0.0), ComplexMatrix::scalar(1.0),
                         ComplexMatrix::scalar(1.0), ComplexMatrix::scalar(0.0),
                         block_decomposition(one), Metric::kUnitary,
                         Validation::kStrict, tol);
  }
  if (name == "one-over-w") {
    return make_pencil(1, ComplexMatrix{{0.0, 1.0}, {-1.0, 0.0}},
                       {ComplexMatrix{{0.0, 0.0}, {0.0, 1.0}}}, Validation::kStrict, tol);
  }
  if (name == "cayley-minus-one") {
    return make_herglotz_rep(ComplexMatrix::scalar(0.0), ComplexMatrix::scalar(-1.0),
                             ComplexMatrix::scalar(1.0), block_decomposition(one),
                             Validation::kStrict, tol);
  }
  if (name == "shift-samples") {
    const AnyObject shift = preset_object("shift", tol);
    std::vector<Point> pts = {{0.1}, {0.3}, {-0.4}};
    return SampleSet{samples_from_colligation(std::get<SchurGRColligation>(shift), pts, tol),
                     false};
  }
  throw Error(ErrorKind::kBadParams, "unknown preset '" + name + "'");
}

AnyObject generate(const Options& o, const Tolerances& tol) {
  if (!o.preset.empty()) return preset_object(o.preset, tol);
  if (o.d == 0 || o.d > 11 || o.q == 0) {
    throw Error(ErrorKind::kBadParams, "need 1 <= d <= 11 and q >= 1");
  }
  Rng rng(o.seed);
  if (o.kind == "tuple") {
    const TupleKind k = o.tuple_kind == "strictly_accretive" ? TupleKind::kStrictlyAccretive
                                                             : TupleKind::kStrictContraction;
    if (o.tuple_kind != "strictly_accretive" && o.tuple_kind != "strict_contraction") {
      throw Error(ErrorKind::kBadParams, "tuple kind is strict_contraction|strictly_accretive");
    }
    return random_commuting_tuple(o.d, o.m, k, o.margin, o.seed);
  }
  if (o.kind == "points") {
    if (o.domain != "disk" && o.domain != "halfplane") {
      throw Error(ErrorKind::kBadParams, "domain is disk|halfplane");
    }
    return PointSet{o.d, o.domain == "disk" ? halton_polydisk(o.points, o.d, 0.9, o.seed)
                                            : halton_halfplane(o.points, o.d, o.seed)};
  }
  if (o.n < o.d) throw Error(ErrorKind::kBadParams, "need n >= d");
  if (o.kind == "schur_gr") return random_unitary_colligation(o.d, o.n, o.q, rng);
  if (o.kind == "herglotz_colligation") return random_herglotz_colligation(o.d, o.n, o.q, rng);
  if (o.kind == "herglotz_rep") return random_herglotz_rep(o.d, o.n, o.q, rng);
  if (o.kind == "pi_impedance") return random_impedance_node(o.d, o.n, o.q, rng);
  if (o.kind == "pencil") {
    return build_pencil_from_herglotz_rep(random_herglotz_rep(o.d, o.n, o.q, rng), tol);
  }
  if (o.kind == "samples") {
    const auto col = random_unitary_colligation(o.d, o.n, o.q, rng);
    return SampleSet{samples_from_colligation(col, halton_polydisk(o.points, o.d, 0.9, o.seed),
                                              tol),
                     false};
  }
  throw Error(ErrorKind::kBadParams, "unknown kind '" + o.kind + "'");
}

int cmd_gen(const Options& o, const Tolerances& tol) {
  const AnyObject obj = generate(o, tol);
  const json j = to_json(obj, Meta{o.seed, tol});
  emit(o, j, "wrote " + j["type"].get<std::string>() + " to " + o.out);
  return kExitPass;
}

// ---- eval ------------------------------------------------------------------

std::vector<Point> load_points(const std::string& path) {
  const json j = read_json_file(path);
  if (j.is_array()) {
    std::vector<Point> pts;
    for (const auto& p : j) pts.push_back(point_from_json(p));
    return pts;
  }
  const AnyObject obj = from_json(j);
  if (!std::holds_alternative<PointSet>(obj)) {
    throw Error(ErrorKind::kParseError, "points file must hold a points object");
  }
  return std::get<PointSet>(obj).points;
}

ComplexMatrix evaluate(const AnyObject& obj, const Point& p, const Tolerances& tol) {
  if (auto* c = std::get_if<SchurGRColligation>(&obj)) return eval_schur_disk(*c, p, tol);
  if (auto* c = std::get_if<HerglotzDiskColligation>(&obj)) return eval_herglotz_disk(*c, p, tol);
  if (auto* r = std::get_if<HerglotzRepresentation>(&obj)) return eval_herglotz_rep(*r, p, tol);
  if (auto* n = std::get_if<PiNode>(&obj)) return eval_pi_node(*n, p, tol);
  if (auto* pen = std::get_if<BessmertnyiPencil>(&obj)) return pencil_transfer(*pen, p, tol);
  if (auto* nev = std::get_if<NevanlinnaData>(&obj)) {
    if (p.size() != 1) throw Error(ErrorKind::kDimensionMismatch, "Nevanlinna data has d = 1");
    require_in_halfplane(p, 1);
    return ComplexMatrix::scalar(nev->evaluate(p[0]));
  }
  throw Error(ErrorKind::kBadParams, "object type cannot be evaluated");
}

int cmd_eval(const Options& o, const Tolerances& tol) {
  const AnyObject obj = from_json(read_json_file(o.object_path), Validation::kStrict, tol);
  json values = json::array();
  for (const auto& p : load_points(o.points_path)) values.push_back(matrix_to_json(evaluate(obj, p, tol)));
  emit(o, values, "wrote " + std::to_string(values.size()) + " values to " + o.out);
  return kExitPass;
}

// ---- convert ---------------------------------------------------------------

constexpr double kConsistency = 1e-9;

double pencil_vs_rep(const BessmertnyiPencil& pen, const HerglotzRepresentation& rep,
                     std::uint64_t seed, const Tolerances& tol) {
  double worst = 0.0;
  for (const auto& w : halton_halfplane(20, pen.d(), seed)) {
    const ComplexMatrix f = pencil_transfer(pen, w, tol);
    worst = std::max(worst, max_abs_diff(f, eval_herglotz_rep(rep, cayley_point_h2d(w), tol)) /
                                (1.0 + f.max_abs()));
  }
  return worst;
}

HerglotzRepresentation as_rep(const AnyObject& obj, const Tolerances& tol) {
  if (auto* r = std::get_if<HerglotzRepresentation>(&obj)) return *r;
  if (auto* c = std::get_if<SchurGRColligation>(&obj)) {
    return schur_gr_to_herglotz_rep(*c, VNormalization::kDerived, tol);
  }
  if (auto* h = std::get_if<HerglotzDiskColligation>(&obj)) return herglotz_colligation_to_rep(*h, tol);
  throw Error(ErrorKind::kBadParams, "no Herglotz representation for this object type");
}

int cmd_convert(const Options& o, const Tolerances& tol) {
  const json src = read_json_file(o.object_path);
  const Meta meta = meta_from_json(src);
  const AnyObject obj = from_json(src, Validation::kStrict, tol);
  VerificationReport rep;
  rep.name = "convert:" + o.target;
  rep.seed = o.seed;
  std::optional<AnyObject> out;

  if (o.target == "herglotz_rep") {
    HerglotzRepresentation r = as_rep(obj, tol);
    if (auto* c = std::get_if<SchurGRColligation>(&obj)) {
      rep.add("value_error", herglotz_rep_conversion_error(*c, r, 20, o.seed), kConsistency);
    }
    out = std::move(r);
  } else if (o.target == "pi_impedance") {
    auto* c = std::get_if<SchurGRColligation>(&obj);
    if (!c) throw Error(ErrorKind::kBadParams, "pi_impedance needs a schur_gr source");
    PiNode node = gr_to_pi_impedance(*c, tol);
    rep.add("value_error", pi_impedance_conversion_error(*c, node, 20, o.seed), kConsistency);
    out = std::move(node);
  } else if (o.target == "pencil") {
    const HerglotzRepresentation r = as_rep(obj, tol);
    BessmertnyiPencil pen = build_pencil_from_herglotz_rep(r, tol);
    rep.add("value_error", pencil_vs_rep(pen, r, o.seed, tol), kConsistency);
    out = std::move(pen);
  } else if (o.target == "schur_from_herglotz") {
    HerglotzDiskColligation h = std::holds_alternative<HerglotzDiskColligation>(obj)
                                    ? std::get<HerglotzDiskColligation>(obj)
                                    : herglotz_rep_to_colligation(as_rep(obj, tol), tol);
    SchurGRColligation s = herglotz_colligation_to_schur_gr(h, tol);
    double worst = 0.0;
    for (const auto& z : halton_polydisk(20, h.dec.d(), 0.9, o.seed)) {
      worst = std::max(worst, max_abs_diff(eval_schur_disk(s, z, tol),
                                           cayley_value_F_to_S(eval_herglotz_disk(h, z, tol))));
    }
    rep.add("value_error", worst, kConsistency);
    out = std::move(s);
  } else if (o.target == "nevanlinna") {
    BessmertnyiPencil pen = std::holds_alternative<BessmertnyiPencil>(obj)
                                ? std::get<BessmertnyiPencil>(obj)
                                : build_pencil_from_herglotz_rep(as_rep(obj, tol), tol);
    NevanlinnaData nev = nevanlinna_from_pencil(pen, tol);
    double worst = 0.0;
    for (const auto& w : halton_halfplane(20, 1, o.seed)) {
      const cplx f = pencil_transfer(pen, w, tol)(0, 0);
      worst = std::max(worst, std::abs(nev.evaluate(w[0]) - f) / (1.0 + std::abs(f)));
    }
    rep.add("value_error", worst, kConsistency);
    out = std::move(nev);
  } else {
    throw Error(ErrorKind::kBadParams, "unknown target '" + o.target + "'");
  }

  json j = to_json(*out, Meta{meta.seed, tol});
  j["report"] = report_to_json(rep);
  emit(o, j, std::string(rep.all_pass() ? "PASS" : "FAIL") + " convert -> " + o.target);
  return rep.all_pass() ? kExitPass : kExitFail;
}

// ---- verify ----------------------------------------------------------------

template <typename T>
void warnings_check(VerificationReport& rep, const T& obj) {
  rep.add("load_warnings", double(obj.warnings.size()), 0.0);
  for (const auto& w : obj.warnings) {
    if (!rep.notes.empty()) rep.notes += "; ";
    rep.notes += w;
  }
}

int cmd_verify(const Options& o, const Tolerances& tol) {
  const AnyObject obj = from_json(read_json_file(o.object_path), Validation::kLenient, tol);
  static const std::vector<std::string> kSuites = {"kernels", "tuples", "growth", "resolvent",
                                                   "pencil_class", "all"};
  if (std::find(kSuites.begin(), kSuites.end(), o.suite) == kSuites.end()) {
    throw Error(ErrorKind::kBadParams, "unknown suite '" + o.suite + "'");
  }
  const bool all = o.suite == "all";
  auto want = [&](const char* s) { return all || o.suite == s; };
  const std::size_t pairs = std::max<std::size_t>(o.points, 1);

  VerificationReport rep;
  rep.name = "verify:" + o.suite;
  rep.seed = o.seed;
  bool applicable = false;

  auto disk_suites = [&](const auto& col) {
    if (want("kernels")) { rep.append(verify_kernels(col, o.seed, pairs, tol)); applicable = true; }
    if (want("tuples")) { rep.append(verify_tuples(col, o.seed, 200, tol)); applicable = true; }
  };

  if (auto* c = std::get_if<SchurGRColligation>(&obj)) {
    warnings_check(rep, *c);
    disk_suites(*c);
  } else if (auto* h = std::get_if<HerglotzDiskColligation>(&obj)) {
    warnings_check(rep, *h);
    disk_suites(*h);
  } else if (auto* r = std::get_if<HerglotzRepresentation>(&obj)) {
    warnings_check(rep, *r);
    disk_suites(herglotz_rep_to_colligation(*r, tol));
  } else if (auto* n = std::get_if<PiNode>(&obj)) {
    warnings_check(rep, *n);
    if (want("kernels")) { rep.append(verify_kernels(*n, o.seed, pairs, tol)); applicable = true; }
    if (want("tuples")) { rep.append(verify_tuples(*n, o.seed, 200, tol)); applicable = true; }
    if (want("growth")) { rep.append(verify_growth(*n)); applicable = true; }
    if (want("resolvent")) {
      rep.append(resolvent_bound_check(*n, halton_halfplane(pairs, n->dec.d(), o.seed), tol));
      applicable = true;
    }
  } else if (auto* p = std::get_if<BessmertnyiPencil>(&obj)) {
    warnings_check(rep, *p);
    if (want("kernels")) { rep.append(verify_kernels(*p, o.seed, pairs, tol)); applicable = true; }
    if (want("growth")) { rep.append(verify_growth(*p)); applicable = true; }
    if (want("pencil_class")) {
      rep.append(check_pencil_class(*p, o.seed, std::max<std::size_t>(pairs, 64), tol));
      applicable = true;
    }
  }
  if (!applicable) {
    throw Error(ErrorKind::kBadParams,
                "suite '" + o.suite + "' does not apply to " + type_name(obj));
  }
  emit(o, report_to_json(rep),
       std::string(rep.all_pass() ? "PASS" : "FAIL") + " " + rep.name);
  if (!o.out.empty()) {
    for (const auto& r : rep.residuals) {
      std::cout << "  " << (r.pass ? "ok  " : "FAIL") << " " << r.label << " = " << r.value
                << " (<= " << r.threshold << ")\n";
    }
  }
  return rep.all_pass() ? kExitPass : kExitFail;
}

// ---- realize ---------------------------------------------------------------

int cmd_realize(const Options& o, const Tolerances& tol) {
  const AnyObject obj = from_json(read_json_file(o.object_path), Validation::kStrict, tol);
  const auto* set = std::get_if<SampleSet>(&obj);
  if (!set) throw Error(ErrorKind::kParseError, "realize needs a samples object");
  VerificationReport rep;
  rep.name = "realize";
  rep.seed = o.seed;
  json j;
  if (set->herglotz) {
    const auto col = realize_herglotz_from_samples(set->samples, tol);
    rep.add("sample_residual", sample_residual(col, set->samples), 1e-8);
    j = to_json(col, Meta{o.seed, tol});
  } else {
    const auto col = realize_schur_from_samples(set->samples, tol);
    rep.add("sample_residual", sample_residual(col, set->samples), 1e-9);
    j = to_json(col, Meta{o.seed, tol});
  }
  j["report"] = report_to_json(rep);
  emit(o, j, std::string(rep.all_pass() ? "PASS" : "FAIL") + " realize");
  return rep.all_pass() ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Agler-class realization toolkit"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("gen", "Generate an object");
  gen->add_option("kind", o.kind,
                  "schur_gr|herglotz_colligation|herglotz_rep|pi_impedance|pencil|tuple|points|samples");
  gen->add_option("--preset", o.preset, "shift|one-over-w|cayley-minus-one|shift-samples");
  gen->add_option("--d", o.d, "Number of variables");
  gen->add_option("--n", o.n, "State dimension");
  gen->add_option("--q", o.q, "Input dimension");
  gen->add_option("--m", o.m, "Tuple matrix size");
  gen->add_option("--margin", o.margin, "Tuple margin");
  gen->add_option("--tuple-kind", o.tuple_kind, "strict_contraction|strictly_accretive");
  gen->add_option("--domain", o.domain, "disk|halfplane (points)");

  auto* ev = app.add_subcommand("eval", "Evaluate an object at points");
  ev->add_option("object", o.object_path)->required();
  ev->add_option("points_file", o.points_path)->required();

  auto* conv = app.add_subcommand("convert", "Convert an object");
  conv->add_option("object", o.object_path)->required();
  conv->add_option("target", o.target, "herglotz_rep|pi_impedance|pencil|schur_from_herglotz|nevanlinna")
      ->required();

  auto* ver = app.add_subcommand("verify", "Run verification suites");
  ver->add_option("object", o.object_path)->required();
  ver->add_option("--suite", o.suite, "kernels|tuples|growth|resolvent|pencil_class|all");

  auto* real = app.add_subcommand("realize", "Lurking-isometry realization from samples");
  real->add_option("samples", o.object_path)->required();

  for (auto* sub : {gen, ev, conv, ver, real}) {
    sub->add_option("--tol", o.tol_overrides, "Tolerance override name=value (repeatable)");
    sub->add_option("--seed", o.seed, "Random seed");
    sub->add_option("--points", o.points, "Number of sample points or pairs");
    sub->add_option("--out", o.out, "Output file (default: stdout)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitError;
  }

  try {
    const Tolerances tol = parse_tolerances(o.tol_overrides);
    if (gen->parsed()) {
      if (o.kind.empty() && o.preset.empty()) {
        throw Error(ErrorKind::kBadParams, "gen needs a kind or --preset");
      }
      return cmd_gen(o, tol);
    }
    if (ev->parsed()) return cmd_eval(o, tol);
    if (conv->parsed()) return cmd_convert(o, tol);
    if (ver->parsed()) return cmd_verify(o, tol);
    if (real->parsed()) return cmd_realize(o, tol);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    // Inconsistent samples are a failed check, not a malformed input.
    return e.kind() == ErrorKind::kGramMismatch ? kExitFail : kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
