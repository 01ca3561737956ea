#include "agler/io.hpp"

#include <fstream>
#include <sstream>

#include "agler/error.hpp"

namespace agler {
namespace {

[[noreturn]] void fail(const std::string& msg) {
  throw Error(ErrorKind::kParseError, msg);
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <typename T>
T get_as(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    fail(std::string("bad value for ") + what);
  }
}

cplx complex_from_json(const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    fail("complex entries are [re, im] pairs");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json matrices_to_json(const std::vector<ComplexMatrix>& ms) {
  json arr = json::array();
  for (const auto& m : ms) arr.push_back(matrix_to_json(m));
  return arr;
}

std::vector<ComplexMatrix> matrices_from_json(const json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + " must be an array of matrices");
  std::vector<ComplexMatrix> out;
  for (const auto& m : j) out.push_back(matrix_from_json(m));
  return out;
}

const char* metric_name(Metric m) {
  switch (m) {
    case Metric::kUnitary: return "unitary";
    case Metric::kIsometric: return "isometric";
    case Metric::kCoisometric: return "coisometric";
    case Metric::kContractive: return "contractive";
  }
  return "unitary";
}

Metric metric_from(const std::string& s) {
  if (s == "unitary") return Metric::kUnitary;
  if (s == "isometric") return Metric::kIsometric;
  if (s == "coisometric") return Metric::kCoisometric;
  if (s == "contractive") return Metric::kContractive;
  fail("unknown metric '" + s + "'");
}

json dec_dims(const DecompositionOfIdentity& dec) {
  return dec.is_spectral() ? "spectral" : "positive";
}

DecompositionOfIdentity dec_from(const json& dims, const json& blocks, const char* key,
                                 const Tolerances& tol) {
  const std::string kind = get_as<std::string>(field(dims, "decomposition"), "decomposition");
  if (kind != "spectral" && kind != "positive") fail("decomposition is spectral|positive");
  return make_decomposition(matrices_from_json(field(blocks, key), key),
                            kind == "spectral" ? DecompositionKind::kSpectral
                                               : DecompositionKind::kPositive,
                            tol);
}

json envelope(const std::string& type, std::size_t d, json dims, json blocks,
              const Meta& meta) {
  json tols = json::object();
  for (const auto& name : Tolerances::names()) tols[name] = meta.tolerances.get(name);
  return json{{"type", type},
              {"d", d},
              {"dims", std::move(dims)},
              {"blocks", std::move(blocks)},
              {"meta", {{"seed", meta.seed}, {"tolerances", tols}}}};
}

json sample_to_json(const DecompositionSample& s) {
  return json{{"point", point_to_json(s.point)},
              {"value", matrix_to_json(s.value)},
              {"factors", matrices_to_json(s.factors)}};
}

struct Writer {
  const Meta& meta;

  json operator()(const SchurGRColligation& c) const {
    return envelope("schur_gr", c.dec.d(),
                    {{"n", c.state_dim()}, {"p", c.output_dim()}, {"q", c.input_dim()},
                     {"metric", metric_name(c.metric)}, {"decomposition", dec_dims(c.dec)}},
                    {{"A", matrix_to_json(c.a)}, {"B", matrix_to_json(c.b)},
                     {"C", matrix_to_json(c.c)}, {"D", matrix_to_json(c.d)},
                     {"P", matrices_to_json(c.dec.parts())}},
                    meta);
  }
  json operator()(const HerglotzDiskColligation& c) const {
    return envelope("herglotz_colligation", c.dec.d(),
                    {{"n", c.state_dim()}, {"q", c.input_dim()},
                     {"decomposition", dec_dims(c.dec)}},
                    {{"A", matrix_to_json(c.a)}, {"B", matrix_to_json(c.b)},
                     {"C", matrix_to_json(c.c)}, {"D", matrix_to_json(c.d)},
                     {"P", matrices_to_json(c.dec.parts())}},
                    meta);
  }
  json operator()(const HerglotzRepresentation& r) const {
    return envelope("herglotz_rep", r.dec.d(),
                    {{"n", r.state_dim()}, {"q", r.input_dim()},
                     {"decomposition", dec_dims(r.dec)}},
                    {{"R", matrix_to_json(r.r)}, {"U", matrix_to_json(r.u)},
                     {"V", matrix_to_json(r.v)}, {"P", matrices_to_json(r.dec.parts())}},
                    meta);
  }
  json operator()(const PiNode& n) const {
    return envelope(n.flavor == PiFlavor::kImpedance ? "pi_impedance" : "pi_scattering",
                    n.dec.d(),
                    {{"n", n.state_dim()}, {"p", n.output_dim()}, {"q", n.input_dim()},
                     {"decomposition", dec_dims(n.dec)}},
                    {{"A", matrix_to_json(n.a)}, {"B", matrix_to_json(n.b)},
                     {"C", matrix_to_json(n.c)}, {"D", matrix_to_json(n.d)},
                     {"Y", matrices_to_json(n.dec.parts())}},
                    meta);
  }
  json operator()(const BessmertnyiPencil& p) const {
    return envelope("pencil", p.d(), {{"q", p.q}, {"n", p.n}},
                    {{"V0", matrix_to_json(p.v0)}, {"V", matrices_to_json(p.vk)}}, meta);
  }
  json operator()(const CommutingTuple& t) const {
    return envelope("tuple", t.d,
                    {{"m", t.m},
                     {"kind", t.kind == TupleKind::kStrictContraction
                                  ? "strict_contraction"
                                  : "strictly_accretive"},
                     {"margin", t.margin}},
                    {{"T", matrices_to_json(t.mats)}}, meta);
  }
  json operator()(const SampleSet& s) const {
    json arr = json::array();
    for (const auto& smp : s.samples) arr.push_back(sample_to_json(smp));
    const std::size_t d = s.samples.empty() ? 0 : s.samples[0].point.size();
    return envelope("samples", d,
                    {{"count", s.samples.size()},
                     {"function", s.herglotz ? "herglotz" : "schur"}},
                    {{"samples", arr}}, meta);
  }
  json operator()(const PointSet& p) const {
    json arr = json::array();
    for (const auto& pt : p.points) arr.push_back(point_to_json(pt));
    return envelope("points", p.d, {{"count", p.points.size()}}, {{"points", arr}}, meta);
  }
  json operator()(const NevanlinnaData& n) const {
    json atoms = json::array();
    for (const auto& a : n.atoms)
      atoms.push_back({{"location", complex_to_json(a.location)}, {"mass", a.mass}});
    return envelope("nevanlinna", 1, {{"atoms", n.atoms.size()}},
                    {{"alpha", n.alpha}, {"r", complex_to_json(n.r)}, {"atoms", atoms}},
                    meta);
  }
};

std::size_t dim_field(const json& dims, const char* key) {
  return get_as<std::size_t>(field(dims, key), key);
}

}  // namespace

json matrix_to_json(const ComplexMatrix& m) {
  json data = json::array();
  for (const cplx& z : m.values()) data.push_back(complex_to_json(z));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

ComplexMatrix matrix_from_json(const json& j) {
  const std::size_t rows = get_as<std::size_t>(field(j, "rows"), "rows");
  const std::size_t cols = get_as<std::size_t>(field(j, "cols"), "cols");
  const json& data = field(j, "data");
  if (!data.is_array() || data.size() != rows * cols) fail("data length != rows * cols");
  std::vector<cplx> values;
  values.reserve(data.size());
  for (const auto& v : data) values.push_back(complex_from_json(v));
  return ComplexMatrix(rows, cols, std::move(values));
}

json point_to_json(const Point& p) {
  json arr = json::array();
  for (cplx z : p) arr.push_back(complex_to_json(z));
  return arr;
}

Point point_from_json(const json& j) {
  if (!j.is_array()) fail("a point is an array of [re, im] pairs");
  Point p;
  for (const auto& v : j) p.push_back(complex_from_json(v));
  return p;
}

std::string type_name(const AnyObject& obj) {
  return to_json(obj)["type"].get<std::string>();
}

json to_json(const AnyObject& obj, const Meta& meta) {
  return std::visit(Writer{meta}, obj);
}

Meta meta_from_json(const json& j) {
  Meta meta;
  if (!j.is_object() || !j.contains("meta")) return meta;
  const json& m = j.at("meta");
  if (m.contains("seed")) meta.seed = get_as<std::uint64_t>(m.at("seed"), "seed");
  if (m.contains("tolerances")) {
    for (const auto& [name, value] : m.at("tolerances").items()) {
      if (!meta.tolerances.set(name, get_as<double>(value, "tolerance"))) {
        fail("unknown tolerance '" + name + "'");
      }
    }
  }
  return meta;
}

AnyObject from_json(const json& j, Validation mode, const Tolerances& tol) {
  const std::string type = get_as<std::string>(field(j, "type"), "type");
  const json& dims = field(j, "dims");
  const json& blocks = field(j, "blocks");
  auto mat = [&](const char* key) { return matrix_from_json(field(blocks, key)); };

  if (type == "schur_gr") {
    return make_schur_gr(mat("A"), mat("B"), mat("C"), mat("D"),
                         dec_from(dims, blocks, "P", tol),
                         metric_from(get_as<std::string>(field(dims, "metric"), "metric")),
                         mode, tol);
  }
  if (type == "herglotz_colligation") {
    return make_herglotz_colligation(mat("A"), mat("B"), mat("C"), mat("D"),
                                     dec_from(dims, blocks, "P", tol), mode, tol);
  }
  if (type == "herglotz_rep") {
    return make_herglotz_rep(mat("R"), mat("U"), mat("V"), dec_from(dims, blocks, "P", tol),
                             mode, tol);
  }
  if (type == "pi_impedance" || type == "pi_scattering") {
    return make_pi_node(mat("A"), mat("B"), mat("C"), mat("D"),
                        dec_from(dims, blocks, "Y", tol),
                        type == "pi_impedance" ? PiFlavor::kImpedance : PiFlavor::kScattering,
                        mode, tol);
  }
  if (type == "pencil") {
    return make_pencil(dim_field(dims, "q"), mat("V0"),
                       matrices_from_json(field(blocks, "V"), "V"), mode, tol);
  }
  if (type == "tuple") {
    const std::string kind = get_as<std::string>(field(dims, "kind"), "kind");
    if (kind != "strict_contraction" && kind != "strictly_accretive") fail("tuple kind");
    return make_commuting_tuple(matrices_from_json(field(blocks, "T"), "T"),
                                kind == "strict_contraction" ? TupleKind::kStrictContraction
                                                             : TupleKind::kStrictlyAccretive,
                                get_as<double>(field(dims, "margin"), "margin"), tol);
  }
  if (type == "samples") {
    SampleSet set;
    set.herglotz = dims.value("function", "schur") == "herglotz";
    const json& arr = field(blocks, "samples");
    if (!arr.is_array()) fail("samples must be an array");
    for (const auto& s : arr) {
      set.samples.push_back({point_from_json(field(s, "point")),
                             matrix_from_json(field(s, "value")),
                             matrices_from_json(field(s, "factors"), "factors")});
    }
    return set;
  }
  if (type == "points") {
    PointSet set;
    set.d = get_as<std::size_t>(field(j, "d"), "d");
    const json& arr = field(blocks, "points");
    if (!arr.is_array()) fail("points must be an array");
    for (const auto& p : arr) {
      set.points.push_back(point_from_json(p));
      if (set.points.back().size() != set.d) fail("point dimension != d");
    }
    return set;
  }
  if (type == "nevanlinna") {
    NevanlinnaData n;
    n.alpha = get_as<double>(field(blocks, "alpha"), "alpha");
    n.r = complex_from_json(field(blocks, "r"));
    for (const auto& a : field(blocks, "atoms")) {
      n.atoms.push_back({complex_from_json(field(a, "location")),
                         get_as<double>(field(a, "mass"), "mass")});
    }
    return n;
  }
  fail("unknown object type '" + type + "'");
}

json report_to_json(const VerificationReport& rep) {
  json residuals = json::array();
  for (const auto& r : rep.residuals) {
    residuals.push_back({{"label", r.label},
                         {"value", r.value},
                         {"threshold", r.threshold},
                         {"pass", r.pass}});
  }
  return json{{"type", "report"},
              {"name", rep.name},
              {"seed", rep.seed},
              {"notes", rep.notes},
              {"pass", rep.all_pass()},
              {"residuals", residuals}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kBadParams, "cannot write '" + path + "'");
  out << text;
}

}  // namespace agler
