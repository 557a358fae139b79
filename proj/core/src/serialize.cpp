#include "bratteli/serialize.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bratteli/error.hpp"

namespace bratteli {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    fail(Errc::ParseError, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Int get_int(const Json& j, const char* what) {
  if (!j.is_number_integer())
    fail(Errc::ParseError, std::string(what) + " must be an integer");
  return j.get<Int>();
}

bool get_bool(const Json& j, const char* what) {
  if (!j.is_boolean()) fail(Errc::ParseError, std::string(what) + " must be a boolean");
  return j.get<bool>();
}

std::string get_string(const Json& j, const char* what) {
  if (!j.is_string()) fail(Errc::ParseError, std::string(what) + " must be a string");
  return j.get<std::string>();
}

const Json& get_array(const Json& j, const char* what) {
  if (!j.is_array()) fail(Errc::ParseError, std::string(what) + " must be an array");
  return j;
}

std::vector<Int> int_list(const Json& j, const char* what) {
  std::vector<Int> out;
  for (const Json& x : get_array(j, what)) out.push_back(get_int(x, what));
  return out;
}

}  // namespace

Json json_of_rat(const Rat& x) { return rat_str(x); }

Rat rat_of_json(const Json& j) { return rat_parse(get_string(j, "rational")); }

Json json_of_rvec(const RatVec& v) {
  Json out = Json::array();
  for (const Rat& x : v) out.push_back(json_of_rat(x));
  return out;
}

RatVec rvec_of_json(const Json& j) {
  RatVec out;
  for (const Json& x : get_array(j, "rational vector")) out.push_back(rat_of_json(x));
  return out;
}

Json json_of_algebra(const FdAlgebra& a) { return Json{{"summands", a.summands}}; }

FdAlgebra algebra_of_json(const Json& j) {
  return make_algebra(int_list(field(j, "summands"), "summands"));
}

Json json_of_trace(const RationalTrace& t) { return Json{{"weights", json_of_rvec(t.weights)}}; }

RationalTrace trace_of_json(const Json& j) {
  return make_trace(rvec_of_json(field(j, "weights")));
}

Json json_of_map(const BratteliMap& m) {
  Json mult = Json::array();
  for (const std::vector<Int>& row : m.mult) mult.push_back(row);
  return Json{{"source", json_of_algebra(m.source)},
              {"target", json_of_algebra(m.target)},
              {"unital", m.unital},
              {"multiplicities", mult}};
}

BratteliMap map_of_json(const Json& j) {
  FdAlgebra source = algebra_of_json(field(j, "source"));
  FdAlgebra target = algebra_of_json(field(j, "target"));
  bool unital = j.contains("unital") ? get_bool(j.at("unital"), "unital") : true;
  std::vector<std::vector<Int>> mult;
  for (const Json& row : get_array(field(j, "multiplicities"), "multiplicities"))
    mult.push_back(int_list(row, "multiplicities"));
  return make_embedding(source, target, mult, unital);
}

Json json_of_problem(const TracedProblem& p) {
  return Json{{"A", json_of_algebra(p.A)},     {"alpha", json_of_trace(p.alpha)},
              {"B", json_of_algebra(p.B)},     {"beta", json_of_trace(p.beta)},
              {"phi", json_of_map(p.phi)},     {"C", json_of_algebra(p.C)},
              {"gamma", json_of_trace(p.gamma)}, {"psi", json_of_map(p.psi)}};
}

TracedProblem problem_of_json(const Json& j) {
  TracedProblem p;
  p.A = algebra_of_json(field(j, "A"));
  p.alpha = trace_of_json(field(j, "alpha"));
  p.B = algebra_of_json(field(j, "B"));
  p.beta = trace_of_json(field(j, "beta"));
  p.phi = map_of_json(field(j, "phi"));
  p.C = algebra_of_json(field(j, "C"));
  p.gamma = trace_of_json(field(j, "gamma"));
  p.psi = map_of_json(field(j, "psi"));
  if (p.phi.source != p.A || p.phi.target != p.B)
    fail(Errc::ParseError, "phi must run from A to B");
  if (p.psi.source != p.A || p.psi.target != p.C)
    fail(Errc::ParseError, "psi must run from A to C");
  return p;
}

Json json_of_solution(const MatrixAmalgamSolution& s) {
  return Json{{"N", s.N}, {"s", s.s}, {"r", s.r}};
}

MatrixAmalgamSolution solution_of_json(const Json& j) {
  MatrixAmalgamSolution s;
  s.N = get_int(field(j, "N"), "N");
  s.s = int_list(field(j, "s"), "s");
  s.r = int_list(field(j, "r"), "r");
  return s;
}

Json json_of_amalgam_result(const AmalgamResult& r) {
  Json vertices = Json::array();
  for (const RatVec& v : r.preserved.vertices) vertices.push_back(json_of_rvec(v));
  Json tau = Json::array();
  for (const RatVec& v : r.tau) tau.push_back(json_of_rvec(v));
  Json solves = Json::array();
  for (const MatrixAmalgamSolution& s : r.solves) solves.push_back(json_of_solution(s));
  return Json{{"D", json_of_algebra(r.D)},
              {"delta", json_of_trace(r.delta)},
              {"psiB", json_of_map(r.psiB)},
              {"psiC", json_of_map(r.psiC)},
              {"polytope", Json{{"vertices", vertices}}},
              {"tau", tau},
              {"solves", solves}};
}

Json json_of_descriptor(const ClassDescriptor& d) {
  Json out;
  out["kind"] = chain_kind_name(d.kind);
  if (d.kind == ChainKind::Uhf)
    out["program"] = supernatural_str(d.program);
  else
    out["program"] = nullptr;
  out["width"] = d.width;
  if (d.trace.width() > 0)
    out["trace"] = json_of_trace(d.trace);
  else
    out["trace"] = nullptr;
  out["unital"] = d.unital;
  out["metric"] = metric_tag_name(d.metric);
  return out;
}

ClassDescriptor descriptor_of_json(const Json& j) {
  ClassDescriptor d;
  std::string kind = get_string(field(j, "kind"), "kind");
  if (kind == "uhf")
    d.kind = ChainKind::Uhf;
  else if (kind == "factors")
    d.kind = ChainKind::FiniteFactors;
  else if (kind == "width")
    d.kind = ChainKind::WidthTraced;
  else if (kind == "commutative")
    d.kind = ChainKind::Commutative;
  else if (kind == "compacts")
    d.kind = ChainKind::CompactOperators;
  else
    fail(Errc::ParseError, "unknown class kind \"" + kind + "\"");
  if (d.kind == ChainKind::Uhf)
    d.program = parse_supernatural(get_string(field(j, "program"), "program"));
  if (j.contains("width") && !j.at("width").is_null())
    d.width = get_int(j.at("width"), "width");
  if (j.contains("trace") && !j.at("trace").is_null()) d.trace = trace_of_json(j.at("trace"));
  if (j.contains("unital")) d.unital = get_bool(j.at("unital"), "unital");
  if (j.contains("metric")) {
    std::string metric = get_string(j.at("metric"), "metric");
    if (metric == "generator")
      d.metric = MetricTag::Generator;
    else if (metric == "trace")
      d.metric = MetricTag::Trace;
    else
      fail(Errc::ParseError, "unknown metric \"" + metric + "\"");
  }
  return d;
}

Json json_of_chain(const InductiveChain& c) {
  Json stages = Json::array();
  for (const FdAlgebra& a : c.stages) stages.push_back(json_of_algebra(a));
  Json maps = Json::array();
  for (const BratteliMap& m : c.maps) maps.push_back(json_of_map(m));
  Json traces = Json::array();
  for (const RationalTrace& t : c.traces) traces.push_back(json_of_trace(t));
  return Json{{"descriptor", json_of_descriptor(c.descriptor)},
              {"stages", stages},
              {"maps", maps},
              {"traces", traces},
              {"log", c.log}};
}

InductiveChain chain_of_json(const Json& j) {
  InductiveChain c;
  c.descriptor = descriptor_of_json(field(j, "descriptor"));
  for (const Json& a : get_array(field(j, "stages"), "stages"))
    c.stages.push_back(algebra_of_json(a));
  for (const Json& m : get_array(field(j, "maps"), "maps")) c.maps.push_back(map_of_json(m));
  for (const Json& t : get_array(field(j, "traces"), "traces"))
    c.traces.push_back(trace_of_json(t));
  if (j.contains("log"))
    for (const Json& line : get_array(j.at("log"), "log"))
      c.log.push_back(get_string(line, "log line"));
  ValidationReport report = validate_chain(c);
  if (!report.ok) fail(Errc::InvalidChain, report.detail);
  return c;
}

std::string dot_of_chain(const InductiveChain& c) {
  std::ostringstream out;
  out << "digraph bratteli {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=circle];\n";
  for (size_t m = 0; m < c.stages.size(); ++m)
    for (int jdx = 0; jdx < c.stages[m].width(); ++jdx)
      out << "  \"" << m << "_" << jdx << "\" [label=\"" << c.stages[m].summands[jdx]
          << "\"];\n";
  for (size_t m = 0; m < c.maps.size(); ++m) {
    const BratteliMap& map = c.maps[m];
    for (int jdx = 0; jdx < map.target.width(); ++jdx)
      for (int i = 0; i < map.source.width(); ++i)
        if (map.mult[jdx][i] > 0)
          out << "  \"" << m << "_" << i << "\" -> \"" << m + 1 << "_" << jdx
              << "\" [label=\"" << map.mult[jdx][i] << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

Json json_of_supernatural_report(const ChainSupernatural& s) {
  return Json{{"number", supernatural_str(s.number)},
              {"certified_unbounded", s.certified_unbounded}};
}

Json json_of_k0(const K0Report& r) {
  Json divisibility = Json::array();
  for (const DivisibilityCertificate& c : r.divisibility)
    divisibility.push_back(Json{{"p", c.p}, {"from", c.from}, {"to", c.to}});
  return Json{{"rank", r.rank},
              {"per_stage_image_ranks", r.per_stage_image_ranks},
              {"divisibility", divisibility},
              {"self_absorption_obstruction", r.self_absorption_obstruction}};
}

Json json_of_simplicity(const std::vector<SimplicityWitness>& w) {
  Json out = Json::array();
  for (const SimplicityWitness& x : w) out.push_back(Json{{"from", x.from}, {"to", x.to}});
  return out;
}

Json json_of_diameters(const std::vector<Rat>& d) {
  Json out = Json::array();
  for (const Rat& x : d) out.push_back(json_of_rat(x));
  return out;
}

Json json_of_cmat(const CMat& m) {
  Json data = Json::array();
  for (const Complex& z : m.data) data.push_back(Json::array({z.real(), z.imag()}));
  return Json{{"rows", m.rows}, {"cols", m.cols}, {"data", data}};
}

CMat cmat_of_json(const Json& j) {
  CMat m = CMat::zero(get_int(field(j, "rows"), "rows"), get_int(field(j, "cols"), "cols"));
  const Json& data = get_array(field(j, "data"), "data");
  if (data.size() != m.data.size()) fail(Errc::ParseError, "matrix data has the wrong length");
  for (size_t i = 0; i < m.data.size(); ++i) {
    const Json& pair = get_array(data.at(i), "matrix entry");
    if (pair.size() != 2 || !pair.at(0).is_number() || !pair.at(1).is_number())
      fail(Errc::ParseError, "matrix entries must be [re, im] pairs");
    m.data[i] = Complex(pair.at(0).get<double>(), pair.at(1).get<double>());
  }
  return m;
}

Json json_of_homogeneity(const HomogeneityResult& h) {
  return Json{{"unitary", json_of_cmat(h.unitary)}, {"distance", h.distance},
              {"stage", h.stage}};
}

Json json_of_ramsey(const RamseyReport& r) {
  return Json{{"oscillation", r.oscillation}, {"histogram", r.histogram},
              {"seed", r.seed},               {"samples", r.samples},
              {"min_value", r.min_value},     {"max_value", r.max_value}};
}

namespace {

Json json_of_poly(const Poly& p) {
  Json out = Json::array();
  for (const Rat& x : p.c) out.push_back(json_of_rat(x));
  return out;
}

Poly poly_of_json(const Json& j) {
  std::vector<Rat> c;
  for (const Json& x : get_array(j, "coefficients")) c.push_back(rat_of_json(x));
  return poly_make(std::move(c));
}

}  // namespace

Json json_of_pw(const PiecewisePoly& f) {
  Json pieces = Json::array();
  for (const Poly& p : f.pieces) pieces.push_back(Json{{"coeffs", json_of_poly(p)}});
  return Json{{"breaks", json_of_rvec(f.breaks)}, {"pieces", pieces}};
}

PiecewisePoly pw_of_json(const Json& j) {
  std::vector<Rat> breaks = rvec_of_json(field(j, "breaks"));
  std::vector<Poly> pieces;
  for (const Json& p : get_array(field(j, "pieces"), "pieces"))
    pieces.push_back(poly_of_json(field(p, "coeffs")));
  return pw_make(std::move(breaks), std::move(pieces));
}

Json json_of_pm(const PiecewiseMatrix& x) {
  Json pieces = Json::array();
  for (const std::vector<Poly>& piece : x.pieces) {
    Json coeffs = Json::array();
    for (const Poly& p : piece) coeffs.push_back(json_of_poly(p));
    pieces.push_back(Json{{"coeffs", coeffs}});
  }
  return Json{{"dim", x.dim}, {"breaks", json_of_rvec(x.breaks)}, {"pieces", pieces}};
}

PiecewiseMatrix pm_of_json(const Json& j) {
  Int dim = get_int(field(j, "dim"), "dim");
  std::vector<Rat> breaks = rvec_of_json(field(j, "breaks"));
  std::vector<std::vector<Poly>> pieces;
  for (const Json& p : get_array(field(j, "pieces"), "pieces")) {
    std::vector<Poly> piece;
    for (const Json& entry : get_array(field(p, "coeffs"), "coeffs"))
      piece.push_back(poly_of_json(entry));
    pieces.push_back(std::move(piece));
  }
  return pm_make(dim, std::move(breaks), std::move(pieces));
}

Json json_of_element(const DimDropElement& e) {
  Json out = json_of_pm(e.value);
  Json tagged;
  tagged["p"] = e.algebra.p;
  tagged["q"] = e.algebra.q;
  for (auto& [key, value] : out.items()) tagged[key] = value;
  tagged.erase("dim");  // implied by p*q
  return tagged;
}

DimDropElement element_of_json(const Json& j) {
  DimensionDropAlgebra algebra =
      make_zpq(get_int(field(j, "p"), "p"), get_int(field(j, "q"), "q"));
  Json pm = j;
  pm["dim"] = algebra.fiber_dim();
  return make_element(algebra, pm_of_json(pm));
}

Json json_of_measure(const QuantileMeasure& mu) {
  return Json{{"quantile", json_of_pw(mu.quantile)}};
}

QuantileMeasure measure_of_json(const Json& j) {
  return make_quantile(pw_of_json(field(j, "quantile")));
}

Json json_parse(const std::string& text) {
  Json j = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) fail(Errc::ParseError, "malformed JSON input");
  return j;
}

std::string json_dumps(const Json& j) { return j.dump(2) + "\n"; }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::IoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) fail(Errc::IoError, "cannot read " + path);
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(Errc::IoError, "cannot open " + tmp + " for writing");
    out << content;
    out.flush();
    if (!out) fail(Errc::IoError, "cannot write " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) fail(Errc::IoError, "cannot move " + tmp + " into place: " + ec.message());
}

Json read_json_file(const std::string& path) { return json_parse(read_text_file(path)); }

void write_json_file(const std::string& path, const Json& j) {
  write_text_file(path, json_dumps(j));
}

}  // namespace bratteli
