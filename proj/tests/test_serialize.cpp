#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <string>
#include <vector>

#include "bratteli/serialize.hpp"
#include "test_util.hpp"

using namespace bratteli;

namespace {

Poly from_ints(std::vector<long> coeffs) {
  std::vector<Rat> c;
  for (long v : coeffs) c.emplace_back(v);
  return poly_make(std::move(c));
}

TracedProblem headline_problem() {
  TracedProblem p;
  p.A = make_algebra({1, 1});
  p.alpha = make_trace({Rat(1, 2), Rat(1, 2)});
  p.B = make_algebra({2, 2});
  p.beta = make_trace({Rat(1, 2), Rat(1, 2)});
  p.phi = make_embedding(p.A, p.B, {{1, 1}, {1, 1}});
  p.C = make_algebra({3, 3});
  p.gamma = make_trace({Rat(1, 2), Rat(1, 2)});
  p.psi = make_embedding(p.A, p.C, {{1, 2}, {2, 1}});
  return p;
}

}  // namespace

TEST_CASE("rationals travel as exact strings") {
  CHECK(json_of_rat(Rat(1, 2)) == Json("1/2"));
  CHECK(json_of_rat(Rat(-3)) == Json("-3"));
  CHECK(rat_of_json(Json("22/7")) == Rat(22, 7));
  CHECK(rat_of_json(json_of_rat(Rat(-5, 9))) == Rat(-5, 9));
  CHECK(code_of([] { rat_of_json(Json(0.5)); }) == Errc::ParseError);
  CHECK(code_of([] { rat_of_json(Json("1.5")); }) == Errc::ParseError);

  RatVec v = {Rat(0), Rat(2, 3), Rat(-7, 2)};
  CHECK(rvec_of_json(json_of_rvec(v)) == v);
  CHECK(code_of([] { rvec_of_json(Json{{"x", 1}}); }) == Errc::ParseError);
}

TEST_CASE("algebras and traces round-trip and re-validate") {
  FdAlgebra a = make_algebra({2, 3});
  CHECK(json_of_algebra(a) == Json{{"summands", {2, 3}}});
  CHECK(algebra_of_json(json_of_algebra(a)) == a);
  CHECK(code_of([] { algebra_of_json(json_parse(R"({"summands": []})")); }) ==
        Errc::EmptySummands);
  CHECK(code_of([] { algebra_of_json(json_parse(R"({"summands": [2, 0]})")); }) ==
        Errc::NonPositiveSummand);
  CHECK(code_of([] { algebra_of_json(json_parse(R"({"wrong": 1})")); }) == Errc::ParseError);

  RationalTrace t = make_trace({Rat(1, 3), Rat(2, 3)});
  CHECK(json_of_trace(t) == Json{{"weights", {"1/3", "2/3"}}});
  CHECK(trace_of_json(json_of_trace(t)) == t);
  CHECK(code_of([] { trace_of_json(json_parse(R"({"weights": ["1/2", "1/3"]})")); }) ==
        Errc::NotInterior);
}

TEST_CASE("maps round-trip; unital defaults to true") {
  BratteliMap m = make_embedding(make_algebra({1, 1}), make_algebra({2, 4}), {{1, 1}, {2, 2}});
  CHECK(map_of_json(json_of_map(m)) == m);

  Json j = json_of_map(m);
  j.erase("unital");
  CHECK(map_of_json(j) == m);

  BratteliMap corner = make_embedding(make_algebra({1}), make_algebra({3}), {{2}}, false);
  CHECK(map_of_json(json_of_map(corner)) == corner);

  // Re-validation applies on the way in.
  Json bad = json_of_map(m);
  bad["multiplicities"] = Json::array({Json::array({1, 1})});
  CHECK(code_of([&] { map_of_json(bad); }) == Errc::ShapeMismatch);
}

TEST_CASE("problems and solutions round-trip with endpoint checks") {
  TracedProblem p = headline_problem();
  Json j = json_of_problem(p);
  TracedProblem back = problem_of_json(j);
  CHECK(back.A == p.A);
  CHECK(back.beta == p.beta);
  CHECK(back.phi == p.phi);
  CHECK(back.psi == p.psi);

  // A malformed map fails its own validation before any endpoint check.
  Json wrong = j;
  wrong["phi"]["source"] = Json{{"summands", {1}}};
  CHECK_THROWS_AS(problem_of_json(wrong), Error);

  // A well-formed map whose endpoints disagree with the declared corners.
  Json detached = j;
  detached["C"] = Json{{"summands", {3, 3, 1}}};
  detached["gamma"] = Json{{"weights", {"1/3", "1/3", "1/3"}}};
  CHECK(code_of([&] { problem_of_json(detached); }) == Errc::ParseError);

  MatrixAmalgamSolution s{12, {3, 3}, {2, 2}};
  MatrixAmalgamSolution back_s = solution_of_json(json_of_solution(s));
  CHECK(back_s.N == 12);
  CHECK(back_s.s == std::vector<Int>{3, 3});
  CHECK(back_s.r == std::vector<Int>{2, 2});
}

TEST_CASE("amalgam result serialization carries the preserved polytope") {
  AmalgamResult r = amalgamate_width_n(headline_problem());
  Json j = json_of_amalgam_result(r);
  CHECK(j.contains("D"));
  CHECK(j.contains("delta"));
  CHECK(j.contains("psiB"));
  CHECK(j.contains("psiC"));
  CHECK(j["polytope"]["vertices"] == Json::array({Json::array({"1/2", "1/2"})}));
  CHECK(j["solves"].is_array());
  CHECK(j["tau"].is_array());
}

TEST_CASE("descriptors round-trip for every class kind") {
  ClassDescriptor uhf;
  uhf.kind = ChainKind::Uhf;
  uhf.program = parse_supernatural("2^inf*3");
  CHECK(descriptor_of_json(json_of_descriptor(uhf)) == uhf);
  CHECK(json_of_descriptor(uhf)["program"] == Json("2^inf*3"));

  ClassDescriptor width;
  width.kind = ChainKind::WidthTraced;
  width.width = 2;
  width.trace = make_trace({Rat(1, 3), Rat(2, 3)});
  width.metric = MetricTag::Trace;
  CHECK(descriptor_of_json(json_of_descriptor(width)) == width);

  ClassDescriptor compacts;
  compacts.kind = ChainKind::CompactOperators;
  compacts.unital = false;
  CHECK(descriptor_of_json(json_of_descriptor(compacts)) == compacts);
  CHECK(json_of_descriptor(compacts)["program"].is_null());
  CHECK(json_of_descriptor(compacts)["trace"].is_null());

  CHECK(code_of([] { descriptor_of_json(json_parse(R"({"kind": "mystery"})")); }) ==
        Errc::ParseError);
  CHECK(code_of([] {
          descriptor_of_json(json_parse(R"({"kind": "commutative", "metric": "hamming"})"));
        }) == Errc::ParseError);
}

TEST_CASE("chains round-trip and re-validate on the way in") {
  InductiveChain chain = build_uhf_chain(parse_supernatural("2^inf"), 3);
  Json j = json_of_chain(chain);
  InductiveChain back = chain_of_json(j);
  CHECK(back.descriptor == chain.descriptor);
  CHECK(back.stages == chain.stages);
  CHECK(back.maps == chain.maps);
  CHECK(back.traces == chain.traces);
  CHECK(back.log == chain.log);

  InductiveChain traced = build_width_class_chain(2, make_trace({Rat(1, 3), Rat(2, 3)}), 4);
  InductiveChain traced_back = chain_of_json(json_of_chain(traced));
  CHECK(traced_back.stages == traced.stages);
  CHECK(traced_back.traces == traced.traces);

  Json broken = j;
  broken["maps"].erase(1);
  CHECK(code_of([&] { chain_of_json(broken); }) == Errc::InvalidChain);

  Json mistraced = j;
  mistraced["traces"][0] = Json{{"weights", Json::array({"1/3", "2/3"})}};
  CHECK(code_of([&] { chain_of_json(mistraced); }) == Errc::InvalidChain);
}

TEST_CASE("dot output is byte-deterministic and skips zero multiplicities") {
  InductiveChain tiny = build_commutative_chain(2);
  CHECK(dot_of_chain(tiny) ==
        "digraph bratteli {\n"
        "  rankdir=LR;\n"
        "  node [shape=circle];\n"
        "  \"0_0\" [label=\"1\"];\n"
        "  \"1_0\" [label=\"1\"];\n"
        "  \"1_1\" [label=\"1\"];\n"
        "  \"0_0\" -> \"1_0\" [label=\"1\"];\n"
        "  \"0_0\" -> \"1_1\" [label=\"1\"];\n"
        "}\n");

  InductiveChain sparse;
  sparse.descriptor.kind = ChainKind::WidthTraced;
  sparse.descriptor.width = 2;
  sparse.stages = {make_algebra({1, 1}), make_algebra({2, 4})};
  sparse.maps = {make_embedding(sparse.stages[0], sparse.stages[1], {{2, 0}, {1, 3}})};
  CHECK(dot_of_chain(sparse) ==
        "digraph bratteli {\n"
        "  rankdir=LR;\n"
        "  node [shape=circle];\n"
        "  \"0_0\" [label=\"1\"];\n"
        "  \"0_1\" [label=\"1\"];\n"
        "  \"1_0\" [label=\"2\"];\n"
        "  \"1_1\" [label=\"4\"];\n"
        "  \"0_0\" -> \"1_0\" [label=\"2\"];\n"
        "  \"0_0\" -> \"1_1\" [label=\"1\"];\n"
        "  \"0_1\" -> \"1_1\" [label=\"3\"];\n"
        "}\n");
}

TEST_CASE("certificate reports serialize with stable shapes") {
  InductiveChain chain = build_uhf_chain(parse_supernatural("2^inf"), 3);
  Json sn = json_of_supernatural_report(supernatural_of_chain(chain));
  CHECK(sn["number"] == Json("2^inf"));
  CHECK(sn["certified_unbounded"] == Json::array({2}));

  K0Report k0 = k0_of_chain(chain);
  Json jk = json_of_k0(k0);
  CHECK(jk["rank"] == Json(1));
  CHECK(jk["per_stage_image_ranks"].size() == k0.per_stage_image_ranks.size());
  REQUIRE(jk["divisibility"].is_array());
  for (const Json& cert : jk["divisibility"]) {
    CHECK(cert.contains("p"));
    CHECK(cert.contains("from"));
    CHECK(cert.contains("to"));
  }
  CHECK(jk["self_absorption_obstruction"] == Json(false));

  Json sw = json_of_simplicity(simplicity_certificate(chain));
  REQUIRE(sw.is_array());
  CHECK(sw[0] == Json{{"from", 0}, {"to", 1}});

  // Width-1 stages have one-point trace simplexes, so all diameters vanish.
  Json dia = json_of_diameters(trace_uniqueness_diameters(chain));
  CHECK(dia == Json::array({"0", "0", "0"}));

  InductiveChain traced = build_width_class_chain(2, make_trace({Rat(1, 3), Rat(2, 3)}), 2);
  Json dia2 = json_of_diameters(trace_uniqueness_diameters(traced));
  CHECK(dia2[0] == Json("2"));
}

TEST_CASE("complex matrices round-trip exactly") {
  CMat u = haar_unitary(3, 99);
  CMat back = cmat_of_json(json_of_cmat(u));
  CHECK(back.rows == 3);
  CHECK(back.cols == 3);
  CHECK(max_abs_diff(u, back) == 0.0);

  CHECK(code_of([] {
          cmat_of_json(json_parse(R"({"rows": 2, "cols": 1, "data": [[0, 0]]})"));
        }) == Errc::ParseError);
  CHECK(code_of([] {
          cmat_of_json(json_parse(R"({"rows": 1, "cols": 1, "data": [[0, 0, 0]]})"));
        }) == Errc::ParseError);
  CHECK(code_of([] {
          cmat_of_json(json_parse(R"({"rows": 1, "cols": 1, "data": [["x", 0]]})"));
        }) == Errc::ParseError);

  RamseyReport demo = ramsey_oscillation_demo(2, 4, ColoringKind::Constant, 3, 5);
  Json jr = json_of_ramsey(demo);
  CHECK(jr["oscillation"] == Json(0.0));
  CHECK(jr["seed"] == Json(5));
  CHECK(jr["samples"] == Json(3));
  CHECK(jr["histogram"].size() == 16);
}

TEST_CASE("piecewise data round-trips") {
  PiecewisePoly f = pw_make({Rat(0), Rat(1, 2), Rat(1)},
                            {from_ints({1, -2}), from_ints({-1, 2})});
  CHECK(pw_of_json(json_of_pw(f)) == f);
  CHECK(json_of_pw(f)["pieces"][0] == Json{{"coeffs", {"1", "-2"}}});

  PiecewiseMatrix x = pm_scalar(2, f);
  CHECK(pm_of_json(json_of_pm(x)) == x);
  CHECK(json_of_pm(x)["dim"] == Json(2));

  DimDropElement e = scalar_element(make_zpq(2, 3),
                                    pw_poly(Rat(0), Rat(1), from_ints({0, 1})));
  Json je = json_of_element(e);
  CHECK(je["p"] == Json(2));
  CHECK(je["q"] == Json(3));
  CHECK_FALSE(je.contains("dim"));
  DimDropElement eb = element_of_json(je);
  CHECK(eb.algebra == e.algebra);
  CHECK(eb.value == e.value);

  QuantileMeasure mu = make_quantile(pw_poly(Rat(0), Rat(1), from_ints({0, 0, 1})));
  CHECK(measure_of_json(json_of_measure(mu)).quantile == mu.quantile);
  CHECK(code_of([] {
          measure_of_json(json_parse(
              R"({"quantile": {"breaks": ["0", "1"], "pieces": [{"coeffs": ["1", "-1"]}]}})"));
        }) == Errc::InvalidMeasure);
  CHECK(code_of([&] { element_of_json(json_parse(R"({"p": 2, "q": 3})")); }) == Errc::ParseError);
}

TEST_CASE("json text layer: parse errors, canonical dumps, file IO") {
  CHECK(code_of([] { json_parse("{oops"); }) == Errc::ParseError);
  CHECK(json_parse("[1, 2]") == Json::array({1, 2}));
  CHECK(json_dumps(Json{{"a", 1}}) == "{\n  \"a\": 1\n}\n");

  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "bratteli_serialize_test";
  fs::create_directories(dir);
  std::string path = (dir / "roundtrip.json").string();
  write_json_file(path, Json{{"k", "v"}});
  CHECK(read_json_file(path) == Json{{"k", "v"}});
  CHECK(read_text_file(path) == "{\n  \"k\": \"v\"\n}\n");
  CHECK_FALSE(fs::exists(dir / "roundtrip.json.tmp"));

  CHECK(code_of([&] { read_text_file((dir / "absent.json").string()); }) == Errc::IoError);
  CHECK(code_of([&] {
          write_text_file((dir / "no_dir" / "x.json").string(), "data");
        }) == Errc::IoError);
  fs::remove_all(dir);
}
