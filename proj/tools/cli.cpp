#include "cli.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bratteli/serialize.hpp"

namespace bratteli::cli {

namespace {

struct RunConfig {
  Int budget_dim = 60;
  int budget_width = 6;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out_path;
  std::string format = "json";
};

// Absence searches above this total size are refused rather than left to
// run for hours; the acceptance bound (60) sits far below it.
constexpr Int kSearchCap = 100000;

void check_budgets(const RunConfig& cfg) {
  if (cfg.budget_dim < 1 || cfg.budget_width < 1)
    fail(Errc::NonPositive, "budgets must be positive");
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    fail(Errc::ParseError, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer())
    fail(Errc::ParseError, std::string("field \"") + key + "\" must be an integer");
  return v.get<Int>();
}

std::string weights_str(const RationalTrace& t) {
  std::string out;
  for (size_t i = 0; i < t.weights.size(); ++i) {
    if (i) out += ", ";
    out += rat_str(t.weights[i]);
  }
  return out;
}

RationalTrace parse_trace_flag(const std::string& text) {
  std::vector<Rat> weights;
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    std::string part = text.substr(start, comma == std::string::npos ? comma : comma - start);
    weights.push_back(rat_parse(part));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return make_trace(weights);
}

// Result goes to stdout and, when --out was given, to the file as well.
void emit(const RunConfig& cfg, std::ostream& out, const Json& payload,
          const std::string& text_form = "") {
  std::string body = cfg.format == "text" && !text_form.empty() ? text_form : json_dumps(payload);
  out << body;
  if (!cfg.out_path.empty()) write_text_file(cfg.out_path, body);
}

// The one place the trace data is compared before any shape bookkeeping:
// a problem whose two legs force different traces on the source is
// impossible, and the diagnostic must show the two forced traces.
void require_compatible_traces(const TracedProblem& p) {
  RationalTrace via_b = pushforward_trace(p.phi, p.beta);
  RationalTrace via_c = pushforward_trace(p.psi, p.gamma);
  if (via_b.weights != via_c.weights)
    fail(Errc::TraceNotPreservable,
         "the two embeddings force different traces on the common subalgebra: (" +
             weights_str(via_b) + ") through B versus (" + weights_str(via_c) + ") through C");
  if (via_b.weights != p.alpha.weights)
    fail(Errc::NotTracePreserving, "both embeddings force the trace (" + weights_str(via_b) +
                                       "), but the distinguished trace is (" +
                                       weights_str(p.alpha) + ")");
}

int cmd_amalgamate(const RunConfig& cfg, const std::string& input, bool full,
                   std::ostream& out) {
  TracedProblem p = problem_of_json(read_json_file(input));
  require_compatible_traces(p);
  if (full) {
    AmalgamResult result = amalgamate_width_n(p, cfg.budget_width);
    emit(cfg, out, json_of_amalgam_result(result));
  } else {
    MatrixAmalgamSolution sol = solve_matrix_amalgam(p);
    emit(cfg, out, json_of_solution(sol));
  }
  return 0;
}

int cmd_verify_counterexample(const RunConfig& cfg, std::ostream& out) {
  if (cfg.budget_dim > kSearchCap)
    fail(Errc::BudgetExceeded, "absence search is capped at total size " +
                                   std::to_string(kSearchCap) + ", got " +
                                   std::to_string(cfg.budget_dim));
  FdAlgebra a = make_algebra({1, 1});
  FdAlgebra b = make_algebra({2});
  FdAlgebra c = make_algebra({3});
  BratteliMap phi = make_embedding(a, b, {{1, 1}});
  BratteliMap psi = make_embedding(a, c, {{1, 2}});
  RationalTrace via_b = pushforward_trace(phi, make_trace({Rat(1)}));
  RationalTrace via_c = pushforward_trace(psi, make_trace({Rat(1)}));
  bool obstruction = via_b.weights != via_c.weights;

  BruteforceOutcome search = find_exact_amalgam_bruteforce(phi, psi, cfg.budget_dim);
  // Every candidate target summand must host M_2 and M_3 unitally, so its
  // size is a multiple of 6; budgets below 6 leave nothing to search.
  bool small_bound = cfg.budget_dim < 6;
  bool confirmed = obstruction && !search.found;

  Json report;
  report["trace_obstruction"] =
      Json{{"via_b", json_of_trace(via_b)},
           {"via_c", json_of_trace(via_c)},
           {"distinct", obstruction}};
  report["search"] = Json{{"max_total_size", cfg.budget_dim},
                          {"found", search.found},
                          {"work", search.work},
                          {"small_bound", small_bound}};
  report["confirmed"] = confirmed;
  std::string text = confirmed
                         ? "confirmed: trace obstruction " + rat_str(via_b.weights[0]) + " != " +
                               rat_str(via_c.weights[0]) + " and no amalgam up to total dimension " +
                               std::to_string(cfg.budget_dim) + "\n"
                         : "not confirmed\n";
  emit(cfg, out, report, text);
  return confirmed ? 0 : 2;
}

bool chain_is_width_one(const InductiveChain& chain) {
  for (const FdAlgebra& stage : chain.stages)
    if (stage.width() != 1) return false;
  return true;
}

void append_certificates(Json& payload, const InductiveChain& chain) {
  payload["k0"] = json_of_k0(k0_of_chain(chain));
  payload["simplicity"] = json_of_simplicity(simplicity_certificate(chain));
  if (chain.descriptor.unital)
    payload["diameters"] = json_of_diameters(trace_uniqueness_diameters(chain));
  if (chain_is_width_one(chain))
    payload["supernatural"] = json_of_supernatural_report(supernatural_of_chain(chain));
}

int cmd_build(const RunConfig& cfg, const std::string& cls, const std::string& program,
              Int n, const std::string& trace, Int length, const std::string& dot_path,
              bool certify, std::ostream& out) {
  InductiveChain chain;
  if (cls == "uhf") {
    if (program.empty()) fail(Errc::ParseError, "--class uhf needs --program");
    chain = build_uhf_chain(parse_supernatural(program), length);
  } else if (cls == "width") {
    if (n == 0 || trace.empty()) fail(Errc::ParseError, "--class width needs --n and --trace");
    chain = build_width_class_chain(n, parse_trace_flag(trace), length);
  } else if (cls == "commutative") {
    chain = build_commutative_chain(length);
  } else if (cls == "compacts") {
    chain = build_compacts_chain(length);
  } else if (cls == "factors") {
    chain = build_factors_chain(length);
  } else {
    fail(Errc::ParseError, "unknown class \"" + cls + "\"");
  }
  Json payload = json_of_chain(chain);
  if (certify) append_certificates(payload, chain);
  if (!dot_path.empty()) write_text_file(dot_path, dot_of_chain(chain));
  emit(cfg, out, payload);
  return 0;
}

int cmd_certify(const RunConfig& cfg, const std::string& input, std::ostream& out) {
  InductiveChain chain = chain_of_json(read_json_file(input));
  Json payload = json_of_chain(chain);
  append_certificates(payload, chain);
  emit(cfg, out, payload);
  return 0;
}

int cmd_export_dot(const RunConfig& cfg, const std::string& input, std::ostream& out) {
  InductiveChain chain = chain_of_json(read_json_file(input));
  std::string dot = dot_of_chain(chain);
  out << dot;
  if (!cfg.out_path.empty()) write_text_file(cfg.out_path, dot);
  return 0;
}

int cmd_homogeneity(const RunConfig& cfg, const std::string& input, std::ostream& out) {
  Json j = read_json_file(input);
  InductiveChain chain = chain_of_json(field(j, "chain"));
  BratteliMap f = map_of_json(field(j, "f"));
  BratteliMap g = map_of_json(field(j, "g"));
  Int stage = int_field(j, "stage");
  Int push_to = int_field(j, "push_to");
  HomogeneityResult result = homogeneity_check(chain, f, g, stage, push_to);
  emit(cfg, out, json_of_homogeneity(result));
  return 0;
}

int cmd_dimdrop(const RunConfig& cfg, const std::string& input, std::ostream& out) {
  Json j = read_json_file(input);
  DimDropElement element = element_of_json(field(j, "element"));
  QuantileMeasure measure =
      j.contains("measure") ? measure_of_json(j.at("measure")) : lebesgue_measure();
  Rat trace = trace_eval(element, measure);
  emit(cfg, out, Json{{"trace", rat_str(trace)}}, rat_str(trace) + "\n");
  return 0;
}

int cmd_demo_ramsey(const RunConfig& cfg, Int k, Int n, const std::string& coloring,
                    Int samples, std::ostream& out) {
  if (!cfg.seed_set) fail(Errc::ParseError, "demo-ramsey needs an explicit --seed");
  ColoringKind kind;
  if (coloring == "constant")
    kind = ColoringKind::Constant;
  else if (coloring == "distance")
    kind = ColoringKind::DistanceToReference;
  else if (coloring == "trace-poly")
    kind = ColoringKind::TracePolynomial;
  else
    fail(Errc::ParseError, "unknown coloring \"" + coloring + "\"");
  RamseyReport report = ramsey_oscillation_demo(k, n, kind, samples, cfg.seed);
  emit(cfg, out, json_of_ramsey(report));
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Exact toolkit for finite-dimensional C*-algebra data: amalgamation, "
               "inductive chains with certificates, numeric realizations, and "
               "dimension-drop traces"};
  app.require_subcommand(1);
  app.add_option("--budget-dim", cfg.budget_dim, "total-dimension cap for searches");
  app.add_option("--budget-width", cfg.budget_width, "width cap for amalgam targets");
  auto* seed_opt = app.add_option("--seed", cfg.seed, "PRNG seed for randomized commands");
  app.add_option("--out", cfg.out_path, "write the result to this file as well");
  app.add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"json", "dot", "text"}));

  int exit_code = 0;

  // Subcommand callbacks fire inside app.parse(), so global state derived
  // from options has to be synced at the top of every callback.
  auto prepare = [&] {
    cfg.seed_set = seed_opt->count() > 0;
    check_budgets(cfg);
  };

  auto* amalgamate = app.add_subcommand("amalgamate", "solve a traced amalgamation problem");
  std::string amalgamate_input;
  bool amalgamate_full = false;
  amalgamate->add_option("input", amalgamate_input, "problem file")->required();
  amalgamate->add_flag("--full", amalgamate_full, "emit the full width-n construction record");
  amalgamate->callback(
      [&] { prepare();
        exit_code = cmd_amalgamate(cfg, amalgamate_input, amalgamate_full, out); });

  auto* verify = app.add_subcommand(
      "verify-counterexample",
      "check the built-in amalgamation obstruction and absence search");
  verify->callback([&] {
    prepare();
    exit_code = cmd_verify_counterexample(cfg, out);
  });

  auto* build = app.add_subcommand("build", "construct an inductive chain");
  std::string build_class, build_program, build_trace, build_dot;
  Int build_n = 0, build_length = 6;
  bool build_certify = false;
  build->add_option("--class", build_class, "uhf | width | commutative | compacts | factors")
      ->required();
  build->add_option("--program", build_program, "supernatural number, e.g. \"2^inf*3\"");
  build->add_option("--n", build_n, "seed width for --class width");
  build->add_option("--trace", build_trace, "seed trace, e.g. \"1/3,2/3\"");
  build->add_option("--length", build_length, "number of stages");
  build->add_option("--dot", build_dot, "also write the Bratteli diagram here");
  build->add_flag("--certify", build_certify, "append K0, simplicity, and diameter reports");
  build->callback([&] {
    prepare();
    exit_code = cmd_build(cfg, build_class, build_program, build_n, build_trace, build_length,
                          build_dot, build_certify, out);
  });

  auto* certify = app.add_subcommand("certify", "compute certificates for a stored chain");
  std::string certify_input;
  certify->add_option("input", certify_input, "chain file")->required();
  certify->callback([&] {
    prepare();
    exit_code = cmd_certify(cfg, certify_input, out);
  });

  auto* homogeneity =
      app.add_subcommand("homogeneity", "conjugate two maps after pushing along a chain");
  std::string homogeneity_input;
  homogeneity->add_option("input", homogeneity_input, "problem file")->required();
  homogeneity->callback([&] {
    prepare();
    exit_code = cmd_homogeneity(cfg, homogeneity_input, out);
  });

  auto* dimdrop = app.add_subcommand("dimdrop", "evaluate a dimension-drop trace exactly");
  std::string dimdrop_input;
  dimdrop->add_option("input", dimdrop_input, "element and measure file")->required();
  dimdrop->callback([&] {
    prepare();
    exit_code = cmd_dimdrop(cfg, dimdrop_input, out);
  });

  auto* demo = app.add_subcommand("demo-ramsey", "sample coloring oscillation over Haar unitaries");
  Int demo_k = 2, demo_n = 4, demo_samples = 100;
  std::string demo_coloring = "distance";
  demo->add_option("--k", demo_k, "source matrix size");
  demo->add_option("--n", demo_n, "target matrix size");
  demo->add_option("--coloring", demo_coloring, "constant | distance | trace-poly");
  demo->add_option("--samples", demo_samples, "number of Haar samples");
  demo->callback(
      [&] {
    prepare();
    exit_code = cmd_demo_ramsey(cfg, demo_k, demo_n, demo_coloring, demo_samples, out);
  });

  auto* export_dot = app.add_subcommand("export-dot", "emit the Bratteli diagram of a chain");
  std::string export_input;
  export_dot->add_option("input", export_input, "chain file")->required();
  export_dot->callback([&] {
    prepare();
    exit_code = cmd_export_dot(cfg, export_input, out);
  });

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return static_cast<int>(e.error_class());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}

}  // namespace bratteli::cli
