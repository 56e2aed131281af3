#include "ptsep_cli/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>

#include <CLI11.hpp>

#include "ptsep/closures.hpp"
#include "ptsep/constructions.hpp"
#include "ptsep/error.hpp"
#include "ptsep/operations.hpp"
#include "ptsep/oracles.hpp"
#include "ptsep/prefix_towers.hpp"
#include "ptsep/pt_check.hpp"

#ifndef PTSEP_VERSION
#define PTSEP_VERSION "0.0.0"
#endif

namespace ptsep::cli {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Outcome {
  Json body = Json::object();
  Json timings = Json::object();
  int code = 0;
};

Automaton load_automaton(const std::string& path) {
  const Json j = read_json_file(path);
  try {
    return automaton_from_json(j);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

template <class F>
auto load_with(const std::string& path, F parse) {
  const Json j = read_json_file(path);
  try {
    return parse(j);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

Json describe(const Automaton& a, const std::string& file) {
  return Json{{"file", file},
              {"states", a.state_count()},
              {"alphabet", a.alphabet_size()},
              {"deterministic", a.is_structurally_deterministic()}};
}

Json pair_json(ProductState s) { return Json::array({s.left, s.right}); }

void write_automaton(const fs::path& path, const Automaton& a, Json& files) {
  write_json_file(path, automaton_to_json(a));
  files.push_back(path.string());
}

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
  std::string left, right, out;
  std::size_t witness_height = 3;
  std::size_t max_steps = 4096;
  bool no_separator = false;
};

Outcome analyze(const AnalyzeArgs& args, const Budget& budget) {
  Outcome o;
  auto [left, right] = align_alphabets(load_automaton(args.left), load_automaton(args.right));
  o.body["left"] = describe(left, args.left);
  o.body["right"] = describe(right, args.right);

  auto start = Clock::now();
  const RefinementChain chain = refinement_chain(left, right, args.max_steps, budget);
  o.timings["chain_ms"] = ms_since(start);
  if (chain.verdict == ChainVerdict::budget_exhausted) {
    throw Error(ErrorKind::budget_exceeded,
                "no verdict after " + std::to_string(chain.steps.size()) + " refinement steps");
  }
  o.body["verdict"] = to_string(chain.verdict);
  o.body["separable"] = chain.verdict == ChainVerdict::separable;
  o.body["index"] = chain.index;
  Json steps = Json::array();
  steps.push_back({{"step", 0}, {"left_states", chain.left0.state_count()},
                   {"right_states", chain.right0.state_count()}});
  for (std::size_t k = 0; k < chain.steps.size(); ++k) {
    steps.push_back({{"step", k + 1}, {"left_states", chain.steps[k].left.state_count()},
                     {"right_states", chain.steps[k].right.state_count()}});
  }
  o.body["chain"] = std::move(steps);

  if (chain.verdict == ChainVerdict::separable) {
    o.code = 0;
    if (args.no_separator) {
      return o;
    }
    start = Clock::now();
    const Automaton sep = build_separator(chain, budget);
    o.timings["separator_ms"] = ms_since(start);
    start = Clock::now();
    Json audit{{"contains_right", includes(sep, right, budget)},
               {"disjoint_from_left", is_empty(intersection(sep, left))},
               {"piecewise_testable", is_piecewise_testable(sep, budget)}};
    audit["ok"] = audit["contains_right"].get<bool>() && audit["disjoint_from_left"].get<bool>() &&
                  audit["piecewise_testable"].get<bool>();
    o.timings["audit_ms"] = ms_since(start);
    o.body["separator"] = {{"states", sep.state_count()}, {"file", args.out.empty() ? Json() : Json(args.out)},
                           {"audit", audit}};
    if (!args.out.empty()) {
      write_json_file(args.out, automaton_to_json(sep));
    }
    if (!audit["ok"].get<bool>()) {
      throw Error(ErrorKind::precondition, "separator failed its audit");
    }
  } else {
    o.code = 1;
    const Tower tower = witness_tower(chain, args.witness_height);
    o.body["witness"] = {{"height", tower.height()},
                         {"verified", verify_tower(left, right, tower)},
                         {"tower", tower_to_json(tower, left.alphabet())}};
  }
  return o;
}

// --------------------------------------------------------- prefix-analyze

struct PrefixArgs {
  std::string left, right;
  std::size_t count = 5;
  bool minimize = false;
};

Outcome prefix_analyze(const PrefixArgs& args, const Budget& budget) {
  Outcome o;
  auto [left, right] = align_alphabets(load_automaton(args.left), load_automaton(args.right));
  if (args.minimize) {
    left = minimal_dfa(left, budget);
    right = minimal_dfa(right, budget);
  }
  o.body["left"] = describe(left, args.left);
  o.body["right"] = describe(right, args.right);

  auto start = Clock::now();
  const std::optional<Pattern> pattern = find_pattern(left, right);
  o.timings["pattern_ms"] = ms_since(start);
  if (pattern) {
    const Alphabet& sigma = left.alphabet();
    const Tower tower = materialize_prefix_tower(*pattern, args.count);
    o.body["pattern"] = {
        {"component_size", pattern->scc.size()},
        {"states",
         {{"sigma", pair_json(pattern->sigma)},
          {"sigma1", pair_json(pattern->sigma1)},
          {"sigma2", pair_json(pattern->sigma2)},
          {"tau", pair_json(pattern->tau)},
          {"tau1", pair_json(pattern->tau1)},
          {"tau2", pair_json(pattern->tau2)}}},
        {"words",
         {{"u", word_names(sigma, pattern->u)},
          {"x", word_names(sigma, pattern->x)},
          {"y", word_names(sigma, pattern->y)},
          {"u1", word_names(sigma, pattern->u1)},
          {"u2", word_names(sigma, pattern->u2)}}},
        {"tower_verified", verify_tower(left, right, tower)},
        {"tower", tower_to_json(tower, sigma)}};
  } else {
    o.body["pattern"] = nullptr;
  }

  start = Clock::now();
  const PrefixHeight height = max_prefix_tower_height(left, right, budget);
  o.timings["height_ms"] = ms_since(start);
  o.body["infinite"] = height.infinite;
  o.body["height"] = height.infinite ? Json() : Json(height.height);
  o.body["product_states"] = height.product_states;

  const std::uint64_t m = left.state_count();
  const std::uint64_t n = right.state_count();
  const bool dfas = left.is_structurally_deterministic() && right.is_structurally_deterministic();
  const BigInt nfa_bound = prefix_height_nfa_bound(m, n);
  Json bounds{{"half_product", prefix_height_dfa_bound(m, n)},
              {"applies_half_product", dfas},
              {"product_states", height.product_states},
              {"nfa", big_to_json(nfa_bound)}};
  if (!height.infinite) {
    bounds["ok"] = dfas ? height.height <= prefix_height_dfa_bound(m, n) : nfa_bound >= height.height;
  }
  o.body["bounds"] = std::move(bounds);
  o.code = height.infinite ? 1 : 0;
  return o;
}

// --------------------------------------------------------------- pt-check

Outcome pt_check(const std::string& file, const Budget& budget) {
  Outcome o;
  const Automaton a = load_automaton(file);
  o.body["input"] = describe(a, file);
  const auto start = Clock::now();
  const Automaton dfa = minimal_dfa(a, budget);
  const PtVerdict verdict = check_pt_minimal_dfa(dfa);
  o.timings["check_ms"] = ms_since(start);
  o.body["minimal_states"] = dfa.state_count();
  o.body["piecewise_testable"] = verdict.piecewise_testable;
  if (verdict.violation) {
    o.body["violation"] = {{"condition", verdict.violation->condition},
                           {"states", verdict.violation->states}};
  } else {
    o.body["violation"] = nullptr;
  }
  o.code = verdict.piecewise_testable ? 0 : 1;
  return o;
}

// --------------------------------------------------------------- generate

struct GenerateArgs {
  std::string family;
  std::size_t param = 0;
  std::string out_dir = ".";
};

FamilyInstance generate_family(const std::string& family, std::size_t param) {
  if (family == "quadratic") {
    return gen_quadratic(param);
  }
  if (family == "exp") {
    return gen_exp(param);
  }
  if (family == "2exp") {
    return gen_2exp(param);
  }
  return gen_expdfa(param);
}

Outcome generate(const GenerateArgs& args) {
  Outcome o;
  const FamilyInstance inst = generate_family(args.family, args.param);
  const fs::path dir(args.out_dir);
  fs::create_directories(dir);
  const std::string stem = args.family + "_" + std::to_string(args.param);
  Json files = Json::array();
  write_automaton(dir / (stem + "_left.json"), inst.left, files);
  write_automaton(dir / (stem + "_right.json"), inst.right, files);
  if (inst.tower) {
    const fs::path path = dir / (stem + "_tower.json");
    write_json_file(path, tower_to_json(*inst.tower, inst.left.alphabet()));
    files.push_back(path.string());
  }
  o.body["family"] = args.family;
  o.body["param"] = args.param;
  o.body["states_left"] = inst.left.state_count();
  o.body["states_right"] = inst.right.state_count();
  o.body["alphabet"] = inst.left.alphabet_size();
  o.body["tower_height"] = inst.tower ? inst.tower->height() : 0;
  o.body["expected_height"] = inst.expected_height;
  o.body["files"] = std::move(files);
  return o;
}

// ----------------------------------------------------------------- reduce

struct ReduceArgs {
  std::string kind, input, out_dir = ".";
  bool no_pad = false;
  bool deterministic = false;
};

Outcome reduce(const ReduceArgs& args) {
  Outcome o;
  const fs::path dir(args.out_dir);
  fs::create_directories(dir);
  const std::string stem = fs::path(args.input).stem().string() + "_" + args.kind;
  Json files = Json::array();
  o.body["kind"] = args.kind;
  o.body["input"] = args.input;
  if (args.kind == "mcvp") {
    const Circuit c = load_with(args.input, circuit_from_json);
    const AutomatonPair pair = gen_mcvp(c, !args.no_pad);
    write_automaton(dir / (stem + "_left.json"), pair.left, files);
    write_automaton(dir / (stem + "_right.json"), pair.right, files);
    o.body["gates"] = c.gates.size();
    o.body["value"] = eval_circuit(c);
    o.body["states_left"] = pair.left.state_count();
    o.body["states_right"] = pair.right.state_count();
  } else if (args.kind == "reach") {
    const GraphInstance g = load_with(args.input, graph_from_json);
    const AutomatonPair pair = gen_reachability(g.graph, g.source, g.target, args.deterministic);
    write_automaton(dir / (stem + "_left.json"), pair.left, files);
    write_automaton(dir / (stem + "_right.json"), pair.right, files);
    o.body["vertices"] = g.graph.vertices;
    o.body["reachable"] = reachability(g.graph, g.source, g.target);
    o.body["states_left"] = pair.left.state_count();
    o.body["states_right"] = pair.right.state_count();
  } else {
    const Automaton a = load_automaton(args.input);
    const Automaton out = gen_universality(a);
    write_automaton(dir / (stem + ".json"), out, files);
    o.body["states"] = out.state_count();
    o.body["alphabet"] = out.alphabet_size();
  }
  o.body["files"] = std::move(files);
  return o;
}

// ----------------------------------------------------------- verify-tower

struct VerifyArgs {
  std::string left, right, tower;
};

Outcome verify(const VerifyArgs& args) {
  Outcome o;
  auto [left, right] = align_alphabets(load_automaton(args.left), load_automaton(args.right));
  const Tower tower =
      load_with(args.tower, [&](const Json& j) { return tower_from_json(j, left.alphabet()); });
  const TowerCheck check = check_tower(left, right, tower);
  o.body["relation"] = to_string(tower.relation);
  o.body["height"] = tower.height();
  o.body["ok"] = check.ok;
  if (!check.ok) {
    o.body["index"] = check.index;
    o.body["diagnostic"] = check.diagnostic;
  }
  const BigInt bound =
      upper_bound_height(std::max(left.state_count(), right.state_count()), left.alphabet_size());
  o.body["upper_bound"] = big_to_json(bound);
  o.body["bound_ok"] = bound >= tower.height();
  o.code = check.ok ? 0 : 1;
  return o;
}

// ------------------------------------------------------------------ bench

struct BenchArgs {
  std::string suite = "all";
  std::string range;
  std::string csv;
};

std::vector<std::size_t> parse_range(const std::string& family, const std::string& text) {
  std::size_t lo = 0;
  std::size_t hi = 0;
  const auto dots = text.find("..");
  try {
    lo = std::stoul(text.substr(0, dots));
    hi = dots == std::string::npos ? lo : std::stoul(text.substr(dots + 2));
  } catch (const std::exception&) {
    throw Error(ErrorKind::precondition, "bad range '" + text + "', expected a..b");
  }
  std::vector<std::size_t> params;
  for (std::size_t p = lo; p <= hi; ++p) {
    if (family != "quadratic" || p % 2 == 0) {
      params.push_back(p);
    }
  }
  return params;
}

Outcome bench(const BenchArgs& args) {
  Outcome o;
  std::vector<std::string> families{args.suite};
  if (args.suite == "all") {
    if (!args.range.empty()) {
      throw Error(ErrorKind::precondition, "--range needs a single suite");
    }
    families = {"quadratic", "exp", "2exp", "expdfa"};
  }
  std::ofstream csv;
  if (!args.csv.empty()) {
    csv.open(args.csv);
    if (!csv) {
      throw Error(ErrorKind::io, "cannot write " + args.csv);
    }
    csv << bench_csv_header << '\n';
  }
  Json rows = Json::array();
  Json row_ms = Json::array();
  bool all_ok = true;
  for (const std::string& family : families) {
    const auto params = args.range.empty() ? default_bench_range(family) : parse_range(family, args.range);
    for (std::size_t p : params) {
      const BenchRow row = bench_instance(family, p);
      rows.push_back({{"family", row.family},
                      {"param", row.param},
                      {"states_left", row.states_left},
                      {"states_right", row.states_right},
                      {"alphabet", row.alphabet},
                      {"verified_height", row.verified_height},
                      {"expected_height", row.expected_height},
                      {"upper_bound", big_to_json(row.upper_bound)},
                      {"bound_ok", row.bound_ok}});
      row_ms.push_back(row.runtime_ms);
      all_ok = all_ok && row.bound_ok && row.verified_height == row.expected_height;
      if (csv.is_open()) {
        csv << bench_csv_line(row) << '\n';
      }
    }
  }
  o.body["suite"] = args.suite;
  o.body["rows"] = std::move(rows);
  o.body["all_ok"] = all_ok;
  if (!args.csv.empty()) {
    o.body["csv"] = args.csv;
  }
  o.timings["rows_ms"] = std::move(row_ms);
  o.code = all_ok ? 0 : 1;
  return o;
}

// ----------------------------------------------------------------- oracle

struct OracleArgs {
  std::string kind;
  std::vector<std::string> files;
  std::size_t max_len = 6;
  std::string relation = "subsequence";
};

Outcome oracle(const OracleArgs& args, const Budget& budget) {
  Outcome o;
  const std::size_t needed = args.kind == "height" ? 2 : 1;
  if (args.files.size() != needed) {
    throw Error(ErrorKind::precondition,
                "oracle " + args.kind + " takes " + std::to_string(needed) + " input file(s)");
  }
  o.body["kind"] = args.kind;
  if (args.kind == "enumerate") {
    const Automaton a = load_automaton(args.files[0]);
    const std::vector<Word> words = enumerate_language(a, args.max_len, budget);
    Json list = Json::array();
    for (const Word& w : words) {
      list.push_back(format_word(a.alphabet(), w));
    }
    o.body["max_len"] = args.max_len;
    o.body["count"] = words.size();
    o.body["words"] = std::move(list);
  } else if (args.kind == "height") {
    auto [left, right] = align_alphabets(load_automaton(args.files[0]), load_automaton(args.files[1]));
    const TowerRelation rel =
        args.relation == "prefix" ? TowerRelation::prefix : TowerRelation::subsequence;
    const BruteHeight h = brute_max_tower_height(left, right, rel, args.max_len, budget);
    o.body["relation"] = to_string(rel);
    o.body["max_len"] = args.max_len;
    o.body["result"] = to_string(h.kind);
    o.body["height"] = h.height;
  } else {
    const GraphInstance g = load_with(args.files[0], graph_from_json);
    const bool reachable = reachability(g.graph, g.source, g.target);
    o.body["source"] = g.source;
    o.body["target"] = g.target;
    o.body["reachable"] = reachable;
    o.code = reachable ? 0 : 1;
  }
  return o;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Piecewise testable separability toolkit", "ptsep"};
  app.set_version_flag("--version", std::string("ptsep ") + PTSEP_VERSION);
  app.set_config("--config", "", "TOML-style file with option values");
  app.require_subcommand(1);
  app.fallthrough();

  bool json = false;
  Budget budget = default_budget();
  app.add_flag("--json", json, "Print the report as JSON instead of a table");
  app.add_option("--max-subsets", budget.max_subsets, "Cap on subset-construction states")
      ->capture_default_str();
  app.add_option("--max-words", budget.max_words, "Cap on enumerated words")->capture_default_str();

  std::function<Outcome()> action;

  AnalyzeArgs an;
  auto* analyze_cmd = app.add_subcommand("analyze", "Decide PT-separability and build a separator");
  analyze_cmd->add_option("left", an.left, "Automaton JSON for L")->required()->check(CLI::ExistingFile);
  analyze_cmd->add_option("right", an.right, "Automaton JSON for R")->required()->check(CLI::ExistingFile);
  analyze_cmd->add_option("--out", an.out, "Write the separator automaton here");
  analyze_cmd->add_option("--witness-height", an.witness_height, "Witness tower height")->capture_default_str();
  analyze_cmd->add_option("--max-steps", an.max_steps, "Refinement step limit")->capture_default_str();
  analyze_cmd->add_flag("--no-separator", an.no_separator, "Report the verdict only");
  analyze_cmd->callback([&] { action = [&] { return analyze(an, budget); }; });

  PrefixArgs pa;
  auto* prefix_cmd = app.add_subcommand("prefix-analyze", "Prefix towers: pattern search and height");
  prefix_cmd->add_option("left", pa.left, "Automaton JSON")->required()->check(CLI::ExistingFile);
  prefix_cmd->add_option("right", pa.right, "Automaton JSON")->required()->check(CLI::ExistingFile);
  prefix_cmd->add_option("--count", pa.count, "Tower elements printed for a pattern")->capture_default_str();
  prefix_cmd->add_flag("--minimize", pa.minimize, "Replace both inputs by their minimal DFAs");
  prefix_cmd->callback([&] { action = [&] { return prefix_analyze(pa, budget); }; });

  std::string pt_file;
  auto* pt_cmd = app.add_subcommand("pt-check", "Is the language piecewise testable?");
  pt_cmd->add_option("file", pt_file, "Automaton JSON")->required()->check(CLI::ExistingFile);
  pt_cmd->callback([&] { action = [&] { return pt_check(pt_file, budget); }; });

  GenerateArgs ga;
  auto* gen_cmd = app.add_subcommand("generate", "Write a family instance and its tower");
  gen_cmd->add_option("--family", ga.family, "Family name")
      ->required()
      ->check(CLI::IsMember({"quadratic", "exp", "2exp", "expdfa"}));
  gen_cmd->add_option("--param", ga.param, "Family parameter")->required();
  gen_cmd->add_option("--out-dir", ga.out_dir, "Output directory")->capture_default_str();
  gen_cmd->callback([&] { action = [&] { return generate(ga); }; });

  ReduceArgs ra;
  auto* reduce_cmd = app.add_subcommand("reduce", "Build the automata of a reduction");
  reduce_cmd->add_option("--kind", ra.kind, "Reduction")
      ->required()
      ->check(CLI::IsMember({"mcvp", "reach", "universality"}));
  reduce_cmd->add_option("input", ra.input, "Circuit, graph or automaton JSON")
      ->required()
      ->check(CLI::ExistingFile);
  reduce_cmd->add_option("--out-dir", ra.out_dir, "Output directory")->capture_default_str();
  reduce_cmd->add_flag("--no-pad", ra.no_pad, "mcvp: skip the padding letters");
  reduce_cmd->add_flag("--deterministic", ra.deterministic, "reach: build DFAs");
  reduce_cmd->callback([&] { action = [&] { return reduce(ra); }; });

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify-tower", "Check a tower against two automata");
  verify_cmd->add_option("left", va.left, "Automaton JSON")->required()->check(CLI::ExistingFile);
  verify_cmd->add_option("right", va.right, "Automaton JSON")->required()->check(CLI::ExistingFile);
  verify_cmd->add_option("tower", va.tower, "Tower JSON")->required()->check(CLI::ExistingFile);
  verify_cmd->callback([&] { action = [&] { return verify(va); }; });

  BenchArgs ba;
  auto* bench_cmd = app.add_subcommand("bench", "Verify family towers against expected heights and bounds");
  bench_cmd->add_option("--suite", ba.suite, "Family or all")
      ->check(CLI::IsMember({"quadratic", "exp", "2exp", "expdfa", "all"}))
      ->capture_default_str();
  bench_cmd->add_option("--range", ba.range, "Parameter range a..b");
  bench_cmd->add_option("--csv", ba.csv, "Write rows as CSV");
  bench_cmd->callback([&] { action = [&] { return bench(ba); }; });

  OracleArgs oa;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force oracles");
  oracle_cmd->add_option("--kind", oa.kind, "enumerate, height or reach")
      ->required()
      ->check(CLI::IsMember({"enumerate", "height", "reach"}));
  oracle_cmd->add_option("files", oa.files, "Input files")->required()->check(CLI::ExistingFile);
  oracle_cmd->add_option("--max-len", oa.max_len, "Word length limit")->capture_default_str();
  oracle_cmd->add_option("--relation", oa.relation, "Tower relation")
      ->check(CLI::IsMember({"subsequence", "prefix"}))
      ->capture_default_str();
  oracle_cmd->callback([&] { action = [&] { return oracle(oa, budget); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    const auto start = Clock::now();
    Outcome o = action();
    Json report{{"command", args}, {"version", PTSEP_VERSION}};
    for (auto& [key, value] : o.body.items()) {
      report[key] = std::move(value);
    }
    o.timings["total_ms"] = ms_since(start);
    report["timings"] = std::move(o.timings);
    if (json) {
      out << report.dump(2) << '\n';
    } else {
      render_table(report, out);
    }
    return o.code;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return 2;
}

} // namespace ptsep::cli
