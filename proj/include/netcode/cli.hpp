#pragma once

// Command-line front end. Exit status: 0 pass, 1 check failure, 2 usage or
// configuration error.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "netcode/acceptance.hpp"
#include "netcode/bounds.hpp"
#include "netcode/codes.hpp"
#include "netcode/graph.hpp"
#include "netcode/parallel.hpp"
#include "netcode/progression_free.hpp"
#include "netcode/protocols.hpp"
#include "netcode/verifier.hpp"

namespace netcode::cli {

enum ExitCode : int { kPass = 0, kFailure = 1, kUsage = 2 };

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string command;
  std::string graph;
  std::string code = "rep";
  std::string protocol;
  std::optional<std::size_t> m;
  std::optional<std::size_t> n;
  std::optional<std::string> k;
  std::optional<std::size_t> d;
  bool mds = false;
  std::size_t t = 1;
  std::size_t order = 3;
  std::string method = "auto";
  Budgets budgets;
  std::string format = "text";
  std::string output;
  std::size_t jobs = default_jobs();
  std::uint64_t seed = 1;
  bool timestamp = true;
  bool mutate = false;
  std::vector<int> criteria;

  /// Everything that determines the result; worker count and output path excluded.
  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    if (!graph.empty()) j["graph"] = graph;
    j["code"] = code;
    if (!protocol.empty()) j["protocol"] = protocol;
    if (m) j["m"] = *m;
    if (n) j["n"] = *n;
    if (k) j["k"] = *k;
    if (d) j["d"] = *d;
    j["mds"] = mds;
    j["t"] = t;
    j["budget_executions"] = budgets.executions;
    j["budget_codewords"] = budgets.codewords;
    j["budget_free_set_range"] = budgets.free_set_range;
    j["seed"] = seed;
    return j;
  }
};

/// A finished command: verdict plus the three renderings.
struct Outcome {
  bool passed = true;
  nlohmann::ordered_json json;
  std::string text;
  std::string csv;
};

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

/// Rows "scope,check,passed,key,value"; the summary and any counterexample are
/// rows with keys "summary" and "counterexample".
inline void report_csv_rows(std::ostringstream& out, const std::string& scope, const VerificationReport& r) {
  for (const auto& c : r.checks) {
    auto row = [&](const std::string& key, const std::string& value) {
      out << csv_field(scope) << ',' << csv_field(c.name) << ',' << (c.passed ? "true" : "false") << ','
          << csv_field(key) << ',' << csv_field(value) << '\n';
    };
    row("summary", c.summary);
    for (const auto& [k, v] : c.metrics) row(k, v);
    if (c.counterexample) row("counterexample", *c.counterexample);
  }
}

inline constexpr const char* kReportCsvHeader = "scope,check,passed,key,value\n";

inline Outcome from_report(const VerificationReport& r) {
  Outcome o;
  o.passed = r.passed();
  o.json = r.to_json();
  o.text = r.to_text();
  std::ostringstream csv;
  csv << kReportCsvHeader;
  report_csv_rows(csv, r.title, r);
  o.csv = csv.str();
  return o;
}

inline std::size_t need_m(const RunConfig& c) {
  if (!c.m) throw UsageError("--m is required");
  if (*c.m < 1 || *c.m > Symbol::kMaxWidth) throw UsageError("--m must be in [1, 32]");
  return *c.m;
}

inline Topology graph_of(const RunConfig& c) {
  if (c.graph.empty()) throw UsageError("--graph is required");
  return load_graph(c.graph);
}

inline Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      long v = std::stol(s, &used);
      if (used != s.size()) throw UsageError("bad rational " + s);
      return Rational(v);
    }
    long a = std::stol(s.substr(0, slash), &used);
    if (used != slash) throw UsageError("bad rational " + s);
    long b = std::stol(s.substr(slash + 1), &used);
    if (used != s.size() - slash - 1 || b == 0) throw UsageError("bad rational " + s);
    return Rational(a, b);
  } catch (const std::logic_error&) {
    throw UsageError("bad rational " + s);
  }
}

inline CodeSpec code_of(const RunConfig& c, std::size_t n) {
  if (c.code == "rep") return CodeSpec::repetition(n, need_m(c));
  if (c.code == "parity") return CodeSpec::parity_check(n, need_m(c));
  if (c.code == "mds") {
    if (!c.k) throw UsageError("--code mds needs --k");
    const auto k = parse_rational(*c.k);
    if (boost::multiprecision::denominator(k) != 1) throw UsageError("--code mds needs an integer --k");
    return CodeSpec::reed_solomon(n, static_cast<std::size_t>(boost::multiprecision::numerator(k)), need_m(c),
                                  c.budgets);
  }
  auto path = c.code.rfind("file:", 0) == 0 ? c.code.substr(5) : c.code;
  auto code = load_explicit_code(path, c.budgets);
  if (code.length() != n) throw UsageError("code file length does not match the graph");
  if (c.m && *c.m != code.width()) throw UsageError("--m disagrees with the code file");
  return code;
}

inline Outcome with_bounds(VerificationReport report, const Topology& g, const CodeSpec& code,
                           const std::string& protocol, const Rational& measured, const Budgets& budgets) {
  const auto bounds = compute_bounds(g, code, budgets);
  report.add(compare_to_bounds(protocol, measured, bounds));
  auto o = from_report(report);
  o.json["bounds"] = nlohmann::ordered_json::array();
  for (const auto& row : bounds.rows()) {
    o.json["bounds"].push_back({{"bound", row.bound}, {"value", row.value}, {"applicability", row.applicability}});
  }
  o.text += "\n" + bounds.to_text();
  return o;
}

}  // namespace detail

/// detect: builds the protocol and runs the exhaustive detection check.
inline Outcome cmd_detect(const RunConfig& c) {
  const auto g = detail::graph_of(c);
  const auto n = c.n.value_or(g.vertex_count());
  if (n != g.vertex_count()) throw UsageError("--n disagrees with the graph order");
  const auto code = detail::code_of(c, n);
  const auto m = code.width();
  const auto name = c.protocol.empty() ? std::string("trivial") : c.protocol;
  StaticSchedule p;
  if (name == "trivial") {
    p = trivial_detect(g, code);
  } else if (name == "parity") {
    if (code.family() != CodeSpec::Family::ParityCheck) throw UsageError("protocol parity needs --code parity");
    p = parity_protocol(g, m);
  } else if (name == "cycle" || name == "triangle") {
    if (code.family() != CodeSpec::Family::Repetition) throw UsageError("protocol " + name + " needs --code rep");
    if (name == "triangle") {
      if (n != 3) throw UsageError("protocol triangle needs a 3-vertex graph");
      p = triangle_protocol_full(m, g, c.budgets).protocol.detection;
    } else {
      p = cycle_detect(build_F(n, m, c.budgets), g);
    }
  } else {
    throw UsageError("unknown protocol '" + name + "' (trivial | parity | cycle | triangle)");
  }
  VerificationReport report;
  report.title = "detect " + p.name + " on " + c.graph + " with " + code.name();
  report.add(exhaustive_detect_check(p, g, code, c.budgets, c.jobs));
  return detail::with_bounds(std::move(report), g, code, p.name, normalized_cost(p, m), c.budgets);
}

/// correct: exhaustive single-error (or t=0) correction check.
inline Outcome cmd_correct(const RunConfig& c) {
  if (c.t > 1) throw UsageError("t=" + std::to_string(c.t) + " is out of contract: at most one error is corrected");
  const auto g = detail::graph_of(c);
  const auto n = g.vertex_count();
  const auto code = detail::code_of(c, n);
  const auto m = code.width();
  const auto name = c.protocol.empty() ? std::string("cycle") : c.protocol;
  AdaptiveProtocol p;
  if (name == "trivial") {
    p = trivial_correct(g, code, c.t, c.budgets);
  } else if (name == "cycle" || name == "triangle") {
    if (code.family() != CodeSpec::Family::Repetition) throw UsageError("protocol " + name + " needs --code rep");
    if (name == "triangle") {
      if (n != 3) throw UsageError("protocol triangle needs a 3-vertex graph");
      p = triangle_protocol_full(m, g, c.budgets).protocol;
    } else {
      p = cycle_correct(build_F(n, m, c.budgets), g);
    }
  } else {
    throw UsageError("unknown protocol '" + name + "' (trivial | cycle | triangle)");
  }
  VerificationReport report;
  report.title = "correct " + p.name + " on " + c.graph + " with " + code.name();
  report.add(exhaustive_correct_check(p, g, code, c.t, c.budgets, c.jobs));
  return detail::from_report(report);
}

/// bounds: every lower bound for (n, k, d) on the graph (default K_n).
inline Outcome cmd_bounds(const RunConfig& c) {
  std::optional<Topology> g;
  if (!c.graph.empty()) g = load_graph(c.graph);
  const std::size_t n = c.n ? *c.n : (g ? g->vertex_count() : 0);
  if (n < 2) throw UsageError("bounds needs --n or --graph");
  if (g && g->vertex_count() != n) throw UsageError("--n disagrees with the graph order");
  if (!g) g = Topology::complete(n);
  if (!c.k) throw UsageError("bounds needs --k");
  const auto k = detail::parse_rational(*c.k);
  std::optional<std::size_t> mds_k;
  std::size_t d = 0;
  if (c.mds) {
    if (boost::multiprecision::denominator(k) != 1) throw UsageError("--mds needs an integer --k");
    mds_k = static_cast<std::size_t>(boost::multiprecision::numerator(k));
    if (*mds_k < 1 || *mds_k >= n) throw UsageError("--mds needs 1 <= k < n");
    d = n - *mds_k + 1;
    if (c.d && *c.d != d) throw UsageError("--d contradicts d = n-k+1 for an MDS code");
  } else {
    if (!c.d) throw UsageError("bounds needs --d (or --mds)");
    d = *c.d;
  }
  if (d < 2 || d > n) throw UsageError("--d must lie in [2, n]");
  const auto r = compute_bounds(*g, n, k, d, mds_k, c.budgets);
  Outcome o;
  o.json["n"] = n;
  o.json["k"] = to_string(k);
  o.json["d"] = d;
  o.json["bounds"] = nlohmann::ordered_json::array();
  for (const auto& row : r.rows()) {
    o.json["bounds"].push_back({{"bound", row.bound}, {"value", row.value}, {"applicability", row.applicability}});
  }
  if (r.lp_detail) {
    nlohmann::ordered_json w = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < r.lp_detail->cuts.size(); ++i) {
      std::string side;
      for (auto v : r.lp_detail->cuts[i].side.members()) side += (side.empty() ? "" : " ") + std::to_string(v);
      w.push_back({{"S", side}, {"g", to_string(r.lp_detail->weights[i])}});
    }
    o.json["lp_weights"] = w;
    nlohmann::ordered_json t = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < g->edges().size(); ++i) {
      t.push_back({{"edge", to_string(g->edges()[i])}, {"t", to_string(r.lp_detail->edge_loads[i])}});
    }
    o.json["edge_loads"] = t;
  }
  o.text = r.to_text();
  o.csv = r.to_csv();
  return o;
}

/// verify-all: the acceptance criteria.
inline Outcome cmd_verify_all(const RunConfig& c) {
  AcceptanceConfig cfg{c.budgets, c.jobs, c.mutate};
  std::vector<int> ids = c.criteria;
  if (ids.empty()) {
    for (int id = 1; id <= kCriterionCount; ++id) ids.push_back(id);
  }
  Outcome o;
  o.json["criteria"] = nlohmann::ordered_json::array();
  std::ostringstream text, csv;
  csv << detail::kReportCsvHeader;
  for (int id : ids) {
    if (id < 1 || id > kCriterionCount) throw UsageError("no criterion " + std::to_string(id));
    const auto out = run_criterion(id, cfg);
    o.passed = o.passed && out.passed();
    nlohmann::ordered_json j;
    j["id"] = out.id;
    j["title"] = out.title;
    j["passed"] = out.passed();
    j["headline"] = out.headline;
    j["report"] = out.report.to_json();
    o.json["criteria"].push_back(j);
    text << "A" << id << (out.passed() ? " PASS " : " FAIL ") << out.title << " | " << out.headline << '\n';
    for (const auto& ch : out.report.checks) {
      if (ch.passed) continue;
      text << "    fail " << ch.name << ": " << ch.summary << '\n';
      if (ch.counterexample) {
        std::istringstream lines(*ch.counterexample);
        std::string line;
        while (std::getline(lines, line)) text << "      | " << line << '\n';
      }
    }
    detail::report_csv_rows(csv, "A" + std::to_string(id), out.report);
  }
  o.text = text.str();
  o.csv = csv.str();
  return o;
}

/// free-set: the free set chosen for the encoder, in the free-set file format.
inline Outcome cmd_free_set(const RunConfig& c) {
  const auto m = detail::need_m(c);
  FreeSetMethod method = FreeSetMethod::Auto;
  if (c.method == "exact") method = FreeSetMethod::Exact;
  else if (c.method == "behrend") method = FreeSetMethod::Behrend;
  else if (c.method != "auto") throw UsageError("--method must be auto, exact or behrend");
  const auto choice = smallest_range(m, c.order, c.budgets, method);
  Outcome o;
  o.json["range"] = choice.range;
  o.json["order"] = c.order;
  o.json["construction"] = choice.set.construction;
  o.json["members"] = choice.set.members;
  o.text = write_free_set(choice.set);
  std::ostringstream csv;
  csv << "index,member\n";
  for (std::size_t i = 0; i < choice.set.members.size(); ++i) csv << i << ',' << choice.set.members[i] << '\n';
  o.csv = csv.str();
  return o;
}

/// build-f: the partite graph F in its text format.
inline Outcome cmd_build_f(const RunConfig& c) {
  const auto m = detail::need_m(c);
  if (!c.n) throw UsageError("build-f needs --n");
  const auto f = build_F(*c.n, m, c.budgets);
  const auto rep = verify_properties(f, c.budgets);
  Outcome o;
  o.passed = rep.all();
  o.json["n"] = f.order();
  o.json["m"] = f.symbol_width();
  o.json["part_sizes"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < f.order(); ++i) o.json["part_sizes"].push_back(f.part(i).size());
  o.json["special_cycles"] = rep.special_cycles;
  o.json["cycles"] = f.cycles();
  o.text = f.to_text();
  std::ostringstream csv;
  csv << "symbol";
  for (std::size_t i = 0; i < f.order(); ++i) csv << ",part" << i + 1;
  csv << '\n';
  for (std::uint64_t x = 0; x < f.cycle_count(); ++x) {
    csv << x;
    for (auto l : f.cycle(x)) csv << ',' << l;
    csv << '\n';
  }
  o.csv = csv.str();
  return o;
}

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

/// Renders an outcome. The CSV rendering never carries a timestamp.
inline std::string render(const RunConfig& c, const Outcome& o) {
  if (c.format == "csv") return o.csv;
  if (c.format == "json") {
    nlohmann::ordered_json j;
    j["tool"] = "netcode";
    j["config"] = c.to_json();
    j["passed"] = o.passed;
    j["result"] = o.json;
    if (c.timestamp) j["generated_at"] = utc_timestamp();
    return j.dump(2) + "\n";
  }
  std::string head = c.command + ": " + (o.passed ? "PASS" : "FAIL") + "\n";
  if (c.timestamp) head += "generated_at: " + utc_timestamp() + "\n";
  return head + o.text;
}

inline Outcome dispatch(const RunConfig& c) {
  if (c.command == "detect") return cmd_detect(c);
  if (c.command == "correct") return cmd_correct(c);
  if (c.command == "bounds") return cmd_bounds(c);
  if (c.command == "verify-all") return cmd_verify_all(c);
  if (c.command == "free-set") return cmd_free_set(c);
  if (c.command == "build-f") return cmd_build_f(c);
  throw UsageError("unknown command " + c.command);
}

/// Full CLI: parse, run, write. Returns the process exit status.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Distributed error detection and correction protocols on graphs"};
  app.fallthrough();
  app.require_subcommand(1, 1);
  RunConfig c;
  if (const char* env = std::getenv("NETCODE_BUDGET")) {
    try {
      c.budgets.executions = std::stoull(env);
    } catch (const std::logic_error&) {
      err << "NETCODE_BUDGET must be a positive integer\n";
      return kUsage;
    }
  }
  std::optional<std::uint64_t> budget;
  std::optional<std::uint64_t> codeword_budget;
  std::optional<std::int64_t> free_range;
  bool no_timestamp = false;
  app.set_config("--config", "", "key=value configuration file; flags override it");
  app.add_option("--graph", c.graph, "cycle:n | complete:n | path:n | star:n | file:path");
  app.add_option("--code", c.code, "rep | parity | mds | file:path (explicit code)");
  app.add_option("--protocol", c.protocol, "trivial | parity | cycle | triangle");
  app.add_option("--m", c.m, "symbol width in bits");
  app.add_option("--n", c.n, "code length");
  app.add_option("--k", c.k, "dimension, integer or a/b");
  app.add_option("--d", c.d, "minimum distance");
  app.add_flag("--mds", c.mds, "treat (n, k) as an MDS code, d = n-k+1");
  app.add_option("--t", c.t, "errors to correct (0 or 1)");
  app.add_option("--order", c.order, "free-set order (cycle length)");
  app.add_option("--method", c.method, "free-set construction: auto | exact | behrend");
  app.add_option("--budget", budget, "protocol execution budget (overrides NETCODE_BUDGET)");
  app.add_option("--codeword-budget", codeword_budget, "codeword enumeration budget");
  app.add_option("--free-set-range", free_range, "largest N for the exact free-set search");
  app.add_option("--format", c.format, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--output", c.output, "write the report here instead of stdout");
  app.add_option("--jobs", c.jobs, "worker threads; results do not depend on it")->check(CLI::PositiveNumber);
  app.add_option("--seed", c.seed, "seed for smoke sampling only");
  app.add_flag("--no-timestamp", no_timestamp, "omit the generated_at field");
  app.add_subcommand("detect", "exhaustive detection check of a protocol");
  app.add_subcommand("correct", "exhaustive correction check of a protocol");
  app.add_subcommand("bounds", "lower bounds for an (n,k,d) code");
  auto* verify = app.add_subcommand("verify-all", "run every acceptance criterion");
  verify->add_flag("--mutate", c.mutate, "test hook: drop one local check of the triangle protocol");
  verify->add_option("--criteria", c.criteria, "subset of criterion ids");
  app.add_subcommand("free-set", "export the free set used by the encoder");
  app.add_subcommand("build-f", "export the partite graph F");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }
  c.command = app.get_subcommands().front()->get_name();
  if (budget) c.budgets.executions = *budget;
  if (codeword_budget) c.budgets.codewords = *codeword_budget;
  if (free_range) c.budgets.free_set_range = *free_range;
  c.timestamp = !no_timestamp;
  if (c.budgets.executions == 0 || c.budgets.codewords == 0 || c.budgets.free_set_range < 1) {
    err << "budgets must be positive\n";
    return kUsage;
  }

  Outcome o;
  try {
    o = dispatch(c);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParameterError& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kUsage;
  } catch (const CapacityError& e) {
    err << "over budget: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "check failed: " << e.what() << '\n';
    return kFailure;
  }
  const auto text = render(c, o);
  if (c.output.empty()) {
    out << text;
  } else {
    std::ofstream f(c.output, std::ios::binary);
    if (!f) {
      err << "cannot write " << c.output << '\n';
      return kUsage;
    }
    f << text;
  }
  return o.passed ? kPass : kFailure;
}

}  // namespace netcode::cli
