#pragma once

// The acceptance criteria as executable checks. Shared by the acceptance
// binary and the CLI's verify-all so both report identical results.

#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "netcode/bounds.hpp"
#include "netcode/protocols.hpp"
#include "netcode/verifier.hpp"

namespace netcode {

struct AcceptanceConfig {
  Budgets budgets;
  std::size_t jobs = 1;
  bool mutate = false;  // test hook: the triangle protocol loses one local check
};

struct CriterionOutcome {
  int id = 0;
  std::string title;
  std::string headline;  // the measured values that decide the criterion
  VerificationReport report;

  bool passed() const { return report.passed(); }
};

namespace detail {

inline CheckResult equality_check(const std::string& name, const std::string& measured, const std::string& expected) {
  CheckResult c;
  c.name = name;
  c.metric("measured", measured);
  c.metric("expected", expected);
  c.summary = measured + (measured == expected ? " == " : " != ") + expected;
  if (measured != expected) c.fail("measured " + measured + ", expected " + expected);
  return c;
}

inline CheckResult condition_check(const std::string& name, bool ok, const std::string& detail) {
  CheckResult c;
  c.name = name;
  c.summary = detail;
  if (!ok) c.fail(detail);
  return c;
}

inline std::string metric_of(const CheckResult& c, const std::string& key) {
  for (const auto& [k, v] : c.metrics) {
    if (k == key) return v;
  }
  throw ParameterError("missing metric " + key + " in " + c.name);
}

inline std::size_t metric_uint(const CheckResult& c, const std::string& key) {
  return static_cast<std::size_t>(std::stoull(metric_of(c, key)));
}

inline CycleProtocol acceptance_triangle(std::size_t m, const AcceptanceConfig& cfg) {
  auto tp = triangle_protocol_full(m, cfg.budgets);
  if (cfg.mutate) {
    tp.protocol.name += "-mutated";
    tp.protocol.detection.name += "-mutated";
    tp.protocol.detection.decisions.erase(tp.protocol.detection.decisions.begin());
  }
  return tp;
}

inline std::string bool_text(bool b) { return b ? "true" : "false"; }

}  // namespace detail

/// Triangle protocol: exhaustive detection and single-error correction at
/// m = 2..6, detection cost 3 ceil(log2 3N), worst total <= ceil(2.5m) + 24.
inline CriterionOutcome criterion_triangle(const AcceptanceConfig& cfg) {
  CriterionOutcome out{1, "triangle protocol detection and correction, m=2..6", "", {}};
  const auto g = Topology::cycle(3);
  std::ostringstream head;
  for (std::size_t m = 2; m <= 6; ++m) {
    const auto tp = detail::acceptance_triangle(m, cfg);
    const auto params = triangle_parameters(m, cfg.budgets);
    const auto code = CodeSpec::repetition(3, m);
    out.report.add(exhaustive_detect_check(tp.protocol.detection, g, code, cfg.budgets, cfg.jobs));
    auto corr = exhaustive_correct_check(tp.protocol, g, code, 1, cfg.budgets, cfg.jobs);
    const auto worst = detail::metric_uint(corr, "worst_bits");
    out.report.add(corr);
    const auto det = tp.protocol.detection.total_bits();
    out.report.add(detail::equality_check("triangle m=" + std::to_string(m) + " detection bits = 3 ceil(log2 3N)",
                                          std::to_string(det), std::to_string(3 * params.label_width)));
    const std::size_t cap = (5 * m + 1) / 2 + 24;
    out.report.add(detail::condition_check(
        "triangle m=" + std::to_string(m) + " worst total <= ceil(2.5m)+24", worst <= cap,
        "worst " + std::to_string(worst) + " bits, cap " + std::to_string(cap) + ", N=" +
            std::to_string(params.range)));
    head << " m=" << m << ":N=" << params.range << ",det=" << det << ",worst=" << worst << "/" << cap;
  }
  out.headline = head.str().substr(1);
  return out;
}

/// Cycle protocol: F properties, exhaustive detection and correction, cost
/// <= sum + 2 max of label widths with equality on the worst branch.
inline CriterionOutcome criterion_cycle(const AcceptanceConfig& cfg) {
  CriterionOutcome out{2, "cycle protocol: F properties, detection, correction, cost", "", {}};
  const std::vector<std::pair<std::size_t, std::size_t>> build_limits{{3, 8}, {4, 6}, {5, 4}};
  const std::vector<std::pair<std::size_t, std::size_t>> run_limits{{3, 6}, {4, 4}, {5, 3}};
  std::size_t built = 0;
  for (auto [n, max_m] : build_limits) {
    for (std::size_t m = 1; m <= max_m; ++m) {
      const auto enc = build_encoder(m, n, cfg.budgets);
      std::vector<std::vector<Label>> cycles;
      for (std::uint64_t x = 0; x < enc.symbol_count(); ++x) cycles.push_back(enc.tuple(x));
      const PartiteGraphF f(n, m, std::move(cycles));
      const auto rep = verify_properties(f, cfg.budgets);
      CheckResult c;
      c.name = "F(" + std::to_string(n) + "," + std::to_string(m) + ") properties (1)(2)(3)";
      c.metric("special_cycles", rep.special_cycles);
      c.summary = std::to_string(rep.special_cycles) + " special cycles";
      if (!rep.all()) {
        std::string why;
        for (const auto& s : rep.counterexamples) why += s + "\n";
        c.fail(why);
      }
      out.report.add(c);
      ++built;
    }
  }
  std::ostringstream head;
  head << built << " F graphs checked;";
  for (auto [n, max_m] : run_limits) {
    const auto g = Topology::cycle(n);
    for (std::size_t m = 1; m <= max_m; ++m) {
      const auto f = build_F(n, m, cfg.budgets);
      const auto p = cycle_correct(f, g);
      const auto code = CodeSpec::repetition(n, m);
      out.report.add(exhaustive_detect_check(p.detection, g, code, cfg.budgets, cfg.jobs));
      auto corr = exhaustive_correct_check(p, g, code, 1, cfg.budgets, cfg.jobs);
      const auto worst = detail::metric_uint(corr, "worst_bits");
      out.report.add(corr);
      const auto sum = f.total_label_width();
      const auto cap = sum + 2 * f.max_label_width();
      const auto tag = "C_" + std::to_string(n) + " m=" + std::to_string(m);
      out.report.add(detail::equality_check(tag + " detection bits = sum ceil(log2|I_i|)",
                                            std::to_string(p.detection.total_bits()), std::to_string(sum)));
      out.report.add(detail::equality_check(tag + " worst-case bits = sum + 2 max", std::to_string(worst),
                                            std::to_string(cap)));
      head << ' ' << n << '/' << m << ':' << worst << '/' << cap;
    }
  }
  out.headline = head.str();
  return out;
}

/// Parity protocol: cost exactly (n-1)m, exhaustive detection, linear.
inline CriterionOutcome criterion_parity(const AcceptanceConfig& cfg) {
  CriterionOutcome out{3, "parity protocol cost, detection and linearity", "", {}};
  std::ostringstream head;
  for (const std::string spec : {"cycle:4", "complete:4", "path:5", "complete:5"}) {
    const auto g = parse_builtin_graph(spec);
    const auto n = g.vertex_count();
    bool all_linear = true;
    for (std::size_t m = 1; m <= 3; ++m) {
      const auto p = parity_protocol(g, m);
      const auto tag = spec + " m=" + std::to_string(m);
      out.report.add(exhaustive_detect_check(p, g, CodeSpec::parity_check(n, m), cfg.budgets, cfg.jobs));
      out.report.add(detail::equality_check("parity " + tag + " bits = (n-1)m", std::to_string(p.total_bits()),
                                            std::to_string((n - 1) * m)));
      const bool lin = is_linear(p, g, m, cfg.budgets);
      all_linear = all_linear && lin;
      out.report.add(detail::equality_check("parity " + tag + " is_linear", detail::bool_text(lin), "true"));
    }
    head << ' ' << spec << ":linear=" << detail::bool_text(all_linear);
  }
  out.headline = head.str().substr(1);
  return out;
}

/// Exact bound values and LP certificates.
inline CriterionOutcome criterion_bounds(const AcceptanceConfig& cfg) {
  CriterionOutcome out{4, "exact lower bounds", "", {}};
  auto lp_checked = [&](const std::string& tag, const Topology& g, std::size_t n, const Rational& k, std::size_t d) {
    auto sol = lp_solution(g, n, k, d, cfg.budgets);
    if (!sol) throw ParameterError("acceptance: LP instance " + tag + " is inapplicable");
    // Certificate: g feasible, t feasible for the dual, objectives equal.
    bool ok = true;
    std::vector<Rational> load(g.edges().size(), 0);
    Rational primal = 0;
    for (std::size_t c = 0; c < sol->cuts.size(); ++c) {
      ok = ok && sol->weights[c] >= 0;
      primal += k * sol->weights[c];
      Rational covered = 0;
      for (const auto& e : sol->cuts[c].edges) {
        auto idx = static_cast<std::size_t>(std::lower_bound(g.edges().begin(), g.edges().end(), e) - g.edges().begin());
        load[idx] += sol->weights[c];
        covered += sol->edge_loads[idx];
      }
      ok = ok && covered >= k;
    }
    Rational dual = 0;
    for (std::size_t i = 0; i < load.size(); ++i) {
      ok = ok && load[i] <= 1 && sol->edge_loads[i] >= 0;
      dual += sol->edge_loads[i];
    }
    ok = ok && primal == sol->value && dual == sol->value;
    out.report.add(detail::condition_check("LP certificate " + tag, ok,
                                           "primal " + to_string(primal) + ", dual " + to_string(dual)));
    return sol->value;
  };
  std::ostringstream head;
  for (std::size_t n = 3; n <= 8; ++n) {
    const auto v = lp_checked("C_" + std::to_string(n) + " Rep", Topology::cycle(n), n, 1, n);
    out.report.add(detail::equality_check("lp(C_" + std::to_string(n) + ", Rep) = n/2", to_string(v),
                                          to_string(Rational(static_cast<long>(n), 2))));
  }
  for (std::size_t n = 3; n <= 6; ++n) {
    const auto v = lp_checked("K_" + std::to_string(n) + " Rep", Topology::complete(n), n, 1, n);
    out.report.add(detail::equality_check("lp(K_" + std::to_string(n) + ", Rep) = n/2", to_string(v),
                                          to_string(Rational(static_cast<long>(n), 2))));
  }
  out.report.add(detail::equality_check("closed_nkd(4,2,3) = 3", to_string(*closed_nkd(4, 2, 3).value), "3"));
  out.report.add(detail::equality_check("mds_bound(4,2) = 3", to_string(*mds_bound(4, 2).value), "3"));
  struct Instance {
    std::string tag;
    Topology g;
    std::size_t n, k, d;
  };
  std::vector<Instance> instances;
  for (std::size_t n = 3; n <= 8; ++n) instances.push_back({"C_" + std::to_string(n) + "(n,1,n)", Topology::cycle(n), n, 1, n});
  for (std::size_t n = 3; n <= 6; ++n) instances.push_back({"K_" + std::to_string(n) + "(n,1,n)", Topology::complete(n), n, 1, n});
  instances.push_back({"K_4(4,2,3)", Topology::complete(4), 4, 2, 3});
  instances.push_back({"C_4(4,2,3)", Topology::cycle(4), 4, 2, 3});
  instances.push_back({"K_5(5,2,4)", Topology::complete(5), 5, 2, 4});
  instances.push_back({"C_6(6,2,5)", Topology::cycle(6), 6, 2, 5});
  instances.push_back({"K_6(6,3,4)", Topology::complete(6), 6, 3, 4});
  instances.push_back({"path5(5,2,4)", Topology::path(5), 5, 2, 4});
  for (const auto& in : instances) {
    const Rational k(static_cast<long>(in.k));
    const auto lp = lp_checked(in.tag, in.g, in.n, k, in.d);
    const auto closed = *closed_nkd(in.n, k, in.d).value;
    out.report.add(detail::condition_check("lp >= closed_nkd on " + in.tag, lp >= closed,
                                           "lp " + to_string(lp) + ", closed " + to_string(closed)));
  }
  for (std::size_t n = 3; n <= 6; ++n) {
    out.report.add(detail::equality_check("dimension_bound(ParityCheck(" + std::to_string(n) + ")) = n-1",
                                          to_string(dimension_bound(CodeSpec::parity_check(n, 1))),
                                          std::to_string(n - 1)));
  }
  head << "lp(C_n,Rep)=n/2 n=3..8; lp(K_n,Rep)=n/2 n=3..6; closed_nkd(4,2,3)=" << to_string(*closed_nkd(4, 2, 3).value)
       << "; mds(4,2)=" << to_string(*mds_bound(4, 2).value) << "; " << instances.size() << " lp>=closed instances";
  out.headline = head.str();
  return out;
}

/// Transcript sharing on the triangle detection stage, m = 1..4.
inline CriterionOutcome criterion_sharehistory(const AcceptanceConfig& cfg) {
  CriterionOutcome out{5, "triangle detection: at most 2^m inputs per codeword transcript", "", {}};
  std::ostringstream head;
  const auto g = Topology::cycle(3);
  for (std::size_t m = 1; m <= 4; ++m) {
    const auto tp = detail::acceptance_triangle(m, cfg);
    auto c = sharehistory_check(tp.protocol.detection, g, CodeSpec::repetition(3, m), cfg.budgets, cfg.jobs);
    head << " m=" << m << ":" << detail::metric_of(c, "max_collisions") << "/" << detail::metric_of(c, "cap")
         << (detail::metric_of(c, "codeword_transcripts_distinct") == "true" ? "" : ",clash");
    out.report.add(std::move(c));
  }
  out.headline = "max collisions/cap" + head.str();
  return out;
}

/// Cut mixing for parity (n=3, m=2) and triangle detection (m=3).
inline CriterionOutcome criterion_cut_mixing(const AcceptanceConfig& cfg) {
  CriterionOutcome out{6, "cut mixing: zero violations", "", {}};
  const auto k3 = Topology::complete(3);
  auto a = cut_mixing_check(parity_protocol(k3, 2), k3, CodeSpec::parity_check(3, 2), cfg.budgets, cfg.jobs);
  const auto tp = detail::acceptance_triangle(3, cfg);
  const auto c3 = Topology::cycle(3);
  auto b = cut_mixing_check(tp.protocol.detection, c3, CodeSpec::repetition(3, 3), cfg.budgets, cfg.jobs);
  out.headline = "parity violations=" + detail::metric_of(a, "violations") +
                 ", triangle violations=" + detail::metric_of(b, "violations");
  out.report.add(std::move(a));
  out.report.add(std::move(b));
  return out;
}

/// Induced F of the triangle (m = 2..6) and C_4 cycle (m = 1..4) protocols.
inline CriterionOutcome criterion_induced_F(const AcceptanceConfig& cfg) {
  CriterionOutcome out{7, "induced F: properties (1)(2), pairwise part bound, per-edge bits", "", {}};
  std::ostringstream head;
  for (std::size_t m = 2; m <= 6; ++m) {
    const auto tp = detail::acceptance_triangle(m, cfg);
    auto c = induced_F_check(tp.protocol.detection, Topology::cycle(3), m, tp.graph.get(), cfg.budgets);
    head << " tri" << m << ":[" << detail::metric_of(c, "part_sizes") << "]";
    out.report.add(std::move(c));
  }
  for (std::size_t m = 1; m <= 4; ++m) {
    const auto f = build_F(4, m, cfg.budgets);
    auto c = induced_F_check(cycle_detect(f), Topology::cycle(4), m, &f, cfg.budgets);
    head << " C4/" << m << ":[" << detail::metric_of(c, "part_sizes") << "]";
    out.report.add(std::move(c));
  }
  out.headline = "part sizes" + head.str();
  return out;
}

/// Linearity: triangle detection at m=4 is not linear; trivial and parity
/// protocols are linear with normalized cost exactly n-1.
inline CriterionOutcome criterion_linearity(const AcceptanceConfig& cfg) {
  CriterionOutcome out{8, "linear-protocol bound consistency", "", {}};
  const auto c3 = Topology::cycle(3);
  const auto tp = detail::acceptance_triangle(4, cfg);
  const bool tri_linear = is_linear(tp.protocol.detection, c3, 4, cfg.budgets);
  out.report.add(detail::equality_check("is_linear(triangle detection, m=4)", detail::bool_text(tri_linear), "false"));
  const auto tri_cost = normalized_cost(tp.protocol.detection, 4);
  std::ostringstream head;
  head << "triangle m=4: linear=" << detail::bool_text(tri_linear) << ", cost=" << to_string(tri_cost)
       << " (n-1=2);";
  for (std::size_t n : {3, 4}) {
    const auto g = Topology::complete(n);
    for (std::size_t m = 1; m <= 2; ++m) {
      const auto tag = "K_" + std::to_string(n) + " m=" + std::to_string(m);
      const auto triv = trivial_detect(g, CodeSpec::repetition(n, m));
      const auto par = parity_protocol(g, m);
      for (const auto* p : {&triv, &par}) {
        const bool lin = is_linear(*p, g, m, cfg.budgets);
        out.report.add(
            detail::equality_check("is_linear(" + p->name + ", " + tag + ")", detail::bool_text(lin), "true"));
        const auto cost = normalized_cost(*p, m);
        out.report.add(detail::equality_check(p->name + " " + tag + " normalized cost = n-1", to_string(cost),
                                              to_string(linear_bound(n))));
      }
    }
  }
  head << " trivial/parity on K_3,K_4: linear, cost n-1";
  out.headline = head.str();
  return out;
}

/// Trivial correction on K_3, K_4 with Rep, t=1, m=2: correct, and the worst
/// cost over inputs with exactly i errors is (n-1+i)m.
inline CriterionOutcome criterion_trivial_correct(const AcceptanceConfig& cfg) {
  CriterionOutcome out{9, "trivial correction cost (n-1+i)m", "", {}};
  std::ostringstream head;
  const std::size_t m = 2;
  for (std::size_t n : {3, 4}) {
    const auto g = Topology::complete(n);
    const auto code = CodeSpec::repetition(n, m);
    auto c = exhaustive_correct_check(trivial_correct(g, code, 1, cfg.budgets), g, code, 1, cfg.budgets, cfg.jobs);
    const auto tag = "K_" + std::to_string(n);
    for (std::size_t i = 0; i <= 1; ++i) {
      out.report.add(detail::equality_check(tag + " max bits with " + std::to_string(i) + " errors = (n-1+i)m",
                                            detail::metric_of(c, "max_bits_errors_" + std::to_string(i)),
                                            std::to_string((n - 1 + i) * m)));
    }
    out.report.add(detail::equality_check(tag + " error-free inputs cost exactly (n-1)m",
                                          detail::metric_of(c, "min_bits_errors_0"), std::to_string((n - 1) * m)));
    head << ' ' << tag << ":i0=" << detail::metric_of(c, "max_bits_errors_0")
         << ",i1=" << detail::metric_of(c, "max_bits_errors_1");
    out.report.add(std::move(c));
  }
  out.headline = "max bits" + head.str();
  return out;
}

inline CriterionOutcome run_criterion(int id, const AcceptanceConfig& cfg);

inline std::string suite_json(const std::vector<CriterionOutcome>& outcomes) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& o : outcomes) {
    nlohmann::ordered_json oj;
    oj["id"] = o.id;
    oj["title"] = o.title;
    oj["passed"] = o.passed();
    oj["headline"] = o.headline;
    oj["report"] = o.report.to_json();
    j.push_back(oj);
  }
  return j.dump(2);
}

/// Criteria 1-9 produce byte-identical reports at one worker and at several.
inline CriterionOutcome criterion_determinism(const AcceptanceConfig& cfg) {
  CriterionOutcome out{10, "determinism across runs and worker counts", "", {}};
  auto once = [&](std::size_t jobs) {
    auto c = cfg;
    c.jobs = jobs;
    std::vector<CriterionOutcome> all;
    for (int id = 1; id <= 9; ++id) all.push_back(run_criterion(id, c));
    return suite_json(all);
  };
  const auto a = once(1);
  const auto b = once(1);
  // Fixed so the report itself does not depend on --jobs.
  const std::size_t many = 4;
  const auto c = once(many);
  out.report.add(detail::condition_check("repeat run, 1 worker", a == b, a == b ? "identical" : "reports differ"));
  out.report.add(detail::condition_check("1 worker vs " + std::to_string(many) + " workers", a == c,
                                         a == c ? "identical" : "reports differ"));
  out.headline = std::to_string(a.size()) + "-byte report identical: " + detail::bool_text(a == b && a == c);
  return out;
}

inline CriterionOutcome run_criterion(int id, const AcceptanceConfig& cfg) {
  switch (id) {
    case 1: return criterion_triangle(cfg);
    case 2: return criterion_cycle(cfg);
    case 3: return criterion_parity(cfg);
    case 4: return criterion_bounds(cfg);
    case 5: return criterion_sharehistory(cfg);
    case 6: return criterion_cut_mixing(cfg);
    case 7: return criterion_induced_F(cfg);
    case 8: return criterion_linearity(cfg);
    case 9: return criterion_trivial_correct(cfg);
    case 10: return criterion_determinism(cfg);
    default: throw ParameterError("no acceptance criterion " + std::to_string(id));
  }
}

inline constexpr int kCriterionCount = 10;

}  // namespace netcode
