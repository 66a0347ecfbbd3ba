#pragma once

// Exhaustive checks of protocols against code oracles, the structural lemmas
// on transcripts, induced-F extraction and bound comparison.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "netcode/bounds.hpp"
#include "netcode/budget.hpp"
#include "netcode/codes.hpp"
#include "netcode/engine.hpp"
#include "netcode/graph.hpp"
#include "netcode/parallel.hpp"
#include "netcode/partite_graph.hpp"

namespace netcode {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string summary;
  std::optional<std::string> counterexample;  // always set when !passed
  std::vector<std::pair<std::string, std::string>> metrics;

  void metric(const std::string& key, const std::string& value) { metrics.emplace_back(key, value); }
  void metric(const std::string& key, std::uint64_t value) { metric(key, std::to_string(value)); }
  void metric(const std::string& key, const Rational& value) { metric(key, to_string(value)); }

  void fail(std::string why) {
    passed = false;
    counterexample = std::move(why);
  }
};

struct VerificationReport {
  std::string title;
  std::vector<CheckResult> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  }
  void add(CheckResult c) { checks.push_back(std::move(c)); }
  void append(const VerificationReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["title"] = title;
    j["passed"] = passed();
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
      nlohmann::ordered_json cj;
      cj["name"] = c.name;
      cj["passed"] = c.passed;
      cj["summary"] = c.summary;
      nlohmann::ordered_json mj = nlohmann::ordered_json::object();
      for (const auto& [k, v] : c.metrics) mj[k] = v;
      cj["metrics"] = mj;
      if (c.counterexample) cj["counterexample"] = *c.counterexample;
      j["checks"].push_back(cj);
    }
    return j;
  }

  std::string to_text() const {
    std::ostringstream out;
    if (!title.empty()) out << title << '\n';
    for (const auto& c : checks) {
      out << (c.passed ? "PASS " : "FAIL ") << c.name;
      if (!c.summary.empty()) out << ": " << c.summary;
      out << '\n';
      for (const auto& [k, v] : c.metrics) out << "    " << k << " = " << v << '\n';
      if (c.counterexample) {
        std::istringstream lines(*c.counterexample);
        std::string line;
        while (std::getline(lines, line)) out << "    | " << line << '\n';
      }
    }
    return out.str();
  }
};

namespace detail {

inline std::string describe_run(const Word& x, const Transcript& t) {
  return "input " + x.to_hex() + "\n" + t.dump();
}

inline std::uint64_t input_space(const Topology& g, std::size_t m, const Budgets& budgets, const std::string& what) {
  const auto count = saturating_pow2(g.vertex_count() * m);
  require_budget(count, budgets.executions, what);
  return count;
}

}  // namespace detail

/// Verdict equals code membership on every word of Q^n.
inline CheckResult exhaustive_detect_check(const StaticSchedule& p, const Topology& g, const CodeSpec& code,
                                           const Budgets& budgets = {}, std::size_t jobs = 1) {
  CheckResult res;
  res.name = "detect:" + p.name + " on " + code.name();
  const auto n = g.vertex_count();
  const auto m = code.width();
  if (code.length() != n) throw ParameterError("detect check: code length != vertex count");
  const auto count = detail::input_space(g, m, budgets, "exhaustive_detect_check");
  validate_schedule(p, g);

  struct Acc {
    std::optional<std::string> failure;
    std::uint64_t failures = 0;
    std::uint64_t accepted = 0;
    std::size_t min_bits = SIZE_MAX;
    std::size_t max_bits = 0;
  };
  auto parts = run_chunks(count, jobs, [&](std::uint64_t b, std::uint64_t e) {
    Acc acc;
    for (std::uint64_t i = b; i < e; ++i) {
      const auto x = Word::from_index(i, n, m);
      const bool want = code.contains(x);
      try {
        auto run = execute_static(p, g, x, false);
        acc.min_bits = std::min(acc.min_bits, run.transcript.total_bits());
        acc.max_bits = std::max(acc.max_bits, run.transcript.total_bits());
        acc.accepted += run.accepted;
        if (run.accepted != want) {
          ++acc.failures;
          if (!acc.failure) {
            acc.failure = std::string(want ? "codeword rejected, " : "non-codeword accepted, ") +
                          detail::describe_run(x, run.transcript);
          }
        }
      } catch (const ProtocolFault& f) {
        ++acc.failures;
        if (!acc.failure) acc.failure = "protocol fault on input " + x.to_hex() + ": " + f.what();
      }
    }
    return acc;
  });
  Acc total;
  for (auto& a : parts) {
    if (!total.failure && a.failure) total.failure = a.failure;
    total.failures += a.failures;
    total.accepted += a.accepted;
    total.min_bits = std::min(total.min_bits, a.min_bits);
    total.max_bits = std::max(total.max_bits, a.max_bits);
  }
  res.metric("inputs", count);
  res.metric("accepted", total.accepted);
  res.metric("failures", total.failures);
  res.metric("min_bits", total.min_bits);
  res.metric("max_bits", total.max_bits);
  res.metric("normalized_cost", Rational(static_cast<long>(total.max_bits), static_cast<long>(m)));
  if (total.failure) res.fail(*total.failure);
  res.summary = std::to_string(count) + " inputs, " + std::to_string(total.failures) + " wrong verdicts";
  return res;
}

/// Corruption patterns of at most t positions: (position, nonzero xor mask) lists.
inline std::vector<std::vector<std::pair<std::size_t, std::uint64_t>>> corruption_patterns(std::size_t n,
                                                                                          std::size_t m,
                                                                                          std::size_t t) {
  std::vector<std::vector<std::pair<std::size_t, std::uint64_t>>> out{{}};
  const std::uint64_t q = std::uint64_t{1} << m;
  std::vector<std::pair<std::size_t, std::uint64_t>> cur;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (cur.size() == t) return;
    for (std::size_t pos = from; pos < n; ++pos) {
      for (std::uint64_t e = 1; e < q; ++e) {
        cur.emplace_back(pos, e);
        out.push_back(cur);
        self(self, pos + 1);
        cur.pop_back();
      }
    }
  };
  rec(rec, 0);
  return out;
}

/// For every codeword and every corruption of at most t symbols, every vertex
/// outputs the codeword's symbol. Records the worst total bits per number of
/// actual errors.
inline CheckResult exhaustive_correct_check(const AdaptiveProtocol& p, const Topology& g, const CodeSpec& code,
                                            std::size_t t = 1, const Budgets& budgets = {}, std::size_t jobs = 1) {
  CheckResult res;
  res.name = "correct:" + p.name + " on " + code.name() + " t=" + std::to_string(t);
  const auto n = g.vertex_count();
  const auto m = code.width();
  if (code.length() != n) throw ParameterError("correct check: code length != vertex count");
  require_budget(code.size(), budgets.codewords, "exhaustive_correct_check codewords");
  std::uint64_t per_word = 0;
  for (std::size_t i = 0; i <= t; ++i) {
    per_word += saturating_mul(binomial(n, i), saturating_pow(saturating_pow2(m) - 1, i));
  }
  const auto count = saturating_mul(code.size(), per_word);
  require_budget(count, budgets.executions, "exhaustive_correct_check executions");
  validate_schedule(p.detection, g);

  const auto words = enumerate(code, budgets);
  const auto patterns = corruption_patterns(n, m, t);

  struct Acc {
    std::optional<std::string> failure;
    std::uint64_t failures = 0;
    std::vector<std::size_t> max_bits;
    std::vector<std::size_t> min_bits;
    std::optional<std::uint64_t> worst_index;
    std::size_t worst = 0;
  };
  auto input_of = [&](std::uint64_t i) {
    const auto& c = words[i / patterns.size()];
    auto x = c;
    for (const auto& [pos, mask] : patterns[i % patterns.size()]) {
      x = x.with(pos, Symbol(x[pos].value() ^ mask, m));
    }
    return std::pair{c, x};
  };
  auto parts = run_chunks(count, jobs, [&](std::uint64_t b, std::uint64_t e) {
    Acc acc;
    acc.max_bits.assign(t + 1, 0);
    acc.min_bits.assign(t + 1, SIZE_MAX);
    for (std::uint64_t i = b; i < e; ++i) {
      const auto [c, x] = input_of(i);
      const auto errors = patterns[i % patterns.size()].size();
      try {
        auto run = execute_adaptive(p, g, x, false);
        const auto bits = run.transcript.total_bits();
        acc.max_bits[errors] = std::max(acc.max_bits[errors], bits);
        acc.min_bits[errors] = std::min(acc.min_bits[errors], bits);
        if (!acc.worst_index || bits > acc.worst) {
          acc.worst = bits;
          acc.worst_index = i;
        }
        if (run.output.symbols() != c.symbols()) {
          ++acc.failures;
          if (!acc.failure) {
            acc.failure = "codeword " + c.to_hex() + " output " + run.output.to_hex() + ", " +
                          detail::describe_run(x, run.transcript);
          }
        }
      } catch (const ProtocolFault& f) {
        ++acc.failures;
        if (!acc.failure) acc.failure = "protocol fault on input " + x.to_hex() + ": " + f.what();
      }
    }
    return acc;
  });
  Acc total;
  total.max_bits.assign(t + 1, 0);
  total.min_bits.assign(t + 1, SIZE_MAX);
  for (auto& a : parts) {
    if (!total.failure && a.failure) total.failure = a.failure;
    total.failures += a.failures;
    for (std::size_t i = 0; i <= t; ++i) {
      total.max_bits[i] = std::max(total.max_bits[i], a.max_bits[i]);
      total.min_bits[i] = std::min(total.min_bits[i], a.min_bits[i]);
    }
    if (a.worst_index && (!total.worst_index || a.worst > total.worst)) {
      total.worst = a.worst;
      total.worst_index = a.worst_index;
    }
  }
  res.metric("executions", count);
  res.metric("failures", total.failures);
  res.metric("detection_bits", p.detection.total_bits());
  res.metric("worst_bits", total.worst);
  res.metric("normalized_worst", Rational(static_cast<long>(total.worst), static_cast<long>(m)));
  if (total.worst_index) res.metric("worst_input", input_of(*total.worst_index).second.to_hex());
  for (std::size_t i = 0; i <= t; ++i) {
    res.metric("max_bits_errors_" + std::to_string(i), total.max_bits[i]);
    res.metric("min_bits_errors_" + std::to_string(i), total.min_bits[i]);
  }
  if (total.failure) res.fail(*total.failure);
  res.summary = std::to_string(count) + " executions, " + std::to_string(total.failures) + " wrong outputs";
  return res;
}

/// |{y in Q^n : h(y) = h(x)}|.
inline std::uint64_t collision_count(const StaticSchedule& p, const Topology& g, const CodeSpec& code, const Word& x,
                                     const Budgets& budgets = {}) {
  const auto n = g.vertex_count();
  const auto m = code.width();
  if (!code.contains(x)) throw ParameterError("collision_count: x must be a codeword");
  const auto count = detail::input_space(g, m, budgets, "collision_count");
  const auto target = execute_static(p, g, x).transcript.flat();
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    hits += execute_static(p, g, Word::from_index(i, n, m), false).transcript.flat() == target;
  }
  return hits;
}

struct CollisionCensus {
  std::uint64_t max_collisions = 0;
  std::optional<Word> worst_codeword;
  std::map<std::string, std::uint64_t> per_codeword;  // hex -> count
  std::optional<std::pair<Word, Word>> codeword_clash;
};

/// One pass over Q^n, bucketing inputs by transcript.
inline CollisionCensus collision_census(const StaticSchedule& p, const Topology& g, const CodeSpec& code,
                                        const Budgets& budgets = {}, std::size_t jobs = 1) {
  const auto n = g.vertex_count();
  const auto m = code.width();
  const auto count = detail::input_space(g, m, budgets, "collision_census");
  validate_schedule(p, g);
  auto parts = run_chunks(count, jobs, [&](std::uint64_t b, std::uint64_t e) {
    std::unordered_map<BitString, std::uint64_t> local;
    for (std::uint64_t i = b; i < e; ++i) {
      ++local[execute_static(p, g, Word::from_index(i, n, m), false).transcript.flat()];
    }
    return local;
  });
  std::unordered_map<BitString, std::uint64_t> buckets;
  for (auto& part : parts) {
    for (auto& [k, v] : part) buckets[k] += v;
  }
  CollisionCensus census;
  std::unordered_map<BitString, Word> owner;
  for (const auto& c : enumerate(code, budgets)) {
    const auto h = execute_static(p, g, c, false).transcript.flat();
    const auto hits = buckets.at(h);
    census.per_codeword[c.to_hex()] = hits;
    if (hits > census.max_collisions) {
      census.max_collisions = hits;
      census.worst_codeword = c;
    }
    auto [it, fresh] = owner.try_emplace(h, c);
    if (!fresh && !census.codeword_clash) census.codeword_clash = std::pair{it->second, c};
  }
  return census;
}

/// Every codeword shares its transcript with at most 2^m inputs, and distinct
/// codewords have distinct transcripts.
inline CheckResult sharehistory_check(const StaticSchedule& p, const Topology& g, const CodeSpec& code,
                                      const Budgets& budgets = {}, std::size_t jobs = 1) {
  CheckResult res;
  res.name = "transcript-sharing:" + p.name + " on " + code.name();
  const auto m = code.width();
  const auto census = collision_census(p, g, code, budgets, jobs);
  const std::uint64_t cap = std::uint64_t{1} << m;
  res.metric("max_collisions", census.max_collisions);
  res.metric("cap", cap);
  res.metric("codeword_transcripts_distinct", census.codeword_clash ? "false" : "true");
  std::ostringstream why;
  if (census.max_collisions > cap) {
    const auto& w = *census.worst_codeword;
    why << "codeword " << w.to_hex() << " shares its transcript with " << census.max_collisions << " inputs (cap "
        << cap << ")\n";
    const auto target = execute_static(p, g, w, false).transcript.flat();
    const auto n = g.vertex_count();
    std::size_t shown = 0;
    for (std::uint64_t i = 0; i < saturating_pow2(n * m) && shown < 8; ++i) {
      auto y = Word::from_index(i, n, m);
      if (execute_static(p, g, y, false).transcript.flat() == target) {
        why << "  same transcript: " << y.to_hex() << '\n';
        ++shown;
      }
    }
  }
  if (census.codeword_clash) {
    why << "codewords " << census.codeword_clash->first.to_hex() << " and " << census.codeword_clash->second.to_hex()
        << " have identical transcripts\n";
  }
  if (!why.str().empty()) res.fail(why.str());
  res.summary = "max " + std::to_string(census.max_collisions) + " inputs per codeword transcript, cap " +
                std::to_string(cap);
  return res;
}

/// Accepted pairs with identical transcripts on every edge of a cut-set must
/// have an accepted mixture, for every cut.
inline CheckResult cut_mixing_check(const StaticSchedule& p, const Topology& g, const CodeSpec& code,
                                    const Budgets& budgets = {}, std::size_t jobs = 1) {
  CheckResult res;
  res.name = "cut-mixing:" + p.name + " on " + code.name();
  const auto n = g.vertex_count();
  const auto m = code.width();
  const auto count = detail::input_space(g, m, budgets, "cut_mixing_check");
  validate_schedule(p, g);

  struct Accepted {
    std::uint64_t index;
    Transcript transcript;
  };
  auto parts = run_chunks(count, jobs, [&](std::uint64_t b, std::uint64_t e) {
    std::vector<Accepted> local;
    for (std::uint64_t i = b; i < e; ++i) {
      auto run = execute_static(p, g, Word::from_index(i, n, m), false);
      if (run.accepted) local.push_back({i, std::move(run.transcript)});
    }
    return local;
  });
  std::vector<Accepted> accepted;
  for (auto& part : parts) accepted.insert(accepted.end(), part.begin(), part.end());
  std::vector<bool> is_accepted(count, false);
  for (const auto& a : accepted) is_accepted[a.index] = true;

  std::uint64_t cuts = 0, pairs = 0, violations = 0;
  std::optional<std::string> first;
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
    VertexSet side(n);
    for (VertexId v = 1; v <= n; ++v) {
      if ((mask >> (v - 1)) & 1U) side.insert(v);
    }
    const auto edges = cut_set(g, side);
    ++cuts;
    std::map<std::vector<BitString>, std::vector<std::uint64_t>> groups;
    for (const auto& a : accepted) {
      std::vector<BitString> key;
      key.reserve(edges.size());
      for (const auto& e : edges) key.push_back(a.transcript.on_edge(e));
      groups[key].push_back(a.index);
    }
    for (const auto& [key, members] : groups) {
      pairs += members.size() * (members.size() - 1) / 2;
      require_budget(pairs, budgets.executions, "cut_mixing_check pairs");
      for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
          const auto x = Word::from_index(members[i], n, m);
          const auto y = Word::from_index(members[j], n, m);
          const auto xy = mix(x, y, side);
          const auto yx = mix(y, x, side);
          if (is_accepted[xy.index()] || is_accepted[yx.index()]) continue;
          ++violations;
          if (!first) {
            std::ostringstream why;
            why << "S = {";
            for (auto v : side.members()) why << ' ' << v;
            why << " }: accepted " << x.to_hex() << " and " << y.to_hex() << " agree on the cut-set, both mixtures "
                << xy.to_hex() << " and " << yx.to_hex() << " rejected";
            first = why.str();
          }
        }
      }
    }
  }
  res.metric("cuts", cuts);
  res.metric("accepted_inputs", accepted.size());
  res.metric("agreeing_pairs", pairs);
  res.metric("violations", violations);
  if (first) res.fail(*first);
  res.summary = std::to_string(violations) + " violations over " + std::to_string(cuts) + " cuts";
  return res;
}

struct InducedF {
  PartiteGraphF graph;
  std::vector<std::size_t> edge_bits;  // bits on e_j = (v_j, v_{j+1}), j = 1..n
  PropertyReport properties;
};

/// Parts I_j are the distinct transcripts on e_j over all codewords of Rep,
/// relabeled by first use; the special cycle of x is (1(x), ..., n(x)).
inline InducedF extract_induced_F(const StaticSchedule& p, const Topology& g, std::size_t m,
                                  const Budgets& budgets = {}) {
  const auto n = g.vertex_count();
  std::vector<Edge> ring;
  for (VertexId v = 1; v <= n; ++v) {
    auto e = Edge::make(v, v % n + 1);
    if (!g.has_edge(e)) throw ParameterError("extract_induced_F: graph lacks the cycle edge " + to_string(e));
    ring.push_back(e);
  }
  validate_schedule(p, g);
  const auto code = CodeSpec::repetition(n, m);
  std::vector<std::map<BitString, Label>> ids(n);
  std::vector<std::vector<Label>> cycles;
  std::vector<std::size_t> edge_bits(n, 0);
  code.for_each_codeword(
      [&](const Word& x) {
        auto run = execute_static(p, g, x, false);
        std::vector<Label> cyc(n);
        for (std::size_t j = 0; j < n; ++j) {
          auto bits = run.transcript.on_edge(ring[j]);
          edge_bits[j] = bits.size();
          auto [it, fresh] = ids[j].try_emplace(bits, static_cast<Label>(ids[j].size()));
          cyc[j] = it->second;
        }
        cycles.push_back(std::move(cyc));
      },
      budgets);
  PartiteGraphF f(n, m, std::move(cycles));
  auto props = verify_properties(f, budgets);
  return {std::move(f), std::move(edge_bits), std::move(props)};
}

/// Properties (1)(2), the pairwise part bound |I_j||I_l| >= 2^m and per-edge bits >= ceil(log2 |I_j|).
inline CheckResult induced_F_check(const StaticSchedule& p, const Topology& g, std::size_t m,
                                   const PartiteGraphF* built = nullptr, const Budgets& budgets = {}) {
  CheckResult res;
  res.name = "induced-F:" + p.name;
  const auto ind = extract_induced_F(p, g, m, budgets);
  const auto& f = ind.graph;
  const auto n = f.order();
  std::ostringstream why;
  if (!ind.properties.edge_disjoint || !ind.properties.unique_cycle_per_edge) {
    for (const auto& c : ind.properties.counterexamples) why << c << '\n';
  }
  const std::uint64_t q = std::uint64_t{1} << m;
  std::string sizes;
  for (std::size_t j = 0; j < n; ++j) {
    sizes += (j ? "," : "") + std::to_string(f.part(j).size());
    for (std::size_t l = j + 1; l < n; ++l) {
      if (static_cast<std::uint64_t>(f.part(j).size()) * f.part(l).size() < q) {
        why << "|I_" << j + 1 << "| * |I_" << l + 1 << "| = " << f.part(j).size() * f.part(l).size() << " < " << q
            << '\n';
      }
    }
    if (ind.edge_bits[j] < f.label_width(j)) {
      why << "edge e_" << j + 1 << " carries " << ind.edge_bits[j] << " bits < ceil(log2 " << f.part(j).size()
          << ")\n";
    }
  }
  std::string bits;
  for (std::size_t j = 0; j < n; ++j) bits += (j ? "," : "") + std::to_string(ind.edge_bits[j]);
  res.metric("part_sizes", sizes);
  res.metric("edge_bits", bits);
  res.metric("property_1", ind.properties.edge_disjoint ? "true" : "false");
  res.metric("property_2", ind.properties.unique_cycle_per_edge ? "true" : "false");
  res.metric("property_3", ind.properties.cycle_count_exact ? "true" : "false");
  if (built) {
    const bool iso = isomorphic(f, *built);
    res.metric("isomorphic_to_built", iso ? "true" : "false");
    if (!iso) why << "extracted F differs from the built F after canonical relabeling\n";
  }
  if (!why.str().empty()) res.fail(why.str());
  res.summary = "parts " + sizes + ", edge bits " + bits;
  return res;
}

/// Measured normalized cost against every applicable lower bound. The linear
/// bound is compared only when the protocol is known to be linear.
inline CheckResult compare_to_bounds(const std::string& protocol, const Rational& measured, const BoundReport& bounds,
                                     bool linear = false) {
  CheckResult res;
  res.name = "bounds:" + protocol;
  res.metric("measured", measured);
  std::ostringstream why;
  auto cmp = [&](const std::string& name, const std::optional<Rational>& v) {
    if (!v) {
      res.metric(name, "inapplicable");
      return;
    }
    res.metric(name, *v);
    if (measured < *v) why << "measured " << to_string(measured) << " < " << name << " bound " << to_string(*v) << '\n';
  };
  cmp("dimension", bounds.dimension);
  cmp("lp", bounds.lp.value);
  cmp("closed_nkd", bounds.closed.value);
  cmp("mds", bounds.mds.value);
  if (linear) cmp("linear", bounds.linear);
  res.metric("slack", measured - bounds.combined);
  if (!why.str().empty()) res.fail("critical inconsistency: " + why.str());
  res.summary = "measured " + to_string(measured) + " vs combined " + to_string(bounds.combined);
  return res;
}

}  // namespace netcode
