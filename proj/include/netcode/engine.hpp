#pragma once

// Round-by-round simulation of static and adaptive protocols on a Topology.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "netcode/bits.hpp"
#include "netcode/budget.hpp"
#include "netcode/codes.hpp"
#include "netcode/graph.hpp"

namespace netcode {

struct ReceivedMessage {
  std::size_t round = 0;  // 0-based global round index
  VertexId from = 0;
  BitString bits;
};

/// Everything one vertex knows: its own symbol and what arrived on its edges.
struct LocalView {
  VertexId owner = 0;
  Symbol own_input;
  std::vector<ReceivedMessage> received;

  /// Messages received from `from`, in round order.
  std::vector<const ReceivedMessage*> from_vertex(VertexId from) const {
    std::vector<const ReceivedMessage*> out;
    for (const auto& r : received) {
      if (r.from == from) out.push_back(&r);
    }
    return out;
  }
};

using MessageFn = std::function<BitString(const LocalView&)>;
using DecisionFn = std::function<bool(const LocalView&)>;

struct Round {
  VertexId sender = 0;
  VertexId receiver = 0;
  std::size_t bit_length = 0;
  MessageFn message;
};

/// How per-vertex decisions combine into the protocol's verdict.
enum class VerdictRule {
  Consistent,   // every decision vertex knows the answer; disagreement is a fault
  Conjunction,  // each vertex checks a local condition; accept iff all pass
};

struct StaticSchedule {
  std::string name;
  std::vector<Round> rounds;
  std::map<VertexId, DecisionFn> decisions;
  VerdictRule verdict = VerdictRule::Consistent;

  std::size_t total_bits() const {
    std::size_t s = 0;
    for (const auto& r : rounds) s += r.bit_length;
    return s;
  }
};

struct RoundRecord {
  std::size_t round = 0;
  VertexId sender = 0;
  VertexId receiver = 0;
  BitString bits;
};

class Transcript {
 public:
  void record(RoundRecord r) { rounds_.push_back(std::move(r)); }
  const std::vector<RoundRecord>& rounds() const { return rounds_; }

  std::size_t total_bits() const {
    std::size_t s = 0;
    for (const auto& r : rounds_) s += r.bits.size();
    return s;
  }

  /// Concatenation of every round's bits: the transmission history.
  BitString flat() const {
    BitString out;
    for (const auto& r : rounds_) out.append(r.bits);
    return out;
  }

  /// Concatenation of the messages carried by `e`, in round order.
  BitString on_edge(const Edge& e) const {
    BitString out;
    for (const auto& r : rounds_) {
      if (Edge::make(r.sender, r.receiver) == e) out.append(r.bits);
    }
    return out;
  }

  /// One line per round: "round sender->receiver bits:<binary>", rounds 1-based.
  std::string dump() const {
    std::ostringstream out;
    for (const auto& r : rounds_) {
      out << (r.round + 1) << ' ' << r.sender << "->" << r.receiver << " bits:" << r.bits.to_string() << '\n';
    }
    return out.str();
  }

  friend bool operator==(const Transcript& a, const Transcript& b) {
    if (a.rounds_.size() != b.rounds_.size()) return false;
    for (std::size_t i = 0; i < a.rounds_.size(); ++i) {
      const auto& x = a.rounds_[i];
      const auto& y = b.rounds_[i];
      if (x.round != y.round || x.sender != y.sender || x.receiver != y.receiver || x.bits != y.bits) return false;
    }
    return true;
  }

 private:
  std::vector<RoundRecord> rounds_;
};

inline BitString transcript_on_edge(const Transcript& t, const Topology& g, const Edge& e) {
  auto key = Edge::make(e.u, e.v);
  if (!g.has_edge(key)) throw ParameterError("edge " + to_string(key) + " is not in the graph");
  return t.on_edge(key);
}

inline void validate_rounds(const std::vector<Round>& rounds, const Topology& g) {
  for (std::size_t i = 0; i < rounds.size(); ++i) {
    const auto& r = rounds[i];
    if (!g.adjacent(r.sender, r.receiver)) {
      throw ProtocolFault("round " + std::to_string(i + 1) + ": " + std::to_string(r.sender) + "->" +
                          std::to_string(r.receiver) + " is not an edge");
    }
    if (!r.message) throw ProtocolFault("round " + std::to_string(i + 1) + " has no message function");
  }
}

inline void validate_schedule(const StaticSchedule& p, const Topology& g) {
  validate_rounds(p.rounds, g);
  if (p.decisions.empty()) throw ProtocolFault(p.name + ": no decision vertex declared");
  for (const auto& [v, fn] : p.decisions) {
    if (v < 1 || v > g.vertex_count()) throw ProtocolFault(p.name + ": decision vertex out of range");
  }
}

namespace detail {

inline std::vector<LocalView> initial_views(const Topology& g, const Word& x) {
  if (x.size() != g.vertex_count()) {
    throw ParameterError("input has " + std::to_string(x.size()) + " symbols for " +
                         std::to_string(g.vertex_count()) + " vertices");
  }
  std::vector<LocalView> views(g.vertex_count() + 1);
  for (VertexId v = 1; v <= g.vertex_count(); ++v) {
    views[v].owner = v;
    views[v].own_input = x.at_vertex(v);
  }
  return views;
}

inline void run_rounds(const std::vector<Round>& rounds, std::vector<LocalView>& views, Transcript& t) {
  for (const auto& r : rounds) {
    const auto index = t.rounds().size();
    BitString bits = r.message(views[r.sender]);
    if (bits.size() != r.bit_length) {
      throw ProtocolFault("round " + std::to_string(index + 1) + ": " + std::to_string(r.sender) + " emitted " +
                          std::to_string(bits.size()) + " bits, schedule says " + std::to_string(r.bit_length));
    }
    views[r.receiver].received.push_back({index, r.sender, bits});
    t.record({index, r.sender, r.receiver, std::move(bits)});
  }
}

inline bool combine_verdicts(const StaticSchedule& p, const std::map<VertexId, bool>& decisions) {
  bool all = true;
  bool any = false;
  for (const auto& [v, d] : decisions) {
    all = all && d;
    any = any || d;
  }
  if (p.verdict == VerdictRule::Consistent && all != any) {
    throw ProtocolFault(p.name + ": decision vertices disagree");
  }
  return all;
}

}  // namespace detail

struct StaticRun {
  Transcript transcript;
  std::map<VertexId, bool> decisions;
  bool accepted = false;
  std::vector<LocalView> views;  // indexed by vertex; [0] unused
};

/// Runs every round in order; each message is computed from the sender's view at that time.
inline StaticRun execute_static(const StaticSchedule& p, const Topology& g, const Word& x, bool validate = true) {
  if (validate) validate_schedule(p, g);
  StaticRun run;
  run.views = detail::initial_views(g, x);
  detail::run_rounds(p.rounds, run.views, run.transcript);
  for (const auto& [v, decide] : p.decisions) run.decisions[v] = decide(run.views[v]);
  run.accepted = detail::combine_verdicts(p, run.decisions);
  return run;
}

/// What exists once the detection stage ends. The continuation picks the
/// correction rounds from it; a branch may only depend on facts some vertex
/// knows (its verdict or its view), never on inputs directly.
struct DetectionOutcome {
  const Transcript& transcript;
  const std::map<VertexId, bool>& verdicts;
  const std::vector<LocalView>& views;  // indexed by vertex; [0] unused
};

using Continuation = std::function<std::vector<Round>(const DetectionOutcome&)>;
using OutputRule = std::function<Symbol(const LocalView&)>;

struct AdaptiveProtocol {
  std::string name;
  StaticSchedule detection;
  Continuation continuation;
  OutputRule output;
};

struct AdaptiveRun {
  Transcript transcript;
  std::map<VertexId, bool> decisions;
  bool accepted = false;
  Word output;
  std::size_t detection_bits = 0;
  std::size_t correction_rounds = 0;
};

inline AdaptiveRun execute_adaptive(const AdaptiveProtocol& p, const Topology& g, const Word& x,
                                    bool validate = true) {
  if (validate) validate_schedule(p.detection, g);
  AdaptiveRun run;
  auto views = detail::initial_views(g, x);
  detail::run_rounds(p.detection.rounds, views, run.transcript);
  for (const auto& [v, decide] : p.detection.decisions) run.decisions[v] = decide(views[v]);
  run.accepted = detail::combine_verdicts(p.detection, run.decisions);
  run.detection_bits = run.transcript.total_bits();
  if (p.continuation) {
    auto extra = p.continuation(DetectionOutcome{run.transcript, run.decisions, views});
    validate_rounds(extra, g);
    run.correction_rounds = extra.size();
    detail::run_rounds(extra, views, run.transcript);
  }
  std::vector<Symbol> out;
  out.reserve(g.vertex_count());
  for (VertexId v = 1; v <= g.vertex_count(); ++v) {
    auto s = p.output ? p.output(views[v]) : views[v].own_input;
    if (s.width() != x.width()) throw ProtocolFault(p.name + ": output symbol has the wrong width");
    out.push_back(s);
  }
  run.output = Word(std::move(out));
  return run;
}

/// Static cost: declared bits divided by m (identical for every input).
inline Rational normalized_cost(const StaticSchedule& p, std::size_t m) {
  return Rational(static_cast<long>(p.total_bits()), static_cast<long>(m));
}

/// Adaptive cost: worst total bits over `inputs`, divided by m.
inline Rational normalized_cost(const AdaptiveProtocol& p, const Topology& g, const std::vector<Word>& inputs,
                                std::size_t m) {
  if (inputs.empty()) throw ParameterError("normalized_cost: empty input set");
  std::size_t worst = 0;
  for (const auto& x : inputs) worst = std::max(worst, execute_adaptive(p, g, x).transcript.total_bits());
  return Rational(static_cast<long>(worst), static_cast<long>(m));
}

/// Adaptive cost over all of Q^n.
inline Rational normalized_cost(const AdaptiveProtocol& p, const Topology& g, std::size_t m,
                                const Budgets& budgets) {
  const auto n = g.vertex_count();
  const auto count = saturating_pow2(n * m);
  require_budget(count, budgets.executions, "normalized_cost input space");
  std::size_t worst = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    worst = std::max(worst, execute_adaptive(p, g, Word::from_index(i, n, m), false).transcript.total_bits());
  }
  return Rational(static_cast<long>(worst), static_cast<long>(m));
}

/// Exhaustive GF(2) affinity test of every transmitted bit as a function of
/// the mn input bits. Equivalent to f(a^b) = f(a)^f(b)^f(0) for all a, b:
/// each bit is checked against f(0) xor the sum of its basis responses.
inline bool is_linear(const StaticSchedule& p, const Topology& g, std::size_t m, const Budgets& budgets = {}) {
  const auto n = g.vertex_count();
  const auto total = n * m;
  const auto count = saturating_pow2(total);
  require_budget(count, budgets.executions, "is_linear input space");
  validate_schedule(p, g);
  auto response = [&](std::uint64_t index) {
    return execute_static(p, g, Word::from_index(index, n, m), false).transcript.flat();
  };
  const BitString base = response(0);
  std::vector<BitString> basis;
  basis.reserve(total);
  for (std::size_t b = 0; b < total; ++b) basis.push_back(response(std::uint64_t{1} << b) ^ base);
  for (std::uint64_t i = 1; i < count; ++i) {
    BitString predicted = base;
    for (std::size_t b = 0; b < total; ++b) {
      if ((i >> b) & 1U) predicted = predicted ^ basis[b];
    }
    if (predicted != response(i)) return false;
  }
  return true;
}

/// Smoke-mode additivity test on random pairs. Not exhaustive; a true result is
/// evidence, not proof.
template <class Rng>
bool is_linear_sampled(const StaticSchedule& p, const Topology& g, std::size_t m, std::size_t samples, Rng& rng) {
  const auto n = g.vertex_count();
  if (n * m > 63) throw CapacityError("is_linear_sampled: input too wide");
  const std::uint64_t mask = (n * m == 64) ? UINT64_MAX : ((std::uint64_t{1} << (n * m)) - 1);
  auto f = [&](std::uint64_t i) { return execute_static(p, g, Word::from_index(i, n, m), false).transcript.flat(); };
  const auto zero = f(0);
  for (std::size_t s = 0; s < samples; ++s) {
    std::uint64_t a = rng() & mask;
    std::uint64_t b = rng() & mask;
    if ((f(a) ^ f(b) ^ zero) != f(a ^ b)) return false;
  }
  return true;
}

}  // namespace netcode
