#pragma once

// Concrete protocols: spanning-tree baselines, XOR aggregation, and the
// special-cycle detection / single-error correction protocols.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "netcode/budget.hpp"
#include "netcode/codes.hpp"
#include "netcode/engine.hpp"
#include "netcode/graph.hpp"
#include "netcode/partite_graph.hpp"
#include "netcode/progression_free.hpp"

namespace netcode {

/// Every symbol forwarded hop by hop up a BFS tree to `root`, which decides
/// membership. Costs m * (sum of depths) bits; (n-1)m when the tree is a star.
inline StaticSchedule trivial_detect(const Topology& g, const CodeSpec& code, VertexId root = 1) {
  if (code.length() != g.vertex_count()) throw ParameterError("trivial_detect: code length != vertex count");
  const auto m = code.width();
  const auto tree = spanning_tree(g, root);
  StaticSchedule p;
  p.name = "trivial-detect";
  // carried[v][k] = vertex whose symbol arrived as v's k-th message.
  std::vector<std::vector<VertexId>> carried(g.vertex_count() + 1);
  for (auto v : tree.leaves_up_order()) {
    if (v == root) continue;
    const auto parent = *tree.parent[v];
    p.rounds.push_back({v, parent, m, [](const LocalView& view) { return view.own_input.to_bits(); }});
    carried[parent].push_back(v);
    for (std::size_t k = 0; k < carried[v].size(); ++k) {
      p.rounds.push_back({v, parent, m, [k](const LocalView& view) { return view.received.at(k).bits; }});
      carried[parent].push_back(carried[v][k]);
    }
  }
  auto origins = carried[root];
  p.decisions[root] = [origins, code, root, m](const LocalView& view) {
    std::vector<Symbol> syms(code.length(), Symbol(0, m));
    syms[root - 1] = view.own_input;
    for (std::size_t k = 0; k < origins.size(); ++k) syms[origins[k] - 1] = Symbol::from_bits(view.received.at(k).bits);
    return code.contains(Word(std::move(syms)));
  };
  return p;
}

/// Leaves-up XOR aggregation on the BFS tree; one m-bit message per tree edge.
inline StaticSchedule parity_protocol(const Topology& g, std::size_t m, VertexId root = 1) {
  const auto tree = spanning_tree(g, root);
  StaticSchedule p;
  p.name = "parity";
  auto fold = [](const LocalView& view) {
    auto acc = view.own_input;
    for (const auto& r : view.received) acc = acc ^ Symbol::from_bits(r.bits);
    return acc;
  };
  for (auto v : tree.leaves_up_order()) {
    if (v == root) continue;
    p.rounds.push_back({v, *tree.parent[v], m, [fold](const LocalView& view) { return fold(view).to_bits(); }});
  }
  p.decisions[root] = [fold](const LocalView& view) { return fold(view).is_zero(); };
  return p;
}

/// F from the progression-free encoder: the special cycle of x visits
/// entry i of T(x) in part i. Properties (1)(2)(3) are checked before return.
inline PartiteGraphF build_F(std::size_t n, std::size_t m, const Budgets& budgets = {},
                             FreeSetMethod method = FreeSetMethod::Auto) {
  const auto enc = build_encoder(m, n, budgets, method);
  std::vector<std::vector<Label>> cycles;
  cycles.reserve(enc.symbol_count());
  for (std::uint64_t x = 0; x < enc.symbol_count(); ++x) cycles.push_back(enc.tuple(x));
  PartiteGraphF f(n, m, std::move(cycles));
  auto rep = verify_properties(f, budgets);
  if (!rep.all()) {
    throw ConstructionFault("build_F(" + std::to_string(n) + "," + std::to_string(m) +
                            ") failed: " + (rep.counterexamples.empty() ? "" : rep.counterexamples.front()));
  }
  return f;
}

/// How part labels travel on the wire.
struct LabelCodec {
  enum class Kind { PartIndex, RawInteger };
  Kind kind = Kind::PartIndex;
  std::size_t raw_width = 0;  // RawInteger only

  std::size_t width(const PartiteGraphF& f, std::size_t part) const {
    return kind == Kind::PartIndex ? f.label_width(part) : raw_width;
  }
  std::size_t max_width(const PartiteGraphF& f) const {
    return kind == Kind::PartIndex ? f.max_label_width() : raw_width;
  }

  BitString encode(const PartiteGraphF& f, std::size_t part, Label l, std::size_t w) const {
    if (kind == Kind::RawInteger) return BitString::from_uint(static_cast<std::uint64_t>(l), w);
    auto idx = f.index_in_part(part, l);
    if (!idx) throw ProtocolFault("label " + std::to_string(l) + " is not in part " + std::to_string(part + 1));
    return BitString::from_uint(*idx, w);
  }

  std::optional<Label> decode(const PartiteGraphF& f, std::size_t part, const BitString& bits) const {
    const auto v = bits.to_uint();
    if (kind == Kind::RawInteger) return static_cast<Label>(v);
    const auto& p = f.part(part);
    if (v >= p.size()) return std::nullopt;
    return p[v];
  }
};

/// A cycle protocol together with the structure it was built from.
struct CycleProtocol {
  AdaptiveProtocol protocol;
  std::shared_ptr<const PartiteGraphF> graph;
  std::vector<VertexId> order;  // order[p] is the graph vertex at cycle position p
  LabelCodec codec;

  std::size_t detection_bits() const { return protocol.detection.total_bits(); }
  std::size_t correction_width() const { return codec.max_width(*graph); }
};

namespace detail {

inline std::vector<VertexId> cycle_order(const Topology& g, std::size_t n) {
  if (g.vertex_count() != n) throw ParameterError("cycle protocol: F order does not match the graph");
  auto h = hamiltonian_cycle(g);
  if (!h) throw ParameterError("cycle protocol: graph has no Hamiltonian cycle");
  return *h;
}

}  // namespace detail

/// Detection: position i sends its part-i label along e_i; position i+1
/// compares it with its own part-i label. Every vertex decides its own check
/// and the verdict is their conjunction.
///
/// Correction (at most one input error): two failures at j, j+1 make j-1 send
/// its part-j label to j; a single failure at j+1 makes j-1 send its part-j
/// label to j and j+2 send its part-(j+2) label to j+1. A receiver rebuilds the
/// true symbol from one edge of its special cycle. Correction labels use the
/// widest part width so the worst branch costs exactly two maximal labels.
inline CycleProtocol make_cycle_protocol(std::shared_ptr<const PartiteGraphF> f, const Topology& g, LabelCodec codec,
                                         std::string name) {
  const auto n = f->order();
  const auto m = f->symbol_width();
  auto order = detail::cycle_order(g, n);
  const auto R = n;  // detection rounds
  auto pos = [n](std::size_t p, long delta) {
    return static_cast<std::size_t>((static_cast<long>(p) + delta + static_cast<long>(n)) % static_cast<long>(n));
  };

  StaticSchedule det;
  det.name = name + "-detect";
  det.verdict = VerdictRule::Conjunction;
  for (std::size_t p = 0; p < n; ++p) {
    const auto w = codec.width(*f, p);
    det.rounds.push_back({order[p], order[pos(p, 1)], w, [f, codec, p, w](const LocalView& view) {
                            return codec.encode(*f, p, f->cycle(view.own_input.value())[p], w);
                          }});
  }
  for (std::size_t q = 0; q < n; ++q) {
    const auto prev = pos(q, -1);
    const auto sender = order[prev];
    det.decisions[order[q]] = [f, codec, prev, sender](const LocalView& view) {
      auto msgs = view.from_vertex(sender);
      if (msgs.empty()) return false;
      auto got = codec.decode(*f, prev, msgs.front()->bits);
      return got && *got == f->cycle(view.own_input.value())[prev];
    };
  }

  const auto W = codec.max_width(*f);
  auto send_label = [f, codec, W](std::size_t part) {
    return [f, codec, W, part](const LocalView& view) {
      return codec.encode(*f, part, f->cycle(view.own_input.value())[part], W);
    };
  };

  AdaptiveProtocol ap;
  ap.name = name;
  ap.detection = det;
  ap.continuation = [order, n, pos, W, send_label](const DetectionOutcome& out) {
    std::vector<std::size_t> failed;
    for (std::size_t q = 0; q < n; ++q) {
      auto it = out.verdicts.find(order[q]);
      if (it != out.verdicts.end() && !it->second) failed.push_back(q);
    }
    std::vector<Round> rounds;
    if (failed.size() == 2) {
      for (std::size_t j = 0; j < n; ++j) {
        if (std::count(failed.begin(), failed.end(), j) && std::count(failed.begin(), failed.end(), pos(j, 1))) {
          rounds.push_back({order[pos(j, -1)], order[j], W, send_label(j)});  // (iv-a)
          break;
        }
      }
    } else if (failed.size() == 1) {
      const auto j = pos(failed.front(), -1);
      rounds.push_back({order[pos(j, -1)], order[j], W, send_label(j)});          // (iv-b), first
      rounds.push_back({order[pos(j, 2)], order[pos(j, 1)], W, send_label(pos(j, 2))});  // (iv-b), second
    }
    return rounds;
  };

  std::vector<std::size_t> position_of(g.vertex_count() + 1, 0);
  for (std::size_t p = 0; p < n; ++p) position_of[order[p]] = p;
  ap.output = [f, codec, order, position_of, pos, R, m](const LocalView& view) {
    const auto p = position_of[view.owner];
    const auto pred = order[pos(p, -1)];
    const auto succ = order[pos(p, 1)];
    for (const auto& r : view.received) {
      if (r.round < R) continue;
      std::optional<PartiteEdge> edge;
      if (r.from == pred) {
        // Detection label of part p-1 from the predecessor plus its part-p label.
        auto det_msgs = view.from_vertex(pred);
        auto a = codec.decode(*f, pos(p, -1), det_msgs.front()->bits);
        auto b = codec.decode(*f, p, r.bits);
        if (a && b) edge = PartiteEdge{pos(p, -1), *a, *b};
      } else if (r.from == succ) {
        auto b = codec.decode(*f, pos(p, 1), r.bits);
        if (b) edge = PartiteEdge{p, f->cycle(view.own_input.value())[p], *b};
      }
      if (edge) {
        if (auto x = f->decode_edge(*edge)) return Symbol(*x, m);
      }
    }
    return view.own_input;
  };

  return CycleProtocol{std::move(ap), std::move(f), std::move(order), codec};
}

/// Cycle detection on C_n, or on the Hamiltonian cycle of a supplied graph.
inline StaticSchedule cycle_detect(const PartiteGraphF& f, const Topology& g) {
  return make_cycle_protocol(std::make_shared<const PartiteGraphF>(f), g, {}, "cycle").protocol.detection;
}
inline StaticSchedule cycle_detect(const PartiteGraphF& f) { return cycle_detect(f, Topology::cycle(f.order())); }

inline AdaptiveProtocol cycle_correct(const PartiteGraphF& f, const Topology& g) {
  return make_cycle_protocol(std::make_shared<const PartiteGraphF>(f), g, {}, "cycle").protocol;
}
inline AdaptiveProtocol cycle_correct(const PartiteGraphF& f) { return cycle_correct(f, Topology::cycle(f.order())); }

/// Triangle protocol parameters: N from smallest_range and the label width ceil(log2(3N)).
struct TriangleParameters {
  std::int64_t range = 0;
  std::size_t label_width = 0;
  FreeSet free_set;
};

inline TriangleParameters triangle_parameters(std::size_t m, const Budgets& budgets = {}) {
  auto choice = smallest_range(m, 3, budgets);
  return {choice.range, ceil_log2(static_cast<std::uint64_t>(3 * choice.range)), choice.set};
}

/// The cycle protocol on C_3 with the raw integers a_i + (i-1) b_i on the wire.
/// `g` must be a triangle; chords do not exist on three vertices.
inline CycleProtocol triangle_protocol_full(std::size_t m, const Topology& g, const Budgets& budgets = {}) {
  const auto params = triangle_parameters(m, budgets);
  auto f = std::make_shared<const PartiteGraphF>(build_F(3, m, budgets));
  LabelCodec codec{LabelCodec::Kind::RawInteger, params.label_width};
  return make_cycle_protocol(std::move(f), g, codec, "triangle");
}

inline CycleProtocol triangle_protocol_full(std::size_t m, const Budgets& budgets = {}) {
  return triangle_protocol_full(m, Topology::cycle(3), budgets);
}

inline AdaptiveProtocol triangle_protocol(std::size_t m, const Budgets& budgets = {}) {
  return triangle_protocol_full(m, budgets).protocol;
}

/// Gather at v_1, decode to the nearest codeword, unicast the fixes. Needs v_1
/// adjacent to every vertex and t <= floor((d-1)/2).
inline AdaptiveProtocol trivial_correct(const Topology& g, const CodeSpec& code, std::size_t t,
                                        const Budgets& budgets = {}) {
  const auto n = g.vertex_count();
  if (code.length() != n) throw ParameterError("trivial_correct: code length != vertex count");
  if (t > (code.min_distance_cached() - 1) / 2) {
    throw ParameterError("trivial_correct: t=" + std::to_string(t) + " exceeds floor((d-1)/2)");
  }
  for (VertexId v = 2; v <= n; ++v) {
    if (!g.adjacent(1, v)) throw ParameterError("trivial_correct: v_1 must be adjacent to every vertex");
  }
  const auto m = code.width();
  AdaptiveProtocol p;
  p.name = "trivial-correct";
  p.detection = trivial_detect(g, code, 1);
  const auto R = p.detection.rounds.size();
  // With a star tree, round k carries the symbol of vertex k+2.
  auto decode = [code, budgets, m, n, R](const LocalView& root) {
    std::vector<Symbol> syms(n, Symbol(0, m));
    syms[0] = root.own_input;
    for (std::size_t k = 0; k < R; ++k) syms[root.received.at(k).from - 1] = Symbol::from_bits(root.received.at(k).bits);
    Word seen(std::move(syms));
    return std::pair{seen, nearest_codeword(code, seen, budgets).first};
  };
  p.continuation = [decode, m, n](const DetectionOutcome& out) {
    std::vector<Round> rounds;
    if (out.verdicts.at(1)) return rounds;
    const auto [seen, fixed] = decode(out.views[1]);
    for (VertexId v = 2; v <= n; ++v) {
      if (seen.at_vertex(v) != fixed.at_vertex(v)) {
        rounds.push_back({1, v, m, [decode, v](const LocalView& root) { return decode(root).second.at_vertex(v).to_bits(); }});
      }
    }
    return rounds;
  };
  p.output = [decode, R](const LocalView& view) {
    if (view.owner == 1) {
      if (view.received.size() < R) return view.own_input;
      return decode(view).second.at_vertex(1);
    }
    for (const auto& r : view.received) {
      if (r.round >= R) return Symbol::from_bits(r.bits);
    }
    return view.own_input;
  };
  return p;
}

}  // namespace netcode
