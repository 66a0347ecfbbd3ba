#pragma once

// Simple connected graphs with 1-based vertices v_1..v_n.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "netcode/budget.hpp"
#include "netcode/codes.hpp"
#include "netcode/error.hpp"

namespace netcode {

using VertexId = std::size_t;

/// Undirected edge stored with u < v.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  static Edge make(VertexId a, VertexId b) { return a < b ? Edge{a, b} : Edge{b, a}; }
  bool touches(VertexId x) const { return u == x || v == x; }

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline std::string to_string(const Edge& e) {
  return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
}

/// Subset of {v_1..v_n}.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t n) : member_(n + 1, false) {}
  VertexSet(std::size_t n, std::initializer_list<VertexId> vs) : VertexSet(n) {
    for (auto v : vs) insert(v);
  }

  static VertexSet full(std::size_t n) {
    VertexSet s(n);
    for (VertexId v = 1; v <= n; ++v) s.insert(v);
    return s;
  }

  void insert(VertexId v) {
    if (v == 0 || v >= member_.size()) throw ParameterError("vertex " + std::to_string(v) + " out of range");
    member_[v] = true;
  }
  bool contains(VertexId v) const { return v < member_.size() && member_[v]; }
  std::size_t universe() const { return member_.empty() ? 0 : member_.size() - 1; }
  std::size_t size() const { return static_cast<std::size_t>(std::count(member_.begin(), member_.end(), true)); }
  bool empty() const { return size() == 0; }

  VertexSet complement() const {
    VertexSet c(universe());
    for (VertexId v = 1; v <= universe(); ++v) {
      if (!contains(v)) c.insert(v);
    }
    return c;
  }

  std::vector<VertexId> members() const {
    std::vector<VertexId> out;
    for (VertexId v = 1; v <= universe(); ++v) {
      if (contains(v)) out.push_back(v);
    }
    return out;
  }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<bool> member_;
};

class Topology {
 public:
  Topology(std::size_t n, std::vector<Edge> edges) : n_(n) {
    if (n < 2) throw ParameterError("graph needs at least 2 vertices");
    for (auto& e : edges) {
      if (e.u == e.v) throw ParameterError("self loop at vertex " + std::to_string(e.u));
      e = Edge::make(e.u, e.v);
      if (e.u < 1 || e.v > n) throw ParameterError("edge " + to_string(e) + " out of range");
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
      throw ParameterError("multi-edges are not allowed");
    }
    edges_ = std::move(edges);
    adjacency_.assign(n + 1, {});
    for (const auto& e : edges_) {
      adjacency_[e.u].push_back(e.v);
      adjacency_[e.v].push_back(e.u);
    }
    for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());
    if (!connected()) throw ParameterError("graph is not connected");
  }

  static Topology cycle(std::size_t n) {
    if (n < 3) throw ParameterError("cycle needs n >= 3");
    std::vector<Edge> es;
    for (VertexId v = 1; v <= n; ++v) es.push_back(Edge::make(v, v % n + 1));
    return Topology(n, es);
  }
  static Topology complete(std::size_t n) {
    std::vector<Edge> es;
    for (VertexId u = 1; u <= n; ++u) {
      for (VertexId v = u + 1; v <= n; ++v) es.push_back({u, v});
    }
    return Topology(n, es);
  }
  static Topology path(std::size_t n) {
    std::vector<Edge> es;
    for (VertexId v = 1; v < n; ++v) es.push_back({v, v + 1});
    return Topology(n, es);
  }
  static Topology star(std::size_t n) {
    std::vector<Edge> es;
    for (VertexId v = 2; v <= n; ++v) es.push_back({1, v});
    return Topology(n, es);
  }

  std::size_t vertex_count() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<VertexId>& neighbors(VertexId v) const { return adjacency_.at(v); }
  bool adjacent(VertexId a, VertexId b) const {
    if (a < 1 || a > n_ || b < 1 || b > n_) return false;
    return std::binary_search(adjacency_[a].begin(), adjacency_[a].end(), b);
  }
  bool has_edge(const Edge& e) const { return adjacent(e.u, e.v); }

  std::string to_text() const {
    std::ostringstream out;
    out << n_ << '\n';
    for (const auto& e : edges_) out << e.u << ' ' << e.v << '\n';
    return out.str();
  }

 private:
  bool connected() const {
    std::vector<bool> seen(n_ + 1, false);
    std::vector<VertexId> stack{1};
    seen[1] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto w : adjacency_[v]) {
        if (!seen[w]) {
          seen[w] = true;
          ++count;
          stack.push_back(w);
        }
      }
    }
    return count == n_;
  }

  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<VertexId>> adjacency_;
};

/// "cycle:n", "complete:n", "path:n", "star:n".
inline Topology parse_builtin_graph(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw ParameterError("graph spec '" + spec + "' is not name:n");
  auto name = spec.substr(0, colon);
  std::size_t n = 0;
  try {
    n = std::stoul(spec.substr(colon + 1));
  } catch (const std::exception&) {
    throw ParameterError("graph spec '" + spec + "' has a bad vertex count");
  }
  if (name == "cycle") return Topology::cycle(n);
  if (name == "complete") return Topology::complete(n);
  if (name == "path") return Topology::path(n);
  if (name == "star") return Topology::star(n);
  throw ParameterError("unknown graph family '" + name + "'");
}

/// Graph file: first line "n", then one "u v" pair per line.
inline Topology read_graph(std::istream& in) {
  std::size_t n = 0;
  if (!(in >> n)) throw ParameterError("graph file: expected vertex count");
  std::vector<Edge> es;
  VertexId u = 0, v = 0;
  while (in >> u >> v) es.push_back({u, v});
  if (!in.eof()) throw ParameterError("graph file: malformed edge line");
  return Topology(n, es);
}

inline Topology load_graph(const std::string& spec) {
  if (spec.find(':') != std::string::npos && spec.rfind("file:", 0) != 0) return parse_builtin_graph(spec);
  auto path = spec.rfind("file:", 0) == 0 ? spec.substr(5) : spec;
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open graph file '" + path + "'");
  return read_graph(in);
}

/// Edges crossing (S, S-bar), sorted by (min endpoint, max endpoint).
inline std::vector<Edge> cut_set(const Topology& g, const VertexSet& side) {
  if (side.universe() != g.vertex_count()) throw ParameterError("cut side has the wrong universe");
  const auto k = side.size();
  if (k == 0 || k == g.vertex_count()) throw ParameterError("cut side must be a nonempty proper subset");
  std::vector<Edge> out;
  for (const auto& e : g.edges()) {
    if (side.contains(e.u) != side.contains(e.v)) out.push_back(e);
  }
  return out;
}

/// x on S, y on the complement. An empty or full S is rejected unless `allow_trivial`.
inline Word mix(const Word& x, const Word& y, const VertexSet& side, bool allow_trivial = false) {
  if (x.size() != y.size() || x.width() != y.width()) throw ParameterError("mix: shape mismatch");
  if (side.universe() != x.size()) throw ParameterError("mix: vertex set universe does not match word");
  const auto k = side.size();
  if (!allow_trivial && (k == 0 || k == x.size())) throw ParameterError("mix: S must be a cut side");
  std::vector<Symbol> syms;
  syms.reserve(x.size());
  for (VertexId v = 1; v <= x.size(); ++v) syms.push_back(side.contains(v) ? x.at_vertex(v) : y.at_vertex(v));
  return Word(std::move(syms));
}

struct SpanningTree {
  VertexId root = 1;
  std::vector<std::optional<VertexId>> parent;  // indexed by vertex; [0] unused
  std::vector<std::size_t> depth;
  std::vector<VertexId> bfs_order;
  std::vector<std::vector<VertexId>> children;

  std::size_t edge_count() const {
    return static_cast<std::size_t>(
        std::count_if(parent.begin(), parent.end(), [](const auto& p) { return p.has_value(); }));
  }

  /// Vertices ordered deepest first, ties by index. Every vertex precedes its parent.
  std::vector<VertexId> leaves_up_order() const {
    auto order = bfs_order;
    std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
      if (depth[a] != depth[b]) return depth[a] > depth[b];
      return a < b;
    });
    return order;
  }
};

/// BFS tree, neighbors visited in index order.
inline SpanningTree spanning_tree(const Topology& g, VertexId root) {
  const auto n = g.vertex_count();
  if (root < 1 || root > n) throw ParameterError("root out of range");
  SpanningTree t;
  t.root = root;
  t.parent.assign(n + 1, std::nullopt);
  t.depth.assign(n + 1, 0);
  t.children.assign(n + 1, {});
  std::vector<bool> seen(n + 1, false);
  std::queue<VertexId> q;
  q.push(root);
  seen[root] = true;
  while (!q.empty()) {
    auto v = q.front();
    q.pop();
    t.bfs_order.push_back(v);
    for (auto w : g.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = true;
        t.parent[w] = v;
        t.depth[w] = t.depth[v] + 1;
        t.children[v].push_back(w);
        q.push(w);
      }
    }
  }
  return t;
}

/// Lexicographically least Hamiltonian cycle starting at v_1, by backtracking.
inline std::optional<std::vector<VertexId>> hamiltonian_cycle(const Topology& g, std::size_t max_vertices = 12) {
  const auto n = g.vertex_count();
  if (n > max_vertices) {
    throw CapacityError("hamiltonian_cycle: n=" + std::to_string(n) + " exceeds limit " +
                        std::to_string(max_vertices));
  }
  if (n < 3) return std::nullopt;
  std::vector<VertexId> path{1};
  std::vector<bool> used(n + 1, false);
  used[1] = true;
  auto extend = [&](auto&& self) -> bool {
    if (path.size() == n) return g.adjacent(path.back(), 1);
    for (auto w : g.neighbors(path.back())) {
      if (used[w]) continue;
      used[w] = true;
      path.push_back(w);
      if (self(self)) return true;
      path.pop_back();
      used[w] = false;
    }
    return false;
  };
  if (extend(extend)) return path;
  return std::nullopt;
}

struct Cut {
  VertexSet side;
  std::vector<Edge> edges;
};

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    if (r > UINT64_MAX / (n - k + i)) return UINT64_MAX;
    r = r * (n - k + i) / i;
  }
  return r;
}

/// All cuts with |S| = s, S enumerated as lexicographic combinations.
inline std::vector<Cut> cuts_of_size(const Topology& g, std::size_t s, std::uint64_t budget = std::uint64_t{1} << 20) {
  const auto n = g.vertex_count();
  if (s < 1 || s >= n) throw ParameterError("cut side size must be in [1, n-1]");
  require_budget(binomial(n, s), budget, "cuts_of_size");
  std::vector<Cut> out;
  std::vector<VertexId> comb(s);
  for (std::size_t i = 0; i < s; ++i) comb[i] = i + 1;
  while (true) {
    VertexSet side(n);
    for (auto v : comb) side.insert(v);
    out.push_back({side, cut_set(g, side)});
    std::size_t i = s;
    while (i > 0 && comb[i - 1] == n - s + i) --i;
    if (i == 0) break;
    ++comb[i - 1];
    for (std::size_t j = i; j < s; ++j) comb[j] = comb[j - 1] + 1;
  }
  return out;
}

}  // namespace netcode
