#pragma once

// n-partite graph whose edges are the union of 2^m labeled special n-cycles.

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "netcode/budget.hpp"
#include "netcode/codes.hpp"
#include "netcode/error.hpp"

namespace netcode {

using Label = std::int64_t;

/// Edge of F between part `part` and part `part + 1 (mod n)`; labels in that order.
struct PartiteEdge {
  std::size_t part = 0;
  Label from = 0;
  Label to = 0;

  friend bool operator==(const PartiteEdge&, const PartiteEdge&) = default;
  friend auto operator<=>(const PartiteEdge&, const PartiteEdge&) = default;
};

inline std::string to_string(const PartiteEdge& e) {
  return "part" + std::to_string(e.part + 1) + ":" + std::to_string(e.from) + "-" + std::to_string(e.to);
}

class PartiteGraphF {
 public:
  /// `cycles[x][i]` is the vertex of the special cycle of symbol x in part i (0-based).
  PartiteGraphF(std::size_t n, std::size_t m, std::vector<std::vector<Label>> cycles)
      : n_(n), m_(m), cycles_(std::move(cycles)) {
    if (n < 3) throw ParameterError("partite graph needs n >= 3");
    if (m < 1 || m > 24) throw ParameterError("partite graph symbol width out of range");
    parts_.assign(n, {});
    for (const auto& c : cycles_) {
      if (c.size() != n) throw ParameterError("special cycle has the wrong length");
      for (std::size_t i = 0; i < n; ++i) parts_[i].push_back(c[i]);
    }
    for (auto& p : parts_) {
      std::sort(p.begin(), p.end());
      p.erase(std::unique(p.begin(), p.end()), p.end());
    }
    for (std::uint64_t x = 0; x < cycles_.size(); ++x) {
      for (std::size_t i = 0; i < n; ++i) owners_[edge_of(x, i)].push_back(x);
    }
  }

  std::size_t order() const { return n_; }
  std::size_t symbol_width() const { return m_; }
  std::uint64_t cycle_count() const { return cycles_.size(); }
  const std::vector<std::vector<Label>>& cycles() const { return cycles_; }
  const std::vector<Label>& cycle(std::uint64_t x) const { return cycles_.at(x); }
  const std::vector<std::vector<Label>>& parts() const { return parts_; }
  const std::vector<Label>& part(std::size_t i) const { return parts_.at(i); }

  /// Width of a part label: ceil(log2 |I_i|).
  std::size_t label_width(std::size_t i) const { return ceil_log2(parts_.at(i).size()); }
  std::size_t max_label_width() const {
    std::size_t w = 0;
    for (std::size_t i = 0; i < n_; ++i) w = std::max(w, label_width(i));
    return w;
  }
  std::size_t total_label_width() const {
    std::size_t w = 0;
    for (std::size_t i = 0; i < n_; ++i) w += label_width(i);
    return w;
  }

  std::optional<std::size_t> index_in_part(std::size_t i, Label l) const {
    const auto& p = parts_.at(i);
    auto it = std::lower_bound(p.begin(), p.end(), l);
    if (it == p.end() || *it != l) return std::nullopt;
    return static_cast<std::size_t>(it - p.begin());
  }

  PartiteEdge edge_of(std::uint64_t x, std::size_t i) const {
    const auto& c = cycles_.at(x);
    return {i, c[i], c[(i + 1) % n_]};
  }

  /// Symbols whose labeled cycle uses `e`.
  const std::vector<std::uint64_t>& owners(const PartiteEdge& e) const {
    static const std::vector<std::uint64_t> kNone;
    auto it = owners_.find(e);
    return it == owners_.end() ? kNone : it->second;
  }

  /// The unique labeled cycle through `e`, if there is exactly one.
  std::optional<std::uint64_t> decode_edge(const PartiteEdge& e) const {
    const auto& o = owners(e);
    if (o.size() != 1) return std::nullopt;
    return o.front();
  }

  const std::map<PartiteEdge, std::vector<std::uint64_t>>& edge_owners() const { return owners_; }
  std::size_t edge_count() const { return owners_.size(); }

  /// Export: header "n m", then per symbol its hex value and n labels.
  std::string to_text() const {
    std::ostringstream out;
    out << n_ << ' ' << m_ << '\n';
    const std::size_t digits = (m_ + 3) / 4;
    for (std::uint64_t x = 0; x < cycles_.size(); ++x) {
      std::ostringstream hex;
      hex << std::hex << x;
      auto h = hex.str();
      out << std::string(digits > h.size() ? digits - h.size() : 0, '0') << h;
      for (auto l : cycles_[x]) out << ' ' << l;
      out << '\n';
    }
    return out.str();
  }

  static PartiteGraphF from_text(std::istream& in) {
    std::size_t n = 0, m = 0;
    if (!(in >> n >> m)) throw ParameterError("F file: expected header 'n m'");
    std::vector<std::vector<Label>> cycles;
    std::string hex;
    while (in >> hex) {
      std::uint64_t x = std::stoull(hex, nullptr, 16);
      if (x != cycles.size()) throw ParameterError("F file: symbols must be listed in order");
      std::vector<Label> c(n);
      for (auto& l : c) {
        if (!(in >> l)) throw ParameterError("F file: truncated label list");
      }
      cycles.push_back(std::move(c));
    }
    return PartiteGraphF(n, m, std::move(cycles));
  }

 private:
  std::size_t n_;
  std::size_t m_;
  std::vector<std::vector<Label>> cycles_;
  std::vector<std::vector<Label>> parts_;
  std::map<PartiteEdge, std::vector<std::uint64_t>> owners_;
};

struct PropertyReport {
  bool edge_disjoint = false;         // (1) exactly 2^m labeled cycles, pairwise edge-disjoint
  bool unique_cycle_per_edge = false; // (2) every edge lies on exactly one special cycle
  bool cycle_count_exact = false;     // (3) exactly 2^m special cycles in F
  std::uint64_t special_cycles = 0;
  std::vector<std::string> counterexamples;

  bool all() const { return edge_disjoint && unique_cycle_per_edge && cycle_count_exact; }
};

/// Checks (1)(2)(3) by enumerating every special cycle of F: walk part 1 ->
/// part 2 -> ... -> part n along F's edges, then test the closing edge.
inline PropertyReport verify_properties(const PartiteGraphF& f, const Budgets& budgets = {}) {
  PropertyReport rep;
  const auto n = f.order();
  const std::uint64_t expected = std::uint64_t{1} << f.symbol_width();

  rep.edge_disjoint = f.cycle_count() == expected;
  if (!rep.edge_disjoint) {
    rep.counterexamples.push_back("(1) " + std::to_string(f.cycle_count()) + " labeled cycles, expected " +
                                  std::to_string(expected));
  }
  for (const auto& [e, owners] : f.edge_owners()) {
    if (owners.size() > 1) {
      rep.edge_disjoint = false;
      rep.counterexamples.push_back("(1) edge " + to_string(e) + " shared by symbols " + std::to_string(owners[0]) +
                                    " and " + std::to_string(owners[1]));
      break;
    }
  }

  std::vector<std::map<Label, std::vector<Label>>> next(n);
  for (const auto& [e, owners] : f.edge_owners()) next[e.part][e.from].push_back(e.to);

  std::map<PartiteEdge, std::uint64_t> hits;
  std::vector<Label> path;
  std::uint64_t steps = 0;
  auto walk = [&](auto&& self, std::size_t part) -> void {
    if (++steps > budgets.search_steps) throw CapacityError("verify_properties: special cycle walk over budget");
    if (part == n - 1) {
      PartiteEdge closing{n - 1, path.back(), path.front()};
      if (f.edge_owners().count(closing) == 0) return;
      ++rep.special_cycles;
      for (std::size_t i = 0; i < n; ++i) ++hits[{i, path[i], path[(i + 1) % n]}];
      return;
    }
    auto it = next[part].find(path.back());
    if (it == next[part].end()) return;
    for (auto to : it->second) {
      path.push_back(to);
      self(self, part + 1);
      path.pop_back();
    }
  };
  for (auto start : f.part(0)) {
    path.assign(1, start);
    walk(walk, 0);
  }

  rep.unique_cycle_per_edge = true;
  for (const auto& [e, owners] : f.edge_owners()) {
    auto h = hits.count(e) ? hits.at(e) : 0;
    if (h != 1) {
      rep.unique_cycle_per_edge = false;
      rep.counterexamples.push_back("(2) edge " + to_string(e) + " lies on " + std::to_string(h) +
                                    " special cycles");
      break;
    }
  }
  rep.cycle_count_exact = rep.special_cycles == expected;
  if (!rep.cycle_count_exact) {
    rep.counterexamples.push_back("(3) found " + std::to_string(rep.special_cycles) + " special cycles, expected " +
                                  std::to_string(expected));
  }
  return rep;
}

/// Relabels every part by first use over symbols 0, 1, ...; two graphs are
/// isomorphic as labeled-cycle systems iff their canonical cycles agree.
inline std::vector<std::vector<Label>> canonical_cycles(const PartiteGraphF& f) {
  std::vector<std::map<Label, Label>> relabel(f.order());
  std::vector<std::vector<Label>> out;
  out.reserve(f.cycle_count());
  for (const auto& c : f.cycles()) {
    std::vector<Label> row(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      auto [it, inserted] = relabel[i].try_emplace(c[i], static_cast<Label>(relabel[i].size()));
      row[i] = it->second;
    }
    out.push_back(std::move(row));
  }
  return out;
}

inline bool isomorphic(const PartiteGraphF& a, const PartiteGraphF& b) {
  return a.order() == b.order() && a.symbol_width() == b.symbol_width() && canonical_cycles(a) == canonical_cycles(b);
}

}  // namespace netcode
