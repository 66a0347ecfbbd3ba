#pragma once

// Exact lower bounds on the normalized cost of static detection protocols.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "netcode/budget.hpp"
#include "netcode/codes.hpp"
#include "netcode/graph.hpp"
#include "netcode/simplex.hpp"

namespace netcode {

/// A bound value, or the reason it does not apply.
struct BoundValue {
  std::optional<Rational> value;
  std::string note;

  bool applicable() const { return value.has_value(); }
};

/// Optimal cut-packing weights and the matching edge loads.
struct LpSolution {
  Rational value;
  std::vector<Cut> cuts;
  std::vector<Rational> weights;     // g, one per cut
  std::vector<Rational> edge_loads;  // t, one per graph edge (dual solution)
};

inline Rational dimension_bound(const CodeSpec& code) {
  if (code.min_distance_cached() < 2) throw ParameterError("dimension_bound: code has d < 2");
  return code.dimension();
}

/// Packing LP over cuts with |S| = n-d+1: maximize k * sum g subject to
/// sum of g over the cuts containing e <= 1 for every edge e. Needs n <= 2(d-1).
inline std::optional<LpSolution> lp_solution(const Topology& g, std::size_t n, const Rational& k, std::size_t d,
                                             const Budgets& budgets = {}) {
  if (n != g.vertex_count()) throw ParameterError("lp_bound: n differs from the graph order");
  if (d < 2 || d > n) throw ParameterError("lp_bound: d must lie in [2, n]");
  if (n > 2 * (d - 1)) return std::nullopt;
  const std::size_t s = n - d + 1;
  LpSolution sol;
  sol.cuts = cuts_of_size(g, s, budgets.codewords);
  const auto& edges = g.edges();
  std::vector<std::vector<Rational>> A(edges.size(), std::vector<Rational>(sol.cuts.size(), Rational(0)));
  for (std::size_t c = 0; c < sol.cuts.size(); ++c) {
    for (const auto& e : sol.cuts[c].edges) {
      auto it = std::lower_bound(edges.begin(), edges.end(), e);
      A[static_cast<std::size_t>(it - edges.begin())][c] = 1;
    }
  }
  std::vector<Rational> b(edges.size(), Rational(1));
  std::vector<Rational> obj(sol.cuts.size(), k);
  auto res = maximize(A, b, obj);
  if (!res.bounded) throw ConstructionFault("lp_bound: cut LP unbounded, graph has an empty cut");
  sol.value = res.objective;
  sol.weights = std::move(res.primal);
  sol.edge_loads = std::move(res.dual);
  return sol;
}

inline BoundValue lp_bound(const Topology& g, std::size_t n, const Rational& k, std::size_t d,
                           const Budgets& budgets = {}) {
  auto sol = lp_solution(g, n, k, d, budgets);
  if (!sol) return {std::nullopt, "inapplicable: n > 2(d-1)"};
  return {sol->value, "applicable"};
}

/// k n (n-1) / (2 (n-d+1) (d-1)), the uniform-weight LP solution on K_n.
inline BoundValue closed_nkd(std::size_t n, const Rational& k, std::size_t d) {
  if (d < 2 || d > n) throw ParameterError("closed_nkd: d must lie in [2, n]");
  if (n > 2 * (d - 1)) return {std::nullopt, "inapplicable: n > 2(d-1)"};
  Rational v = k * Rational(static_cast<long>(n * (n - 1)), static_cast<long>(2 * (n - d + 1) * (d - 1)));
  return {v, "applicable"};
}

/// n (n-1) / (2 (n-k)) for an MDS code with integer dimension k; needs n >= 2k.
inline BoundValue mds_bound(std::size_t n, std::size_t k) {
  if (k < 1 || k >= n) throw ParameterError("mds_bound: k must lie in [1, n-1]");
  if (n < 2 * k) return {std::nullopt, "inapplicable: n < 2k"};
  return {Rational(static_cast<long>(n * (n - 1)), static_cast<long>(2 * (n - k))), "applicable"};
}

inline Rational combined_bound(std::size_t n, std::size_t k) {
  Rational best(static_cast<long>(k));
  auto m = mds_bound(n, k);
  if (m.value) best = std::max(best, *m.value);
  return best;
}

/// Applies to linear static protocols only.
inline Rational linear_bound(std::size_t n) {
  if (n < 2) throw ParameterError("linear_bound: n must be at least 2");
  return Rational(static_cast<long>(n - 1));
}

struct BoundReport {
  std::size_t n = 0;
  Rational k;
  std::size_t d = 0;
  Rational dimension;
  BoundValue lp;
  std::optional<LpSolution> lp_detail;
  BoundValue closed;
  BoundValue mds;
  Rational combined;
  Rational linear;

  struct Row {
    std::string bound;
    std::string value;
    std::string applicability;
  };

  /// Fixed row order: dimension, lp, closed_nkd, mds, combined, linear, cycle_improved.
  std::vector<Row> rows() const {
    auto fmt = [](const BoundValue& b) { return b.value ? to_string(*b.value) : std::string("-"); };
    return {
        {"dimension", to_string(dimension), "applicable"},
        {"lp", fmt(lp), lp.note},
        {"closed_nkd", fmt(closed), closed.note},
        {"mds", fmt(mds), mds.note},
        {"combined", to_string(combined), "max of applicable"},
        {"linear", to_string(linear), "linear static protocols only"},
        {"cycle_improved", "-", "> n/2 unquantified; cycle graphs with Rep only"},
    };
  }

  std::string to_csv() const {
    std::ostringstream out;
    out << "bound,value,applicability\n";
    for (const auto& r : rows()) out << r.bound << ',' << r.value << ',' << r.applicability << '\n';
    return out.str();
  }

  std::string to_text() const {
    std::ostringstream out;
    out << "n=" << n << " k=" << to_string(k) << " d=" << d << '\n';
    for (const auto& r : rows()) {
      out << r.bound << std::string(r.bound.size() < 16 ? 16 - r.bound.size() : 1, ' ') << r.value
          << std::string(r.value.size() < 10 ? 10 - r.value.size() : 1, ' ') << r.applicability << '\n';
    }
    return out.str();
  }
};

/// All bounds for an (n,k,d) code on `g`. `mds_k` is set when the code is MDS
/// with that integer dimension.
inline BoundReport compute_bounds(const Topology& g, std::size_t n, const Rational& k, std::size_t d,
                                  std::optional<std::size_t> mds_k = std::nullopt, const Budgets& budgets = {}) {
  BoundReport r;
  r.n = n;
  r.k = k;
  r.d = d;
  r.dimension = k;
  r.lp_detail = lp_solution(g, n, k, d, budgets);
  r.lp = r.lp_detail ? BoundValue{r.lp_detail->value, "applicable"} : BoundValue{std::nullopt, "inapplicable: n > 2(d-1)"};
  r.closed = closed_nkd(n, k, d);
  r.mds = mds_k ? mds_bound(n, *mds_k) : BoundValue{std::nullopt, "inapplicable: not MDS"};
  r.combined = k;
  for (const auto* b : {&r.lp, &r.closed, &r.mds}) {
    if (b->value) r.combined = std::max(r.combined, *b->value);
  }
  r.linear = linear_bound(n);
  return r;
}

inline BoundReport compute_bounds(const Topology& g, const CodeSpec& code, const Budgets& budgets = {}) {
  std::optional<std::size_t> mds_k;
  if (code.is_mds() && boost::multiprecision::denominator(code.dimension()) == 1) {
    mds_k = static_cast<std::size_t>(boost::multiprecision::numerator(code.dimension()));
  }
  return compute_bounds(g, code.length(), dimension_bound(code), code.min_distance_cached(), mds_k, budgets);
}

}  // namespace netcode
