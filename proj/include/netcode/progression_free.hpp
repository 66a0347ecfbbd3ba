#pragma once

// Integer sets without nontrivial solutions to x_2 + ... + x_n = (n-1) x_1,
// and the encoder that maps symbols to arithmetic tuples over such a set.
//
// For order 3 this is exactly 3-AP-freeness. For a general cycle length n the
// equation is what remains after summing the n equality checks of the cycle
// protocol, so a set free of it makes those checks sound.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "netcode/bits.hpp"
#include "netcode/budget.hpp"
#include "netcode/error.hpp"

namespace netcode {

struct FreeSet {
  std::int64_t range = 0;  // N: members lie in {1..N}
  std::size_t order = 3;
  std::vector<std::int64_t> members;
  std::string construction;

  std::size_t size() const { return members.size(); }
};

/// A nontrivial solution (x_1; x_2..x_n), or nothing if the set is free.
inline std::optional<std::vector<std::int64_t>> find_free_violation(const std::vector<std::int64_t>& members,
                                                                      std::size_t order,
                                                                      const Budgets& budgets = {}) {
  if (order < 3) throw ParameterError("freeness order must be at least 3");
  auto sorted = members;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ParameterError("free set members must be distinct");
  }
  require_budget(saturating_pow(sorted.size(), order), budgets.executions, "verify_free tuple space");
  std::vector<std::int64_t> tuple(order);
  // Ordered tuples (x_2..x_n) with repetition; partial sums prune once they pass the target.
  auto search = [&](auto&& self, std::size_t pos, std::int64_t remaining) -> bool {
    if (pos == order) {
      if (remaining != 0) return false;
      for (std::size_t i = 1; i < order; ++i) {
        if (tuple[i] != tuple[0]) return true;
      }
      return false;
    }
    for (auto v : sorted) {
      if (v > remaining) break;
      tuple[pos] = v;
      if (self(self, pos + 1, remaining - v)) return true;
    }
    return false;
  };
  for (auto x1 : sorted) {
    tuple[0] = x1;
    if (search(search, 1, static_cast<std::int64_t>(order - 1) * x1)) return tuple;
  }
  return std::nullopt;
}

inline bool verify_free(const std::vector<std::int64_t>& members, std::size_t order, const Budgets& budgets = {}) {
  return !find_free_violation(members, order, budgets).has_value();
}

namespace detail {

// Does adding z (larger than every member of `set`) create a nontrivial solution?
// Any such solution uses z among x_2..x_n with x_1 < z.
inline bool extension_breaks_freeness(const std::vector<std::int64_t>& set, std::int64_t z, std::size_t order) {
  const std::size_t rest = order - 2;
  if (set.empty()) return false;
  // reach[j] marks sums of exactly j elements drawn from set ∪ {z} with repetition.
  const std::int64_t cap = static_cast<std::int64_t>(order) * z + 1;
  std::vector<std::vector<bool>> reach(rest + 1, std::vector<bool>(static_cast<std::size_t>(cap), false));
  reach[0][0] = true;
  for (std::size_t j = 1; j <= rest; ++j) {
    for (std::int64_t s = 0; s < cap; ++s) {
      if (!reach[j - 1][static_cast<std::size_t>(s)]) continue;
      for (auto v : set) {
        if (s + v < cap) reach[j][static_cast<std::size_t>(s + v)] = true;
      }
      if (s + z < cap) reach[j][static_cast<std::size_t>(s + z)] = true;
    }
  }
  for (auto x1 : set) {
    const std::int64_t target = static_cast<std::int64_t>(order - 1) * x1 - z;
    if (target >= 0 && target < cap && reach[rest][static_cast<std::size_t>(target)]) return true;
  }
  return false;
}

}  // namespace detail

/// Maximum free subsets of {1..L} for every L = 1..N, each the lexicographically
/// least among maxima. Branch and bound; the bound uses translation invariance
/// of the constraint: at most best[L - i + 1] members fit in {i..L}.
/// Stops after the first entry for which `stop` holds.
inline std::vector<FreeSet> max_free_table(std::int64_t N, std::size_t order, const Budgets& budgets = {},
                                           const std::function<bool(const FreeSet&)>& stop = {}) {
  if (order < 3) throw ParameterError("freeness order must be at least 3");
  if (N < 1) throw ParameterError("range N must be at least 1");
  if (N > budgets.free_set_range) {
    throw CapacityError("exact free-set search: N=" + std::to_string(N) + " exceeds limit " +
                        std::to_string(budgets.free_set_range));
  }
  std::vector<std::size_t> best_size(static_cast<std::size_t>(N) + 1, 0);
  std::vector<FreeSet> table;
  std::uint64_t steps = 0;
  for (std::int64_t L = 1; L <= N; ++L) {
    std::vector<std::int64_t> best;
    std::vector<std::int64_t> cur;
    const std::size_t ceiling = best_size[static_cast<std::size_t>(L - 1)] + 1;
    auto rec = [&](auto&& self, std::int64_t i) -> bool {
      if (++steps > budgets.search_steps) throw CapacityError("exact free-set search exceeded step budget");
      const std::size_t bound = (i > L) ? 0
                                : (i == 1) ? static_cast<std::size_t>(L)
                                           : best_size[static_cast<std::size_t>(L - i + 1)];
      if (cur.size() + bound <= best.size()) return false;
      if (i > L) {
        best = cur;
        return best.size() == ceiling;
      }
      if (!detail::extension_breaks_freeness(cur, i, order)) {
        cur.push_back(i);
        if (self(self, i + 1)) return true;
        cur.pop_back();
      }
      return self(self, i + 1);
    };
    rec(rec, 1);
    best_size[static_cast<std::size_t>(L)] = best.size();
    table.push_back({L, order, best, "exact"});
    if (stop && stop(table.back())) break;
  }
  return table;
}

inline FreeSet exact_max_free_set(std::int64_t N, std::size_t order = 3, const Budgets& budgets = {}) {
  return max_free_table(N, order, budgets).back();
}

/// Behrend's sphere construction. Points of {0..D}^k with D*(order-1) < base
/// add without carries in base `base`; those on one sphere shell form a free
/// set, since an average of order-1 distinct points on a sphere lies strictly
/// inside it. Every (dimension, base) pair whose largest value fits is tried
/// and the biggest shell wins (ties: smallest dimension, base, norm).
inline FreeSet behrend_set(std::int64_t N, std::size_t order = 3, const Budgets& budgets = {}) {
  if (N < 2) throw ParameterError("behrend_set needs N >= 2");
  if (order < 3) throw ParameterError("freeness order must be at least 3");
  std::vector<std::int64_t> best{1};
  const std::int64_t limit = N - 1;  // values are shifted by +1 into {1..N}
  std::uint64_t work = 0;
  for (std::size_t dim = 2; dim <= 63; ++dim) {
    bool any_base = false;
    for (std::int64_t digit_max = 1;; ++digit_max) {
      const std::int64_t base = digit_max * static_cast<std::int64_t>(order - 1) + 1;
      // Smallest value with a nonzero top digit is base^(dim-1).
      long double top = std::pow(static_cast<long double>(base), static_cast<long double>(dim - 1));
      if (top > static_cast<long double>(limit)) break;
      any_base = true;
      std::map<std::int64_t, std::vector<std::int64_t>> shells;
      std::vector<std::int64_t> place(dim, 1);
      for (std::size_t i = 1; i < dim; ++i) place[i] = place[i - 1] * base;
      // Digits from the top down; a prefix whose value already exceeds the limit is cut.
      auto walk = [&](auto&& self, std::size_t pos, std::int64_t value, std::int64_t norm) -> void {
        if (++work > budgets.search_steps) throw CapacityError("behrend_set exceeded step budget");
        if (pos == 0) {
          shells[norm].push_back(value + 1);
          return;
        }
        for (std::int64_t d = 0; d <= digit_max; ++d) {
          const std::int64_t v = value + d * place[pos - 1];
          if (v > limit) break;
          self(self, pos - 1, v, norm + d * d);
        }
      };
      walk(walk, dim, 0, 0);
      for (auto& [norm, vals] : shells) {
        if (vals.size() > best.size()) {
          std::sort(vals.begin(), vals.end());
          best = vals;
        }
      }
    }
    if (!any_base) break;
  }
  FreeSet out{N, order, best, "behrend"};
  if (saturating_pow(best.size(), order) <= budgets.executions && !verify_free(best, order, budgets)) {
    throw ConstructionFault("behrend_set produced a set that is not free");
  }
  return out;
}

enum class FreeSetMethod { Auto, Exact, Behrend };

struct RangeChoice {
  std::int64_t range = 0;
  FreeSet set;
};

/// Least N with N * |free(N)| >= 2^m. Auto uses the exact searcher while N is
/// within its limit and Behrend's construction beyond it.
inline RangeChoice smallest_range(std::size_t m, std::size_t order, const Budgets& budgets = {},
                                  FreeSetMethod method = FreeSetMethod::Auto) {
  if (m < 1 || m > 40) throw ParameterError("smallest_range: m must be in [1, 40]");
  const std::uint64_t target = std::uint64_t{1} << m;
  std::int64_t start = 1;
  if (method != FreeSetMethod::Behrend) {
    auto suffices = [&](const FreeSet& fs) { return static_cast<std::uint64_t>(fs.range) * fs.size() >= target; };
    const auto table = max_free_table(budgets.free_set_range, order, budgets, suffices);
    if (suffices(table.back())) return {table.back().range, table.back()};
    if (method == FreeSetMethod::Exact) {
      throw CapacityError("smallest_range: no N <= " + std::to_string(budgets.free_set_range) +
                          " suffices with the exact searcher");
    }
    start = budgets.free_set_range + 1;
  }
  // |behrend_set(N)| never shrinks as N grows (every shell for N is available
  // for N+1), so N * |set| is increasing and the least N can be bisected.
  const std::int64_t max_range = std::int64_t{1} << 22;
  auto enough = [&](std::int64_t N) {
    auto fs = behrend_set(N, order, budgets);
    return std::pair{static_cast<std::uint64_t>(N) * fs.size() >= target, fs};
  };
  std::int64_t lo = std::max<std::int64_t>(start, 2);
  std::int64_t hi = lo;
  while (!enough(hi).first) {
    lo = hi + 1;
    hi *= 2;
    if (hi > max_range) throw CapacityError("smallest_range: no N found below 2^22");
  }
  while (lo < hi) {
    const auto mid = lo + (hi - lo) / 2;
    if (enough(mid).first) hi = mid;
    else lo = mid + 1;
  }
  return {lo, enough(lo).second};
}

/// Injective map from symbols to tuples (a, a+b, ..., a+(n-1)b), a in {1..N}, b in B.
/// Pairs are taken in row-major order (a outer, b inner over sorted B) and
/// assigned to symbols in increasing bit order.
class EncoderT {
 public:
  EncoderT(std::size_t m, std::size_t n, RangeChoice choice) : m_(m), n_(n), choice_(std::move(choice)) {
    const std::uint64_t count = std::uint64_t{1} << m;
    const auto& b = choice_.set.members;
    if (static_cast<std::uint64_t>(choice_.range) * b.size() < count) {
      throw ConstructionFault("encoder: N*|B| < 2^m");
    }
    pairs_.reserve(count);
    for (std::int64_t alpha = 1; alpha <= choice_.range && pairs_.size() < count; ++alpha) {
      for (auto beta : b) {
        if (pairs_.size() == count) break;
        pairs_.emplace_back(alpha, beta);
      }
    }
  }

  std::size_t symbol_width() const { return m_; }
  std::size_t order() const { return n_; }
  std::int64_t range() const { return choice_.range; }
  const FreeSet& free_set() const { return choice_.set; }
  std::uint64_t symbol_count() const { return pairs_.size(); }

  std::pair<std::int64_t, std::int64_t> pair(std::uint64_t symbol) const { return pairs_.at(symbol); }

  /// Entry i (0-based) of the tuple: a + i*b.
  std::int64_t entry(std::uint64_t symbol, std::size_t i) const {
    const auto& [a, b] = pairs_.at(symbol);
    return a + static_cast<std::int64_t>(i) * b;
  }

  std::vector<std::int64_t> tuple(std::uint64_t symbol) const {
    std::vector<std::int64_t> t(n_);
    for (std::size_t i = 0; i < n_; ++i) t[i] = entry(symbol, i);
    return t;
  }

 private:
  std::size_t m_;
  std::size_t n_;
  RangeChoice choice_;
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs_;
};

inline EncoderT build_encoder(std::size_t m, std::size_t n, const Budgets& budgets = {},
                              FreeSetMethod method = FreeSetMethod::Auto) {
  if (m > 24) throw CapacityError("build_encoder: m=" + std::to_string(m) + " is beyond desk scale");
  return EncoderT(m, n, smallest_range(m, n, budgets, method));
}

/// Free set file: header "N n", then the sorted members separated by whitespace.
inline std::string write_free_set(const FreeSet& fs) {
  std::ostringstream out;
  out << fs.range << ' ' << fs.order << '\n';
  for (std::size_t i = 0; i < fs.members.size(); ++i) out << (i ? " " : "") << fs.members[i];
  out << '\n';
  return out.str();
}

inline FreeSet read_free_set(std::istream& in, const Budgets& budgets = {}) {
  FreeSet fs;
  if (!(in >> fs.range >> fs.order)) throw ParameterError("free set file: expected header 'N n'");
  std::int64_t v = 0;
  while (in >> v) {
    if (v < 1 || v > fs.range) throw ParameterError("free set member " + std::to_string(v) + " outside {1..N}");
    fs.members.push_back(v);
  }
  if (!in.eof()) throw ParameterError("free set file: malformed member list");
  if (!std::is_sorted(fs.members.begin(), fs.members.end())) throw ParameterError("free set members must be sorted");
  if (!verify_free(fs.members, fs.order, budgets)) throw ParameterError("free set file: set is not free");
  fs.construction = "file";
  return fs;
}

}  // namespace netcode
