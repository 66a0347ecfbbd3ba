#pragma once

#include <cstdint>
#include <string>

#include "netcode/error.hpp"

namespace netcode {

/// Enumeration limits shared by every exhaustive routine.
struct Budgets {
  std::uint64_t executions = std::uint64_t{1} << 24;
  std::uint64_t codewords = std::uint64_t{1} << 20;
  std::int64_t free_set_range = 60;
  std::uint64_t search_steps = std::uint64_t{1} << 26;
};

inline void require_budget(std::uint64_t required, std::uint64_t budget, const std::string& what) {
  if (required > budget) {
    throw CapacityError(what + ": requires " + std::to_string(required) + " but budget is " +
                        std::to_string(budget));
  }
}

/// 2^e, or UINT64_MAX when it does not fit.
inline std::uint64_t saturating_pow2(std::uint64_t e) {
  return e >= 64 ? UINT64_MAX : (std::uint64_t{1} << e);
}

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

inline std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r = saturating_mul(r, base);
  return r;
}

}  // namespace netcode
