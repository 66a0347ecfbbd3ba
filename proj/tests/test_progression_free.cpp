#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "netcode/progression_free.hpp"

using namespace netcode;

namespace {

// Oracle: odometer over all order-tuples drawn from `s`.
bool free_by_tuples(const std::vector<std::int64_t>& s, std::size_t order) {
  if (s.empty()) return true;
  std::vector<std::size_t> idx(order, 0);
  while (true) {
    std::int64_t rest = 0;
    bool all_equal = true;
    for (std::size_t i = 1; i < order; ++i) {
      rest += s[idx[i]];
      all_equal = all_equal && idx[i] == idx[0];
    }
    if (!all_equal && rest == static_cast<std::int64_t>(order - 1) * s[idx[0]]) return false;
    std::size_t p = 0;
    while (p < order && ++idx[p] == s.size()) idx[p++] = 0;
    if (p == order) return true;
  }
}

// Oracle: largest free subset of {1..N} over all 2^N subsets.
std::size_t max_free_by_subsets(int N, std::size_t order) {
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1U << N); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) <= best) continue;
    std::vector<std::int64_t> s;
    for (int i = 0; i < N; ++i) {
      if ((mask >> i) & 1U) s.push_back(i + 1);
    }
    if (free_by_tuples(s, order)) best = s.size();
  }
  return best;
}

}  // namespace

TEST(VerifyFree, AgreesWithTupleOracle) {
  const std::vector<std::vector<std::int64_t>> sets{
      {1, 2, 4, 5}, {1, 2, 3}, {1, 3, 7, 9}, {2, 4, 6}, {1, 2, 4, 8, 9}, {1, 5, 6, 11}, {3}, {}};
  for (const auto& s : sets) {
    for (std::size_t order = 3; order <= 5; ++order) {
      EXPECT_EQ(verify_free(s, order), free_by_tuples(s, order)) << "order " << order;
    }
  }
}

TEST(VerifyFree, ViolationIsASolution) {
  auto v = find_free_violation({1, 2, 3, 10}, 3);
  ASSERT_TRUE(v);
  EXPECT_EQ(2 * (*v)[0], (*v)[1] + (*v)[2]);
  EXPECT_NE((*v)[1], (*v)[2]);
}

TEST(VerifyFree, RejectsBadInput) {
  EXPECT_THROW(verify_free({1, 1, 2}, 3), ParameterError);
  EXPECT_THROW(verify_free({1, 2}, 2), ParameterError);
}

TEST(ExactSearch, MaximaMatchSubsetEnumeration) {
  for (std::size_t order = 3; order <= 4; ++order) {
    auto table = max_free_table(14, order);
    ASSERT_EQ(table.size(), 14u);
    for (int N = 1; N <= 14; ++N) {
      const auto& fs = table[static_cast<std::size_t>(N - 1)];
      EXPECT_EQ(fs.range, N);
      EXPECT_EQ(fs.size(), max_free_by_subsets(N, order)) << "N=" << N << " order=" << order;
      EXPECT_TRUE(free_by_tuples(fs.members, order));
      for (auto v : fs.members) {
        EXPECT_GE(v, 1);
        EXPECT_LE(v, N);
      }
    }
  }
}

TEST(ExactSearch, LexicographicallyLeast) {
  EXPECT_EQ(exact_max_free_set(5).members, (std::vector<std::int64_t>{1, 2, 4, 5}));
  EXPECT_EQ(exact_max_free_set(9).members, (std::vector<std::int64_t>{1, 2, 4, 8, 9}));
}

TEST(ExactSearch, LimitsEnforced) {
  Budgets b;
  b.free_set_range = 10;
  EXPECT_THROW(max_free_table(11, 3, b), CapacityError);
  EXPECT_THROW(max_free_table(0, 3), ParameterError);
}

TEST(Behrend, SetsAreFree) {
  for (std::int64_t N : {10, 50, 200, 1000}) {
    for (std::size_t order = 3; order <= 4; ++order) {
      auto fs = behrend_set(N, order);
      EXPECT_TRUE(verify_free(fs.members, order)) << "N=" << N;
      EXPECT_LE(fs.members.back(), N);
      EXPECT_GE(fs.members.front(), 1);
    }
  }
}

TEST(Behrend, SizeTenIsThree) { EXPECT_EQ(behrend_set(10).size(), 3u); }

TEST(Behrend, MonotoneInRange) {
  std::size_t prev = 0;
  for (std::int64_t N = 2; N <= 300; ++N) {
    const auto s = behrend_set(N).size();
    EXPECT_GE(s, prev) << "N=" << N;
    prev = s;
  }
}

TEST(SmallestRange, MatchesOracleTable) {
  std::vector<std::size_t> r(15);
  for (int N = 1; N <= 14; ++N) r[static_cast<std::size_t>(N)] = max_free_by_subsets(N, 3);
  for (std::size_t m = 1; m <= 6; ++m) {
    std::int64_t expect = 1;
    while (static_cast<std::uint64_t>(expect) * r[static_cast<std::size_t>(expect)] < (std::uint64_t{1} << m)) ++expect;
    auto choice = smallest_range(m, 3);
    EXPECT_EQ(choice.range, expect) << "m=" << m;
    EXPECT_EQ(choice.set.size(), r[static_cast<std::size_t>(expect)]);
  }
}

TEST(SmallestRange, FrozenTable) {
  // (m, N, |B|) for n = 3.
  const std::vector<std::tuple<std::size_t, std::int64_t, std::size_t>> rows{
      {1, 2, 2}, {2, 2, 2}, {3, 4, 3}, {4, 5, 4}, {5, 8, 4}, {6, 11, 6}};
  for (const auto& [m, N, size] : rows) {
    auto c = smallest_range(m, 3);
    EXPECT_EQ(c.range, N) << "m=" << m;
    EXPECT_EQ(c.set.size(), size) << "m=" << m;
  }
}

TEST(SmallestRange, BehrendFallbackSuffices) {
  Budgets b;
  b.free_set_range = 8;
  auto c = smallest_range(10, 3, b);
  EXPECT_GT(c.range, 8);
  EXPECT_GE(static_cast<std::uint64_t>(c.range) * c.set.size(), 1024u);
  EXPECT_TRUE(verify_free(c.set.members, 3));
  EXPECT_THROW(smallest_range(10, 3, b, FreeSetMethod::Exact), CapacityError);
}

TEST(Encoder, InjectiveProgressions) {
  for (std::size_t n = 3; n <= 5; ++n) {
    auto enc = build_encoder(4, n);
    std::set<std::vector<std::int64_t>> seen;
    for (std::uint64_t x = 0; x < 16; ++x) {
      auto t = enc.tuple(x);
      ASSERT_EQ(t.size(), n);
      const auto [a, b] = enc.pair(x);
      for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(t[i], a + static_cast<std::int64_t>(i) * b);
      EXPECT_GE(a, 1);
      EXPECT_LE(a, enc.range());
      EXPECT_TRUE(std::binary_search(enc.free_set().members.begin(), enc.free_set().members.end(), b));
      seen.insert(t);
    }
    EXPECT_EQ(seen.size(), 16u);
  }
}

TEST(Encoder, RowMajorOrder) {
  auto enc = build_encoder(2, 3);  // N = 2, B = {1, 2}
  EXPECT_EQ(enc.pair(0), std::make_pair(std::int64_t{1}, std::int64_t{1}));
  EXPECT_EQ(enc.pair(1), std::make_pair(std::int64_t{1}, std::int64_t{2}));
  EXPECT_EQ(enc.pair(2), std::make_pair(std::int64_t{2}, std::int64_t{1}));
  EXPECT_EQ(enc.pair(3), std::make_pair(std::int64_t{2}, std::int64_t{2}));
}

TEST(FreeSetFile, RoundTripAndValidation) {
  auto fs = exact_max_free_set(9);
  std::istringstream in(write_free_set(fs));
  auto back = read_free_set(in);
  EXPECT_EQ(back.members, fs.members);
  EXPECT_EQ(back.range, 9);
  std::istringstream bad("5 3\n1 2 3\n");
  EXPECT_THROW(read_free_set(bad), ParameterError);
  std::istringstream out_of_range("5 3\n1 7\n");
  EXPECT_THROW(read_free_set(out_of_range), ParameterError);
  std::istringstream unsorted("5 3\n2 1\n");
  EXPECT_THROW(read_free_set(unsorted), ParameterError);
}
