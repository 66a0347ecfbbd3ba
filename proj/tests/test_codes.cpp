#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "netcode/codes.hpp"

using namespace netcode;

namespace {

Word word(std::initializer_list<std::uint64_t> vals, std::size_t m) {
  std::vector<Symbol> s;
  for (auto v : vals) s.emplace_back(v, m);
  return Word(std::move(s));
}

// Independent oracles: a coordinate recount and an all-pairs minimum.
std::size_t recount(const Word& x, const Word& y) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) d += x[i].value() != y[i].value();
  return d;
}

std::size_t all_pairs_min(const std::vector<Word>& words) {
  std::size_t best = SIZE_MAX;
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = i + 1; j < words.size(); ++j) best = std::min(best, recount(words[i], words[j]));
  }
  return best;
}

std::vector<Word> filter_space(const CodeSpec& code) {
  std::vector<Word> out;
  const auto n = code.length(), m = code.width();
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << (n * m)); ++i) {
    auto w = Word::from_index(i, n, m);
    if (code.contains(w)) out.push_back(w);
  }
  return out;
}

}  // namespace

TEST(Contains, RepetitionAcceptsConstantWords) {
  auto rep = CodeSpec::repetition(3, 4);
  EXPECT_TRUE(contains(rep, word({9, 9, 9}, 4)));
  EXPECT_FALSE(contains(rep, word({9, 9, 8}, 4)));
}

TEST(Contains, ParityAcceptsXorClosure) {
  auto par = CodeSpec::parity_check(4, 3);
  EXPECT_TRUE(contains(par, word({5, 3, 1, 5 ^ 3 ^ 1}, 3)));
  EXPECT_FALSE(contains(par, word({5, 3, 1, 0}, 3)));
}

TEST(Contains, ShapeMismatchThrows) {
  auto rep = CodeSpec::repetition(3, 2);
  EXPECT_THROW(contains(rep, word({1, 1}, 2)), ParameterError);
  EXPECT_THROW(contains(rep, word({1, 1, 1}, 3)), ParameterError);
}

TEST(HammingDistance, IdentityAndSingleChange) {
  auto x = word({2, 2, 2}, 2);
  EXPECT_EQ(hamming_distance(x, x), 0u);
  EXPECT_EQ(hamming_distance(x, word({2, 1, 2}, 2)), 1u);
}

TEST(HammingDistance, MatchesRecountOnRandomPairs) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    auto x = Word::from_index(rng() & 0xFF, 4, 2);
    auto y = Word::from_index(rng() & 0xFF, 4, 2);
    EXPECT_EQ(hamming_distance(x, y), recount(x, y));
  }
}

TEST(MinDistance, ClosedForms) {
  for (std::size_t n = 2; n <= 6; ++n) {
    EXPECT_EQ(min_distance(CodeSpec::repetition(n, 2)), n);
    EXPECT_EQ(min_distance(CodeSpec::parity_check(n, 2)), 2u);
  }
}

TEST(MinDistance, ExplicitCodeMatchesAllPairs) {
  std::vector<Word> words{word({0, 0, 0}, 2), word({1, 2, 3}, 2), word({2, 3, 1}, 2), word({3, 1, 1}, 2)};
  auto code = CodeSpec::explicit_code(3, 2, words);
  EXPECT_EQ(min_distance(code), all_pairs_min(words));
}

TEST(MinDistance, EnumerableCodesAgreeWithAllPairs) {
  for (std::size_t n = 2; n <= 4; ++n) {
    for (std::size_t m = 1; m <= 2; ++m) {
      for (const auto& code : {CodeSpec::repetition(n, m), CodeSpec::parity_check(n, m)}) {
        EXPECT_EQ(min_distance(code), all_pairs_min(enumerate(code))) << code.name();
      }
    }
  }
  auto rs = CodeSpec::reed_solomon(4, 2, 2);
  EXPECT_EQ(min_distance(rs), all_pairs_min(enumerate(rs)));
}

TEST(CodeSpec, RejectsDistanceBelowTwo) {
  std::vector<Word> words{word({0, 0, 0}, 1), word({0, 0, 1}, 1)};
  EXPECT_THROW(CodeSpec::explicit_code(3, 1, words), ParameterError);
  EXPECT_THROW(CodeSpec::explicit_code(3, 1, {word({0, 0, 0}, 1)}), ParameterError);
}

TEST(Enumerate, SmallCases) {
  auto rep = enumerate(CodeSpec::repetition(2, 1));
  ASSERT_EQ(rep.size(), 2u);
  EXPECT_EQ(rep[0], word({0, 0}, 1));
  EXPECT_EQ(rep[1], word({1, 1}, 1));
  auto par = enumerate(CodeSpec::parity_check(2, 1));
  ASSERT_EQ(par.size(), 2u);
  EXPECT_EQ(par[0], word({0, 0}, 1));
  EXPECT_EQ(par[1], word({1, 1}, 1));
}

TEST(Enumerate, ParityCountMatchesMembershipFilter) {
  auto code = CodeSpec::parity_check(3, 2);
  EXPECT_EQ(enumerate(code).size(), 16u);
  EXPECT_EQ(enumerate(code), filter_space(code));
}

TEST(Enumerate, LexicographicAndComplete) {
  for (const auto& code : {CodeSpec::repetition(3, 2), CodeSpec::parity_check(4, 2), CodeSpec::reed_solomon(3, 2, 2)}) {
    auto words = enumerate(code);
    EXPECT_EQ(words, filter_space(code)) << code.name();
    for (std::size_t i = 1; i < words.size(); ++i) EXPECT_LT(words[i - 1].index(), words[i].index());
  }
}

TEST(Enumerate, BudgetEnforced) {
  Budgets tiny;
  tiny.codewords = 10;
  EXPECT_THROW(enumerate(CodeSpec::parity_check(3, 2), tiny), CapacityError);
}

TEST(NearestCodeword, CodewordAndMajority) {
  auto rep = CodeSpec::repetition(3, 2);
  auto [c, d] = nearest_codeword(rep, word({3, 3, 3}, 2));
  EXPECT_EQ(c, word({3, 3, 3}, 2));
  EXPECT_EQ(d, 0u);
  auto [c2, d2] = nearest_codeword(rep, word({1, 1, 2}, 2));
  EXPECT_EQ(c2, word({1, 1, 1}, 2));
  EXPECT_EQ(d2, 1u);
}

TEST(NearestCodeword, MatchesFullScan) {
  auto code = CodeSpec::reed_solomon(3, 1, 2);
  auto words = filter_space(code);
  for (std::uint64_t i = 0; i < 64; ++i) {
    auto w = Word::from_index(i, 3, 2);
    std::size_t best = SIZE_MAX;
    Word arg;
    for (const auto& c : words) {
      if (recount(c, w) < best) {
        best = recount(c, w);
        arg = c;
      }
    }
    auto [c, d] = nearest_codeword(code, w);
    EXPECT_EQ(d, best);
    EXPECT_EQ(c, arg);
    EXPECT_EQ(code.contains(w), d == 0);
  }
}

TEST(Dimension, ParityIsNMinusOne) {
  for (std::size_t n = 2; n <= 4; ++n) {
    for (std::size_t m = 1; m <= 2; ++m) {
      auto code = CodeSpec::parity_check(n, m);
      EXPECT_EQ(code.dimension(), Rational(static_cast<long>(n - 1)));
      EXPECT_EQ(filter_space(code).size(), std::uint64_t{1} << (m * (n - 1)));
    }
  }
}

TEST(Dimension, ExplicitFromSize) {
  // |C| = 2^{2m} at n = 4: the Reed-Solomon (4,2) code listed explicitly.
  auto rs = CodeSpec::reed_solomon(4, 2, 2);
  auto code = CodeSpec::explicit_code(4, 2, enumerate(rs));
  EXPECT_EQ(code.dimension(), Rational(2));
  EXPECT_TRUE(code.is_mds());
}

TEST(Mds, ReedSolomonMeetsSingleton) {
  for (std::size_t m = 2; m <= 3; ++m) {
    for (std::size_t k = 1; k < 4; ++k) {
      auto rs = CodeSpec::reed_solomon(4, k, m);
      EXPECT_EQ(rs.min_distance_cached(), 4 - k + 1);
      EXPECT_EQ(rs.size(), std::uint64_t{1} << (k * m));
      EXPECT_TRUE(rs.is_mds());
    }
  }
}

TEST(Field, MultiplicationIsAGroupOnNonzero) {
  for (std::size_t m = 1; m <= 8; ++m) {
    BinaryExtensionField f(m);
    for (std::uint32_t a = 1; a < f.size(); ++a) {
      std::set<std::uint32_t> row;
      for (std::uint32_t b = 1; b < f.size(); ++b) row.insert(f.mul(a, b));
      EXPECT_EQ(row.size(), f.size() - 1) << "m=" << m << " a=" << a;
      EXPECT_EQ(row.count(0), 0u);
    }
  }
}

TEST(Hex, PaddedToNibbleCount) {
  auto w = word({1, 0, 3}, 3);  // bits 001 000 011
  EXPECT_EQ(w.to_hex(), "043");
  EXPECT_EQ(Word::from_hex("043", 3, 3), w);
  EXPECT_EQ(word({1, 1}, 1).to_hex(), "3");
}

TEST(CodeFile, RoundTrip) {
  auto rs = CodeSpec::reed_solomon(3, 2, 2);
  auto text = write_explicit_code(rs);
  std::istringstream in(text);
  auto back = read_explicit_code(in);
  EXPECT_EQ(enumerate(back), enumerate(rs));
  EXPECT_EQ(back.min_distance_cached(), 2u);
}

TEST(Symbol, MostSignificantBitFirst) {
  Symbol s(0b1011, 4);
  EXPECT_TRUE(s.bit(0));
  EXPECT_FALSE(s.bit(1));
  EXPECT_EQ(s.to_bits().to_string(), "1011");
  EXPECT_THROW(Symbol(16, 4), ParameterError);
}
