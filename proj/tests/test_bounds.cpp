#include <gtest/gtest.h>

#include <random>

#include "netcode/bounds.hpp"
#include "netcode/simplex.hpp"

using namespace netcode;

namespace {

// Weak duality: a feasible primal and dual with equal objectives are both optimal.
void expect_certificate(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
                        const std::vector<Rational>& c, const SimplexResult<Rational>& r) {
  ASSERT_TRUE(r.bounded);
  ASSERT_EQ(r.primal.size(), c.size());
  ASSERT_EQ(r.dual.size(), b.size());
  Rational cx = 0, by = 0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    EXPECT_GE(r.primal[j], 0);
    cx += c[j] * r.primal[j];
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    EXPECT_GE(r.dual[i], 0);
    by += b[i] * r.dual[i];
    Rational row = 0;
    for (std::size_t j = 0; j < c.size(); ++j) row += A[i][j] * r.primal[j];
    EXPECT_LE(row, b[i]);
  }
  for (std::size_t j = 0; j < c.size(); ++j) {
    Rational col = 0;
    for (std::size_t i = 0; i < b.size(); ++i) col += A[i][j] * r.dual[i];
    EXPECT_GE(col, c[j]);
  }
  EXPECT_EQ(cx, by);
  EXPECT_EQ(cx, r.objective);
}

}  // namespace

TEST(Simplex, TextbookInstance) {
  // max 3x + 5y : x <= 4, 2y <= 12, 3x + 2y <= 18  ->  36 at (2, 6)
  std::vector<std::vector<Rational>> A{{1, 0}, {0, 2}, {3, 2}};
  std::vector<Rational> b{4, 12, 18}, c{3, 5};
  auto r = maximize(A, b, c);
  EXPECT_EQ(r.objective, Rational(36));
  EXPECT_EQ(r.primal, (std::vector<Rational>{2, 6}));
  expect_certificate(A, b, c, r);
}

TEST(Simplex, DetectsUnboundedness) {
  std::vector<std::vector<Rational>> A{{1, -1}};
  std::vector<Rational> b{1}, c{0, 1};
  EXPECT_FALSE(maximize(A, b, c).bounded);
}

TEST(Simplex, RandomInstancesCarryOptimalityCertificates) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
    std::vector<std::vector<Rational>> A(rows, std::vector<Rational>(cols));
    std::vector<Rational> b(rows), c(cols);
    for (auto& row : A) {
      for (auto& a : row) a = static_cast<long>(rng() % 4);
    }
    // A strictly positive last row keeps the feasible region bounded.
    for (auto& a : A.back()) a += 1;
    for (auto& v : b) v = static_cast<long>(rng() % 5);
    for (auto& v : c) v = static_cast<long>(rng() % 7) - 2;
    expect_certificate(A, b, c, maximize(A, b, c));
  }
}

TEST(Simplex, DegenerateProblemTerminates) {
  // Cycles under the largest-coefficient rule; Bland's rule must terminate.
  std::vector<std::vector<Rational>> A{{Rational(1, 2), Rational(-11, 2), Rational(-5, 2), 9},
                                       {Rational(1, 2), Rational(-3, 2), Rational(-1, 2), 1},
                                       {1, 0, 0, 0}};
  std::vector<Rational> b{0, 0, 1}, c{10, -57, -9, -24};
  auto r = maximize(A, b, c);
  EXPECT_EQ(r.objective, Rational(1));
  expect_certificate(A, b, c, r);
}

TEST(Bounds, SpecimenValues) {
  EXPECT_EQ(*lp_bound(Topology::complete(4), 4, 2, 3).value, Rational(3));
  EXPECT_EQ(*closed_nkd(4, 2, 3).value, Rational(3));
  EXPECT_EQ(*mds_bound(6, 2).value, Rational(15, 4));
  EXPECT_EQ(combined_bound(10, 1), Rational(5));
  EXPECT_EQ(combined_bound(3, 2), Rational(2));
  EXPECT_FALSE(mds_bound(3, 2).applicable());
  EXPECT_EQ(linear_bound(5), Rational(4));
}

TEST(Bounds, LpOnCycleOfFive) {
  EXPECT_EQ(*lp_bound(Topology::cycle(5), 5, 1, 5).value, Rational(5, 2));
}

TEST(Bounds, LpInapplicableBeyondTwiceDMinusOne) {
  EXPECT_FALSE(lp_bound(Topology::complete(5), 5, 3, 2).applicable());
  EXPECT_FALSE(closed_nkd(5, 3, 2).applicable());
  EXPECT_THROW(lp_bound(Topology::complete(4), 5, 1, 3), ParameterError);
}

TEST(Bounds, LpMatchesClosedFormOnCompleteGraphs) {
  for (std::size_t n = 3; n <= 7; ++n) {
    for (std::size_t d = 2; d <= n; ++d) {
      auto closed = closed_nkd(n, 1, d);
      auto lp = lp_bound(Topology::complete(n), n, 1, d);
      ASSERT_EQ(closed.applicable(), lp.applicable());
      if (lp.applicable()) EXPECT_EQ(*lp.value, *closed.value) << "n=" << n << " d=" << d;
    }
  }
}

TEST(Bounds, LpAtLeastClosedFormOnSparseGraphs) {
  // A subgraph has fewer packing constraints, so its value cannot drop below K_n.
  for (std::size_t n = 4; n <= 7; ++n) {
    for (std::size_t d = (n + 3) / 2; d <= n; ++d) {
      for (const auto& g : {Topology::cycle(n), Topology::path(n), Topology::star(n)}) {
        auto lp = lp_bound(g, n, 1, d);
        ASSERT_TRUE(lp.applicable());
        EXPECT_GE(*lp.value, *closed_nkd(n, 1, d).value) << "n=" << n << " d=" << d;
      }
    }
  }
}

TEST(Bounds, LpDualCoversEveryCut) {
  auto g = Topology::cycle(6);
  auto sol = lp_solution(g, 6, 2, 4);
  ASSERT_TRUE(sol);
  Rational total = 0;
  for (const auto& t : sol->edge_loads) total += t;
  EXPECT_EQ(total, sol->value);
  const auto& edges = g.edges();
  for (std::size_t c = 0; c < sol->cuts.size(); ++c) {
    Rational load = 0;
    for (const auto& e : sol->cuts[c].edges) {
      load += sol->edge_loads[static_cast<std::size_t>(std::lower_bound(edges.begin(), edges.end(), e) - edges.begin())];
    }
    EXPECT_GE(load, Rational(2));
  }
}

TEST(BoundReport, RowsAndCsv) {
  auto r = compute_bounds(Topology::complete(4), CodeSpec::reed_solomon(4, 2, 2));
  EXPECT_EQ(r.combined, Rational(3));
  auto rows = r.rows();
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[0].bound, "dimension");
  EXPECT_EQ(rows[3].bound, "mds");
  EXPECT_EQ(rows[3].value, "3");
  EXPECT_EQ(rows[6].bound, "cycle_improved");
  EXPECT_EQ(r.to_csv().substr(0, 27), "bound,value,applicability\nd");
}

TEST(BoundReport, NonMdsCodeSkipsMdsRow) {
  auto r = compute_bounds(Topology::complete(4), CodeSpec::parity_check(4, 2));
  EXPECT_FALSE(r.mds.applicable());
  EXPECT_EQ(r.combined, Rational(3));
}
