#include <gtest/gtest.h>

#include "netcode/protocols.hpp"
#include "netcode/verifier.hpp"

using namespace netcode;

namespace {

std::string metric(const CheckResult& r, const std::string& key) {
  for (const auto& [k, v] : r.metrics) {
    if (k == key) return v;
  }
  ADD_FAILURE() << "missing metric " << key;
  return {};
}

// Parity detection with the root's decision forced to accept.
StaticSchedule always_accept(const Topology& g, std::size_t m) {
  auto p = parity_protocol(g, m);
  p.name = "always-accept";
  for (auto& [v, d] : p.decisions) d = [](const LocalView&) { return true; };
  return p;
}

}  // namespace

TEST(DetectCheck, PassesCorrectProtocols) {
  auto g = Topology::cycle(4);
  auto r = exhaustive_detect_check(parity_protocol(g, 2), g, CodeSpec::parity_check(4, 2));
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(metric(r, "inputs"), "256");
  EXPECT_EQ(metric(r, "accepted"), "64");
  EXPECT_EQ(metric(r, "failures"), "0");
  EXPECT_FALSE(r.counterexample);
}

TEST(DetectCheck, CatchesMutationWithCounterexample) {
  auto g = Topology::cycle(4);
  auto r = exhaustive_detect_check(always_accept(g, 2), g, CodeSpec::parity_check(4, 2));
  EXPECT_FALSE(r.passed);
  EXPECT_EQ(metric(r, "failures"), "192");
  ASSERT_TRUE(r.counterexample);
  EXPECT_FALSE(r.counterexample->empty());
}

TEST(DetectCheck, SameReportForAnyWorkerCount) {
  auto g = Topology::cycle(4);
  auto p = always_accept(g, 2);
  auto code = CodeSpec::parity_check(4, 2);
  VerificationReport a, b;
  a.add(exhaustive_detect_check(p, g, code, {}, 1));
  b.add(exhaustive_detect_check(p, g, code, {}, 3));
  EXPECT_EQ(a.to_json().dump(), b.to_json().dump());
}

TEST(CorruptionPatterns, CountsMatchBinomials) {
  // 1 + n(q-1) + C(n,2)(q-1)^2
  EXPECT_EQ(corruption_patterns(4, 2, 0).size(), 1u);
  EXPECT_EQ(corruption_patterns(4, 2, 1).size(), 1u + 4 * 3);
  EXPECT_EQ(corruption_patterns(4, 2, 2).size(), 1u + 4 * 3 + 6 * 9);
}

TEST(CorrectCheck, CycleProtocolCostsAndErrors) {
  auto f = build_F(4, 2);
  auto g = Topology::cycle(4);
  auto r = exhaustive_correct_check(cycle_correct(f), g, CodeSpec::repetition(4, 2), 1);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(metric(r, "executions"), std::to_string(4 * (1 + 4 * 3)));
  EXPECT_EQ(metric(r, "detection_bits"), std::to_string(f.total_label_width()));
  EXPECT_EQ(metric(r, "worst_bits"), std::to_string(f.total_label_width() + 2 * f.max_label_width()));
  EXPECT_EQ(metric(r, "max_bits_errors_0"), std::to_string(f.total_label_width()));
}

TEST(CorrectCheck, CatchesBrokenOutput) {
  auto f = build_F(3, 2);
  auto p = cycle_correct(f);
  p.output = [](const LocalView& v) { return v.own_input; };
  auto r = exhaustive_correct_check(p, Topology::cycle(3), CodeSpec::repetition(3, 2), 1);
  EXPECT_FALSE(r.passed);
  ASSERT_TRUE(r.counterexample);
}

TEST(Collisions, TreeForwardingLeavesOnlyTheRootFree) {
  // Every non-root symbol is on the wire, so exactly 2^m inputs share a transcript.
  auto g = Topology::path(3);
  auto code = CodeSpec::repetition(3, 2);
  auto p = trivial_detect(g, code);
  for (std::uint64_t v = 0; v < 4; ++v) {
    EXPECT_EQ(collision_count(p, g, code, Word(std::vector<Symbol>(3, Symbol(v, 2)))), 4u);
  }
  auto r = sharehistory_check(p, g, code);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(metric(r, "max_collisions"), "4");
  EXPECT_EQ(metric(r, "codeword_transcripts_distinct"), "true");
}

TEST(Collisions, TriangleExceedsSingleDeciderCap) {
  // Frozen census for the triangle protocol at m = 3 (conjunction of local checks).
  auto g = Topology::cycle(3);
  auto code = CodeSpec::repetition(3, 3);
  auto r = sharehistory_check(triangle_protocol(3).detection, g, code);
  EXPECT_EQ(metric(r, "max_collisions"), "12");
  EXPECT_EQ(metric(r, "cap"), "8");
  EXPECT_FALSE(r.passed);
  EXPECT_EQ(metric(r, "codeword_transcripts_distinct"), "true");
}

TEST(Collisions, RequiresCodeword) {
  auto g = Topology::path(2);
  auto code = CodeSpec::repetition(2, 1);
  EXPECT_THROW(collision_count(trivial_detect(g, code), g, code, Word::from_index(1, 2, 1)), ParameterError);
}

TEST(CutMixing, HoldsForEveryProtocolFamily) {
  auto c4 = Topology::cycle(4);
  auto rep = CodeSpec::repetition(4, 2);
  auto r1 = cut_mixing_check(trivial_detect(c4, rep), c4, rep);
  EXPECT_TRUE(r1.passed);
  EXPECT_EQ(metric(r1, "cuts"), "14");
  EXPECT_EQ(metric(r1, "violations"), "0");
  auto r2 = cut_mixing_check(cycle_detect(build_F(4, 2)), c4, rep);
  EXPECT_TRUE(r2.passed);
  auto par = CodeSpec::parity_check(4, 2);
  EXPECT_TRUE(cut_mixing_check(parity_protocol(c4, 2), c4, par).passed);
}

TEST(InducedF, CycleProtocolReproducesItsGraph) {
  for (auto [n, m] : {std::pair<std::size_t, std::size_t>{3, 3}, {4, 2}}) {
    auto f = build_F(n, m);
    auto r = induced_F_check(cycle_detect(f), Topology::cycle(n), m, &f);
    EXPECT_TRUE(r.passed) << r.counterexample.value_or("");
    EXPECT_EQ(metric(r, "isomorphic_to_built"), "true");
    EXPECT_EQ(metric(r, "property_1"), "true");
    EXPECT_EQ(metric(r, "property_2"), "true");
  }
}

TEST(InducedF, TrivialProtocolPartsAndBits) {
  auto g = Topology::cycle(4);
  auto ind = extract_induced_F(trivial_detect(g, CodeSpec::repetition(4, 2)), g, 2);
  EXPECT_TRUE(ind.properties.edge_disjoint);
  EXPECT_TRUE(ind.properties.unique_cycle_per_edge);
  std::size_t total = 0;
  for (auto b : ind.edge_bits) total += b;
  EXPECT_EQ(total, 3 * 2u + 2u);  // tree from v1 on C_4: edges carry 2, 1, 1 symbols
  EXPECT_THROW(extract_induced_F(parity_protocol(Topology::path(4), 2), Topology::path(4), 2), ParameterError);
}

TEST(CompareToBounds, FlagsCostsBelowABound) {
  auto bounds = compute_bounds(Topology::complete(4), 4, 2, 3, 2);
  EXPECT_TRUE(compare_to_bounds("ok", Rational(3), bounds).passed);
  auto low = compare_to_bounds("low", Rational(5, 2), bounds);
  EXPECT_FALSE(low.passed);
  EXPECT_NE(low.counterexample->find("critical inconsistency"), std::string::npos);
  EXPECT_EQ(metric(low, "slack"), "-1/2");
  EXPECT_TRUE(compare_to_bounds("nl", Rational(2), compute_bounds(Topology::complete(3), 3, 2, 2)).passed);
  EXPECT_FALSE(compare_to_bounds("lin", Rational(2), compute_bounds(Topology::complete(4), 4, 1, 2), true).passed);
}

TEST(Report, JsonAndTextCarryEveryCheck) {
  VerificationReport rep;
  rep.title = "demo";
  CheckResult ok;
  ok.name = "a";
  CheckResult bad;
  bad.name = "b";
  bad.fail("line one\nline two");
  rep.add(ok);
  rep.add(bad);
  EXPECT_FALSE(rep.passed());
  auto j = rep.to_json();
  EXPECT_EQ(j["checks"].size(), 2u);
  EXPECT_EQ(j["checks"][1]["counterexample"], "line one\nline two");
  EXPECT_NE(rep.to_text().find("    | line two"), std::string::npos);
}
