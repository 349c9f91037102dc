#include "oad/oracle.h"

#include <gtest/gtest.h>

#include "oad/gen.h"
#include "test_util.h"

namespace oad {
namespace {

using testing::MakeInstance;
using testing::RunningExample;

TEST(SimMatchingTest, RunningExampleHasAWitness) {
  const auto m = SimMatchingExistsBruteForce(RunningExample());
  ASSERT_TRUE(m.has_value());
  EXPECT_TRUE(IsValidSimMatching(RunningExample(), *m));
  EXPECT_EQ(m->ValueOf(MakeVarId(0)), 4);
  EXPECT_EQ(m->ValueOf(MakeVarId(4)), 5);
}

TEST(SimMatchingTest, SeparationInstanceHasNone) {
  const OverlapInstance inst = PathologicalInstance(4);
  EXPECT_FALSE(SimMatchingExistsBruteForce(inst).has_value());
  const auto violator = SimHallCheck(inst, 16);
  ASSERT_TRUE(violator.has_value());
  EXPECT_LT(SimHallSlack(*violator, inst), 0);
}

TEST(SimMatchingTest, WholeSeparationInstanceHasSlackMinusOne) {
  for (int n = 1; n <= 6; ++n) {
    const OverlapInstance inst = PathologicalInstance(n);
    std::vector<VarId> all;
    for (int i = 0; i < inst.num_vars(); ++i) all.push_back(MakeVarId(i));
    EXPECT_EQ(SimHallSlack(all, inst), -1) << n;
  }
}

TEST(SimMatchingTest, SharedValueCountsOnceForBothSides) {
  // A shared variable and an S-only and a T-only variable on two values:
  // X1 (S) and X3 (T) may share a value, X2 (shared) takes the other.
  const OverlapInstance inst =
      MakeInstance(2, {Interval{1, 2}, Interval{1, 2}, Interval{1, 2}}, "sbt");
  const auto m = SimMatchingExistsBruteForce(inst);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->ValueOf(MakeVarId(0)), m->ValueOf(MakeVarId(2)));
  EXPECT_FALSE(SimHallCheck(inst).has_value());
}

TEST(SimMatchingTest, InvalidMatchingsAreRejected) {
  const OverlapInstance inst = RunningExample();
  SimMatching m;
  for (int i = 0; i < 7; ++i) m.edges.emplace_back(MakeVarId(i), 1);
  EXPECT_FALSE(IsValidSimMatching(inst, m));
  m.edges.pop_back();
  EXPECT_FALSE(IsValidSimMatching(inst, m));
}

TEST(SimMatchingTest, SizeGuards) {
  const OverlapInstance inst = PathologicalInstance(4);  // 16 variables
  EXPECT_THROW(SimHallCheck(inst), SizeGuardExceeded);
  EXPECT_THROW(SimMatchingExistsBruteForce(inst, 8), SizeGuardExceeded);
}

TEST(SimMatchingTest, AgreesWithExhaustiveEnumeration) {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 300; ++it) {
    const OverlapInstance inst = testing::RandomMixedInstance(rng, 6, 6);
    const bool any = !testing::AllSimMatchings(inst).empty();
    const auto m = SimMatchingExistsBruteForce(inst);
    ASSERT_EQ(m.has_value(), any) << testing::Describe(inst);
    if (m.has_value()) EXPECT_TRUE(IsValidSimMatching(inst, *m));
  }
}

// Simultaneous Hall condition on interval domains: a violator exists iff no
// witness does.
TEST(SimHallTest, ExactOnIntervalDomains) {
  std::mt19937_64 rng(12);
  for (int it = 0; it < 400; ++it) {
    const OverlapInstance inst = testing::RandomIntervalInstance(rng, 8, 8);
    EXPECT_EQ(SimHallCheck(inst).has_value(), !SimMatchingExistsBruteForce(inst).has_value())
        << testing::Describe(inst);
  }
}

// On arbitrary value sets the condition is necessary but not sufficient:
// here every subset passes, yet no simultaneous matching exists.
TEST(SimHallTest, NotSufficientOnSetDomains) {
  const OverlapInstance inst = MakeInstance(
      6,
      {ValueSet::Of(6, {1, 5}), ValueSet::Of(6, {2, 4, 5, 6}), ValueSet::Of(6, {3, 4}),
       ValueSet::Of(6, {1, 4}), ValueSet::Of(6, {1, 3, 5, 6}), ValueSet::Of(6, {1, 4, 5}),
       ValueSet::Of(6, {1})},
      "ssstsbb");
  EXPECT_FALSE(SimHallCheck(inst).has_value());
  EXPECT_FALSE(SimMatchingExistsBruteForce(inst).has_value());
  EXPECT_TRUE(testing::AllSimMatchings(inst).empty());
}

TEST(EdgeSupportTest, InduceByEdgeRemovesValueBySide) {
  const OverlapInstance inst = RunningExample();
  // X1 is S-only: value 4 disappears from X2..X5 but stays for X6, X7.
  const OverlapInstance g = InduceByEdge(inst, MakeVarId(0), 4);
  ASSERT_EQ(g.num_vars(), 6);
  EXPECT_FALSE(DomainContains(g.domain(MakeVarId(3)), 4));  // old X5
  EXPECT_TRUE(DomainContains(g.domain(MakeVarId(5)), 4));   // old X7
  // X4 is shared: value 3 disappears everywhere.
  const OverlapInstance h = InduceByEdge(inst, MakeVarId(3), 3);
  for (int i = 0; i < h.num_vars(); ++i) {
    EXPECT_FALSE(DomainContains(h.domain(MakeVarId(i)), 3));
  }
}

TEST(EdgeSupportTest, RunningExampleSupports) {
  const OverlapInstance inst = RunningExample();
  EXPECT_TRUE(EdgeSupportedBruteForce(inst, MakeVarId(0), 4));
  EXPECT_FALSE(EdgeSupportedBruteForce(inst, MakeVarId(0), 1));
  EXPECT_FALSE(EdgeSupportedBruteForce(inst, MakeVarId(2), 2));
  EXPECT_TRUE(EdgeSupportedBruteForce(inst, MakeVarId(2), 3));
  EXPECT_THROW(EdgeSupportedBruteForce(inst, MakeVarId(1), 5), ValueNotInDomain);
}

TEST(EdgeSupportTest, AgreesWithExhaustiveEnumeration) {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 200; ++it) {
    const OverlapInstance inst = testing::RandomMixedInstance(rng, 6, 6);
    const auto supported = testing::SupportedValues(inst);
    for (int i = 0; i < inst.num_vars(); ++i) {
      const VarId v = MakeVarId(i);
      for (int x : ToValueSet(inst.domain(v), inst.max_value()).Values()) {
        EXPECT_EQ(EdgeSupportedBruteForce(inst, v, x), supported[i].Contains(x))
            << testing::Describe(inst) << " var " << i << " value " << x;
      }
    }
  }
}

TEST(BcOracleTest, RunningExampleBounds) {
  const auto out = BcOracle(RunningExample());
  ASSERT_FALSE(out.failed());
  const std::vector<Domain> want = {Interval{4, 4}, Interval{2, 2}, Interval{1, 3},
                                    Interval{1, 3}, Interval{5, 5}, Interval{2, 2},
                                    Interval{4, 4}};
  EXPECT_EQ(*out.domains, want);
}

TEST(BcOracleTest, BaseLayerCounterexampleRaisesX2) {
  const auto out = BcOracle(testing::BaseLayerCounterexample());
  ASSERT_FALSE(out.failed());
  EXPECT_EQ(std::get<Interval>((*out.domains)[1]), (Interval{3, 4}));
}

TEST(BcOracleTest, BoundsAreSoundAndSupportedInTheBox) {
  std::mt19937_64 rng(14);
  for (int it = 0; it < 300; ++it) {
    const OverlapInstance inst = testing::RandomIntervalInstance(rng, 6, 6);
    const auto out = BcOracle(inst);
    const auto supported = testing::SupportedValues(inst);
    if (supported.empty() || supported[0].Empty()) {
      EXPECT_TRUE(out.failed()) << testing::Describe(inst);
      continue;
    }
    ASSERT_FALSE(out.failed()) << testing::Describe(inst);
    for (int i = 0; i < inst.num_vars(); ++i) {
      const Interval b = std::get<Interval>((*out.domains)[i]);
      EXPECT_LE(b.lb, supported[i].Min());
      EXPECT_GE(b.ub, supported[i].Max());
      // Every bound has a support inside the bound box.
      std::vector<Domain> box(out.domains->begin(), out.domains->end());
      box[i] = Interval{b.lb, b.lb};
      EXPECT_TRUE(SimMatchingExistsBruteForce(inst.WithDomains(box)).has_value());
      box[i] = Interval{b.ub, b.ub};
      EXPECT_TRUE(SimMatchingExistsBruteForce(inst.WithDomains(box)).has_value());
    }
  }
}

}  // namespace
}  // namespace oad
