#include "oad/core.h"

#include <gtest/gtest.h>

#include "test_util.h"

namespace oad {
namespace {

using testing::MakeInstance;
using testing::RunningExample;

TEST(ValueSetTest, RangeAndQueries) {
  const ValueSet s = ValueSet::Range(9, 3, 6);
  EXPECT_EQ(s.Size(), 4);
  EXPECT_EQ(s.Min(), 3);
  EXPECT_EQ(s.Max(), 6);
  EXPECT_TRUE(s.IsContiguous());
  EXPECT_FALSE(s.Contains(2));
  EXPECT_FALSE(s.Contains(0));
  EXPECT_FALSE(s.Contains(10));
  EXPECT_EQ(s.Next(4), 5);
  EXPECT_EQ(s.Next(6), 0);
}

TEST(ValueSetTest, SetAlgebra) {
  const ValueSet a = ValueSet::Of(6, {1, 3, 5});
  const ValueSet b = ValueSet::Of(6, {3, 4});
  EXPECT_EQ((a | b).Values(), (std::vector<int>{1, 3, 4, 5}));
  EXPECT_EQ((a & b).Values(), (std::vector<int>{3}));
  EXPECT_EQ((a - b).Values(), (std::vector<int>{1, 5}));
  EXPECT_FALSE(a.IsContiguous());
}

TEST(DomainTest, HullAndConversions) {
  const Domain set = ValueSet::Of(8, {2, 5, 7});
  EXPECT_EQ(Hull(set), (Interval{2, 7}));
  EXPECT_EQ(DomainSize(set), 3);
  EXPECT_FALSE(DomainContains(set, 3));
  EXPECT_EQ(DomainToString(set), "{2,5,7}");
  EXPECT_EQ(DomainToString(Domain{Interval{1, 4}}), "[1..4]");
  EXPECT_TRUE(IsEmpty(Domain{Interval{3, 2}}));
  EXPECT_EQ(AsInterval(ValueSet::Of(8, {3, 4, 5})), (Interval{3, 5}));
  EXPECT_FALSE(AsInterval(ValueSet::Of(8, {3, 5})).has_value());
}

TEST(OverlapInstanceTest, BlocksAndPartition) {
  const OverlapInstance inst = RunningExample();
  EXPECT_EQ(inst.num_vars(), 7);
  EXPECT_EQ(inst.block(MakeVarId(0)), Block::kSOnly);
  EXPECT_EQ(inst.block(MakeVarId(3)), Block::kShared);
  EXPECT_EQ(inst.block(MakeVarId(6)), Block::kTOnly);
  const VarPartition p = Partition(inst);
  EXPECT_EQ(p.s_only.size(), 2u);
  EXPECT_EQ(p.shared.size(), 3u);
  EXPECT_EQ(p.t_only.size(), 2u);
  EXPECT_TRUE(inst.AllIntervals());
}

TEST(OverlapInstanceTest, NeighborhoodIsUnionOfDomains) {
  const OverlapInstance inst = RunningExample();
  const VarId p[] = {MakeVarId(1), MakeVarId(5)};
  EXPECT_EQ(Neighborhood(p, inst).Values(), (std::vector<int>{1, 2, 3}));
}

TEST(OverlapInstanceTest, RejectsMalformedInput) {
  EXPECT_THROW(OverlapInstance(3, {Interval{1, 2}, Interval{1, 2}}, {MakeVarId(0)}, {}),
               InstanceError);  // X2 in neither scope
  EXPECT_THROW(OverlapInstance(3, {Interval{1, 4}}, {MakeVarId(0)}, {}), InstanceError);
  EXPECT_THROW(OverlapInstance(3, {Interval{1, 2}}, {MakeVarId(0), MakeVarId(0)}, {}),
               InstanceError);
  EXPECT_THROW(OverlapInstance(3, {Interval{1, 2}}, {MakeVarId(1)}, {}), InstanceError);
}

TEST(OverlapInstanceTest, AcceptsDisjointScopesAndEmptyDomains) {
  const OverlapInstance inst =
      MakeInstance(3, {Interval{1, 2}, Interval{2, 1}}, "st");
  EXPECT_EQ(inst.block(MakeVarId(1)), Block::kTOnly);
  EXPECT_TRUE(IsEmpty(inst.domain(MakeVarId(1))));
}

TEST(PruneLogTest, DiffThenReplayRestoresTheResult) {
  const std::vector<Domain> before = {Interval{1, 5}, ValueSet::Of(6, {1, 2, 4, 6})};
  const std::vector<Domain> after = {Interval{2, 4}, ValueSet::Of(6, {2, 6})};
  std::vector<PruneEvent> log;
  AppendDomainDiff(MakeVarId(0), before[0], after[0], log);
  AppendDomainDiff(MakeVarId(1), before[1], after[1], log);
  ASSERT_EQ(log.size(), 4u);
  EXPECT_EQ(log[0], (PruneEvent{MakeVarId(0), PruneKind::kRaiseLowerBound, 2}));
  EXPECT_EQ(log[1], (PruneEvent{MakeVarId(0), PruneKind::kLowerUpperBound, 4}));
  EXPECT_EQ(ReplayPrunes(before, log), after);
}

TEST(PruneLogTest, InteriorNotesLeaveIntervalsAlone) {
  const std::vector<Domain> doms = {Interval{1, 3}};
  const PruneEvent note{MakeVarId(0), PruneKind::kInteriorValue, 2};
  EXPECT_EQ(ReplayPrunes(doms, std::span(&note, 1)), doms);
}

}  // namespace
}  // namespace oad
