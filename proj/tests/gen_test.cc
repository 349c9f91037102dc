#include "oad/gen.h"

#include <gtest/gtest.h>

#include <set>

#include "oad/io.h"
#include "oad/oracle.h"

namespace oad {
namespace {

int CountLessThan(const Problem& p) {
  int count = 0;
  for (const Constraint& c : p.constraints) count += std::holds_alternative<LessThan>(c);
  return count;
}

TEST(GenPathologicalTest, Shape) {
  const Problem p = GenPathological(3);
  ASSERT_EQ(p.num_vars(), 12);
  EXPECT_EQ(p.max_value, 11);
  EXPECT_EQ(p.names[0], "X1");
  EXPECT_EQ(p.names[3], "Y1");
  EXPECT_EQ(p.names[11], "Z3");
  EXPECT_EQ(p.domains[0], Domain(Interval{1, 5}));
  EXPECT_EQ(p.domains[3], Domain(Interval{1, 11}));
  EXPECT_EQ(p.domains[9], Domain(Interval{6, 11}));
  ASSERT_EQ(p.constraints.size(), 2u);
  EXPECT_EQ(std::get<AllDifferent>(p.constraints[0]).scope.size(), 9u);
  EXPECT_EQ(std::get<AllDifferent>(p.constraints[1]).scope.size(), 9u);
  EXPECT_THROW(GenPathological(0), InstanceError);
}

TEST(GenPathologicalTest, EverySetIsFineButTheWholeIsNot) {
  const OverlapInstance inst = PathologicalInstance(2);
  EXPECT_FALSE(SimMatchingExistsBruteForce(inst).has_value());
  // Each AllDifferent alone has a solution.
  for (int side = 0; side < 2; ++side) {
    std::vector<Domain> doms;
    std::vector<VarId> s;
    for (int i = 0; i < inst.num_vars(); ++i) {
      const VarId v = MakeVarId(i);
      if (side == 0 ? !inst.InS(v) : !inst.InT(v)) continue;
      s.push_back(MakeVarId(static_cast<int>(doms.size())));
      doms.push_back(inst.domain(v));
    }
    EXPECT_TRUE(SimMatchingExistsBruteForce(OverlapInstance(inst.max_value(), doms, s, {}))
                    .has_value());
  }
}

TEST(GenRandomTest, Shape) {
  const Problem p = GenRandom(RandomSpec{5, 20, 7, 11});
  ASSERT_EQ(p.num_vars(), 22);
  EXPECT_EQ(p.names[0], "X1");
  EXPECT_EQ(p.names[5], "Y1");
  EXPECT_EQ(p.names[15], "W1");
  for (const Domain& dom : p.domains) EXPECT_EQ(dom, Domain(Interval{1, 20}));
  EXPECT_EQ(CountLessThan(p), 15);
  std::set<std::pair<int, int>> seen;
  for (const Constraint& c : p.constraints) {
    if (const auto* ad = std::get_if<AllDifferent>(&c)) {
      EXPECT_EQ(ad->scope.size(), 12u);
      continue;
    }
    const auto& lt = std::get<LessThan>(c);
    EXPECT_LT(Index(lt.lhs), Index(lt.rhs));
    EXPECT_EQ(Index(lt.lhs) / 5, Index(lt.rhs) / 5);
    EXPECT_TRUE(seen.insert({Index(lt.lhs), Index(lt.rhs)}).second);
  }
  EXPECT_NO_THROW(p.Validate());
}

TEST(GenRandomTest, OrderCountIsCappedByAvailablePairs) {
  EXPECT_EQ(CountLessThan(GenRandom(RandomSpec{1, 5, 1, 1})), 0);
  EXPECT_EQ(CountLessThan(GenRandom(RandomSpec{2, 5, 1, 1})), 3);
  EXPECT_EQ(CountLessThan(GenRandom(RandomSpec{3, 5, 1, 1})), 9);
  EXPECT_THROW(GenRandom(RandomSpec{0, 5, 1, 1}), InstanceError);
  EXPECT_THROW(GenRandom(RandomSpec{1, 5, 0, 1}), InstanceError);
}

TEST(GenRandomTest, SmallestInstanceIsUnsat) {
  const SolveResult r = Solve(GenRandom(RandomSpec{1, 1, 1, 1}), SolveConfig{});
  EXPECT_EQ(r.stats.status, SearchStatus::kUnsat);
}

TEST(GenRandomTest, SeedsAreDeterministic) {
  EXPECT_EQ(GenRandom(RandomSpec{4, 15, 10, 9}), GenRandom(RandomSpec{4, 15, 10, 9}));
  EXPECT_NE(GenRandom(RandomSpec{4, 15, 10, 9}), GenRandom(RandomSpec{4, 15, 10, 10}));
}

// Regression against the checked-in file, so that a seed keeps naming the
// same instance.
TEST(GenRandomTest, MatchesFrozenFile) {
  const InstanceFile file =
      ReadInstanceFile(std::string(OAD_SOURCE_DIR) + "/data/random_n4_d15_o10_seed1.oad");
  EXPECT_EQ(file.problem, GenRandom(RandomSpec{4, 15, 10, 1}));
}

TEST(GenScalingInstanceTest, Shape) {
  const OverlapInstance inst = GenScalingInstance(9, 30, 4);
  ASSERT_EQ(inst.num_vars(), 9);
  for (int i = 0; i < 9; ++i) {
    const VarId v = MakeVarId(i);
    EXPECT_EQ(static_cast<int>(inst.block(v)), i % 3);
    const auto& iv = std::get<Interval>(inst.domain(v));
    EXPECT_LE(1, iv.lb);
    EXPECT_LE(iv.lb, iv.ub);
    EXPECT_LE(iv.ub, 30);
  }
  EXPECT_EQ(GenScalingInstance(9, 30, 4).domains(), inst.domains());
}

}  // namespace
}  // namespace oad
