#include "oad/alldiff.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "test_util.h"

namespace oad {
namespace {

using testing::MakeInstance;

std::vector<VarId> Scope(std::initializer_list<int> ids) {
  std::vector<VarId> out;
  for (int i : ids) out.push_back(MakeVarId(i));
  return out;
}

// Supported values of a single AllDifferent by enumeration: every variable
// on the S side, T empty.
std::vector<ValueSet> Supports(int d, const std::vector<Domain>& doms) {
  return testing::SupportedValues(MakeInstance(d, doms, std::string(doms.size(), 's')));
}

TEST(BcAllDiffTest, HallIntervalPushesThirdVariable) {
  const std::vector<Domain> doms = {Interval{1, 2}, Interval{1, 2}, Interval{1, 3}};
  const auto scope = Scope({0, 1, 2});
  const auto out = BcAllDiff(scope, doms);
  ASSERT_FALSE(out.failed());
  EXPECT_EQ((*out.domains)[2], Domain(Interval{3, 3}));
  EXPECT_EQ((*out.domains)[0], Domain(Interval{1, 2}));
}

TEST(BcAllDiffTest, PigeonholeFails) {
  const std::vector<Domain> doms = {Interval{1, 2}, Interval{1, 2}, Interval{2, 2}};
  const auto scope = Scope({0, 1, 2});
  EXPECT_TRUE(BcAllDiff(scope, doms).failed());
}

TEST(BcAllDiffTest, OnlyScopeIsTouchedAndSetsAreTrimmed) {
  const std::vector<Domain> doms = {Interval{1, 1}, ValueSet::Of(4, {1, 2, 4}),
                                    Interval{1, 1}};
  const auto scope = Scope({0, 1});
  const auto out = BcAllDiff(scope, doms);
  ASSERT_FALSE(out.failed());
  EXPECT_EQ((*out.domains)[1], Domain(ValueSet::Of(4, {2, 4})));
  EXPECT_EQ((*out.domains)[2], Domain(Interval{1, 1}));
}

TEST(BcAllDiffTest, DuplicateScopeThrows) {
  const std::vector<Domain> doms = {Interval{1, 2}, Interval{1, 2}};
  const auto scope = Scope({0, 0});
  EXPECT_THROW(BcAllDiff(scope, doms), std::invalid_argument);
  EXPECT_THROW(DcAllDiff(scope, doms), std::invalid_argument);
}

// Bounds consistency on intervals: each new bound is the extreme supported
// value of the hull problem.
TEST(BcAllDiffTest, BoundsMatchEnumeration) {
  std::mt19937_64 rng(41);
  for (int it = 0; it < 500; ++it) {
    const OverlapInstance inst = testing::RandomIntervalInstance(rng, 6, 7);
    const std::vector<Domain> doms = inst.domains();
    std::vector<VarId> scope;
    for (int i = 0; i < inst.num_vars(); ++i) scope.push_back(MakeVarId(i));
    const auto out = BcAllDiff(scope, doms);
    const auto sup = Supports(inst.max_value(), doms);
    const bool none = std::any_of(sup.begin(), sup.end(),
                                  [](const ValueSet& s) { return s.Empty(); });
    ASSERT_EQ(out.failed(), none) << testing::Describe(inst);
    if (none) continue;
    for (int i = 0; i < inst.num_vars(); ++i) {
      const auto& got = std::get<Interval>((*out.domains)[i]);
      EXPECT_EQ(got.lb, sup[i].Min()) << testing::Describe(inst);
      EXPECT_EQ(got.ub, sup[i].Max()) << testing::Describe(inst);
    }
  }
}

TEST(DcAllDiffTest, RemovesInteriorValues) {
  const std::vector<Domain> doms = {ValueSet::Of(3, {1, 3}), ValueSet::Of(3, {1, 3}),
                                    Interval{1, 3}};
  const auto scope = Scope({0, 1, 2});
  const auto out = DcAllDiff(scope, doms);
  ASSERT_FALSE(out.failed());
  EXPECT_EQ(ToValueSet((*out.domains)[2], 3).Values(), std::vector<int>{2});
}

// Domain consistency: exactly the values in some solution survive, on a
// random scope inside a larger problem.
TEST(DcAllDiffTest, MatchesEnumeration) {
  std::mt19937_64 rng(42);
  for (int it = 0; it < 500; ++it) {
    const OverlapInstance inst = testing::RandomMixedInstance(rng, 6, 7);
    const std::vector<Domain> doms = inst.domains();
    std::vector<VarId> scope;
    std::vector<Domain> scoped;
    for (int i = 0; i < inst.num_vars(); ++i) {
      if (UniformBelow(rng, 4) == 0) continue;
      scope.push_back(MakeVarId(i));
      scoped.push_back(doms[i]);
    }
    const auto out = DcAllDiff(scope, doms);
    const auto sup = Supports(inst.max_value(), scoped);
    const bool none = std::any_of(sup.begin(), sup.end(),
                                  [](const ValueSet& s) { return s.Empty(); });
    ASSERT_EQ(out.failed(), none) << testing::Describe(inst);
    if (none) continue;
    std::vector<bool> in_scope(doms.size(), false);
    for (size_t k = 0; k < scope.size(); ++k) {
      in_scope[Index(scope[k])] = true;
      EXPECT_EQ(ToValueSet((*out.domains)[Index(scope[k])], inst.max_value()).Values(),
                sup[k].Values())
          << testing::Describe(inst);
    }
    for (size_t i = 0; i < doms.size(); ++i) {
      if (!in_scope[i]) EXPECT_EQ((*out.domains)[i], doms[i]);
    }
  }
}

}  // namespace
}  // namespace oad
