#include "oad/gen.h"

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <utility>

#include "oad/random.h"

namespace oad {

Problem GenPathological(int n) {
  if (n < 1) throw InstanceError("pathological family needs n >= 1");
  Problem p;
  p.max_value = 4 * n - 1;
  std::vector<VarId> x, y, z;
  for (int i = 1; i <= n; ++i) {
    x.push_back(p.AddVar("X" + std::to_string(i), Interval{1, 2 * n - 1}));
  }
  for (int i = 1; i <= 2 * n; ++i) {
    y.push_back(p.AddVar("Y" + std::to_string(i), Interval{1, 4 * n - 1}));
  }
  for (int i = 1; i <= n; ++i) {
    z.push_back(p.AddVar("Z" + std::to_string(i), Interval{2 * n, 4 * n - 1}));
  }
  std::vector<VarId> xy = x, yz = y;
  xy.insert(xy.end(), y.begin(), y.end());
  yz.insert(yz.end(), z.begin(), z.end());
  p.constraints.push_back(AllDifferent{xy});
  p.constraints.push_back(AllDifferent{yz});
  return p;
}

OverlapInstance PathologicalInstance(int n) {
  const Problem p = GenPathological(n);
  return OverlapInstance(p.max_value, p.domains,
                         std::get<AllDifferent>(p.constraints[0]).scope,
                         std::get<AllDifferent>(p.constraints[1]).scope);
}

Problem GenRandom(const RandomSpec& spec) {
  if (spec.n < 1 || spec.d < 1 || spec.o < 1) {
    throw InstanceError("random family needs n, d, o >= 1");
  }
  Problem p;
  p.max_value = spec.d;
  std::vector<std::vector<VarId>> blocks(3);
  const char* prefixes[] = {"X", "Y", "Z"};
  for (int b = 0; b < 3; ++b) {
    for (int i = 1; i <= spec.n; ++i) {
      blocks[b].push_back(p.AddVar(prefixes[b] + std::to_string(i), Interval{1, spec.d}));
    }
  }
  std::vector<VarId> w;
  for (int i = 1; i <= spec.o; ++i) {
    w.push_back(p.AddVar("W" + std::to_string(i), Interval{1, spec.d}));
  }
  for (const auto& block : blocks) {
    std::vector<VarId> scope = block;
    scope.insert(scope.end(), w.begin(), w.end());
    p.constraints.push_back(AllDifferent{scope});
  }
  std::mt19937_64 rng(spec.seed);
  const int64_t pairs = static_cast<int64_t>(spec.n) * (spec.n - 1) / 2;
  const int count = static_cast<int>(std::min<int64_t>(spec.n, pairs));
  for (const auto& block : blocks) {
    std::set<std::pair<int, int>> used;
    while (static_cast<int>(used.size()) < count) {
      int i = static_cast<int>(UniformBelow(rng, spec.n));
      int j = static_cast<int>(UniformBelow(rng, spec.n));
      if (i == j) continue;
      if (i > j) std::swap(i, j);
      if (!used.insert({i, j}).second) continue;
      p.constraints.push_back(LessThan{block[i], block[j]});
    }
  }
  return p;
}

OverlapInstance GenScalingInstance(int n, int d, uint64_t seed) {
  if (n < 1 || d < 1) throw InstanceError("scaling instance needs n, d >= 1");
  std::mt19937_64 rng(seed);
  std::vector<Domain> domains;
  std::vector<VarId> s, t;
  for (int i = 0; i < n; ++i) {
    int a = UniformInt(rng, 1, d);
    int b = UniformInt(rng, 1, d);
    if (a > b) std::swap(a, b);
    domains.emplace_back(Interval{a, b});
    if (i % 3 != 2) s.push_back(MakeVarId(i));
    if (i % 3 != 0) t.push_back(MakeVarId(i));
  }
  return OverlapInstance(d, std::move(domains), std::move(s), std::move(t));
}

}  // namespace oad
