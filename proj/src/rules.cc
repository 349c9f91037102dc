#include "oad/rules.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace oad {
namespace {

SetKind KindOf(int slack) {
  if (slack < 0) return SetKind::kViolating;
  if (slack == 0) return SetKind::kSimHall;
  if (slack == 1) return SetKind::kAlmostSimHall;
  return SetKind::kLoose;
}

std::vector<uint32_t> VisitOrder(int n, const RulesOptions& options) {
  std::vector<uint32_t> masks((1u << n) - 1);
  std::iota(masks.begin(), masks.end(), 1u);
  if (options.shuffle_seed.has_value()) {
    std::mt19937_64 rng(*options.shuffle_seed);
    std::shuffle(masks.begin(), masks.end(), rng);
  } else {
    std::stable_sort(masks.begin(), masks.end(), [](uint32_t a, uint32_t b) {
      return __builtin_popcount(a) < __builtin_popcount(b);
    });
  }
  return masks;
}

}  // namespace

SetClass ClassifySet(std::span<const VarId> vars, const OverlapInstance& instance) {
  if (vars.empty()) throw std::invalid_argument("ClassifySet needs a non-empty set");
  const int slack = SimHallSlack(vars, instance);
  return SetClass{KindOf(slack), slack};
}

RuleSweep SweepRules(const OverlapInstance& instance, const RulesOptions& options) {
  const int n = instance.num_vars();
  if (n > options.size_guard) throw SizeGuardExceeded(n, options.size_guard);
  const int d = instance.max_value();

  std::vector<ValueSet> doms;
  for (const Domain& dom : instance.domains()) doms.push_back(ToValueSet(dom, d));
  std::vector<ValueSet> removed(n, ValueSet(d));
  RuleSweep sweep;

  for (uint32_t mask : VisitOrder(n, options)) {
    ValueSet all(d), s_side(d), t_side(d);
    for (int i = 0; i < n; ++i) {
      if (!(mask >> i & 1u)) continue;
      all |= doms[i];
      const Block b = instance.block(MakeVarId(i));
      if (b == Block::kSOnly) s_side |= doms[i];
      if (b == Block::kTOnly) t_side |= doms[i];
    }
    const ValueSet both = s_side & t_side;
    const int slack = all.Size() + both.Size() - __builtin_popcount(mask);
    if (slack < 0) {
      if (!sweep.violator.has_value()) {
        std::vector<VarId> p;
        for (int i = 0; i < n; ++i) {
          if (mask >> i & 1u) p.push_back(MakeVarId(i));
        }
        sweep.violator = std::move(p);
      }
      continue;
    }
    if (slack > 1) continue;
    for (int u = 0; u < n; ++u) {
      if (mask >> u & 1u) continue;
      const Block b = instance.block(MakeVarId(u));
      if (slack == 0) {
        removed[u] |= doms[u] & both;
        if (b == Block::kSOnly) removed[u] |= doms[u] & (all - t_side);
        if (b == Block::kTOnly) removed[u] |= doms[u] & (all - s_side);
        if (b == Block::kShared) removed[u] |= doms[u] & all;
      } else if (b == Block::kShared) {
        removed[u] |= doms[u] & both;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int v : removed[i].Values()) sweep.removals.emplace_back(MakeVarId(i), v);
  }
  return sweep;
}

PropagationOutcome DcByRules(const OverlapInstance& instance,
                             const RulesOptions& options) {
  const int d = instance.max_value();
  std::vector<Domain> current;
  for (const Domain& dom : instance.domains()) current.emplace_back(ToValueSet(dom, d));
  std::vector<PruneEvent> log;
  while (true) {
    const OverlapInstance graph = instance.WithDomains(current);
    const RuleSweep sweep = SweepRules(graph, options);
    if (sweep.violator.has_value()) return FailureOutcome(std::move(log));
    if (sweep.removals.empty()) break;
    for (const auto& [var, value] : sweep.removals) {
      std::get<ValueSet>(current[Index(var)]).Erase(value);
      log.push_back({var, PruneKind::kRemoveValue, value});
    }
  }
  PropagationOutcome out;
  out.domains = std::move(current);
  out.prune_log = std::move(log);
  return out;
}

PropagationOutcome BoundsByRules(const OverlapInstance& instance,
                                 const RulesOptions& options) {
  const int d = instance.max_value();
  const int n = instance.num_vars();
  std::vector<Domain> current;
  for (const Domain& dom : instance.domains()) current.emplace_back(Hull(dom));
  std::vector<PruneEvent> log;
  while (true) {
    if (std::any_of(current.begin(), current.end(), IsEmpty)) {
      return FailureOutcome(std::move(log));
    }
    const RuleSweep sweep = SweepRules(instance.WithDomains(current), options);
    if (sweep.violator.has_value()) return FailureOutcome(std::move(log));
    std::vector<ValueSet> removed(n, ValueSet(d));
    for (const auto& [var, value] : sweep.removals) removed[Index(var)].Insert(value);
    bool moved = false;
    for (int i = 0; i < n; ++i) {
      Interval& dom = std::get<Interval>(current[i]);
      const Interval before = dom;
      while (dom.lb <= dom.ub && removed[i].Contains(dom.lb)) ++dom.lb;
      while (dom.lb <= dom.ub && removed[i].Contains(dom.ub)) --dom.ub;
      if (dom != before) {
        AppendDomainDiff(MakeVarId(i), before, dom, log);
        moved = true;
      }
    }
    if (!moved) break;
  }
  PropagationOutcome out;
  out.domains = std::move(current);
  out.prune_log = std::move(log);
  return out;
}

}  // namespace oad
