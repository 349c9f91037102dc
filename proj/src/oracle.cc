#include "oad/oracle.h"

#include <algorithm>
#include <string>
#include <unordered_set>

namespace oad {
namespace {

// Search for a simultaneous matching. Shared variables are assigned by
// depth-first search; once the set U of values they take is fixed, S-only
// and T-only variables are two independent bipartite matchings into the
// values outside U. Feasibility therefore depends on U alone, and failed
// sets are remembered.
class SimMatchingSearch {
 public:
  explicit SimMatchingSearch(const OverlapInstance& instance)
      : d_(instance.max_value()), used_(d_ + 1, false) {
    for (int i = 0; i < instance.num_vars(); ++i) {
      const VarId v = MakeVarId(i);
      domains_.push_back(ToValueSet(instance.domain(v), d_));
      switch (instance.block(v)) {
        case Block::kSOnly:
          s_only_.push_back(i);
          break;
        case Block::kShared:
          shared_.push_back(i);
          break;
        case Block::kTOnly:
          t_only_.push_back(i);
          break;
      }
    }
    assigned_.assign(domains_.size(), 0);
  }

  std::optional<SimMatching> Run() {
    for (const ValueSet& dom : domains_) {
      if (dom.Empty()) return std::nullopt;
    }
    if (!Search(0)) return std::nullopt;
    SimMatching m;
    for (size_t i = 0; i < assigned_.size(); ++i) {
      m.edges.emplace_back(MakeVarId(static_cast<int>(i)), assigned_[i]);
    }
    return m;
  }

 private:
  // Matches `vars` into unused values, ascending variables and values.
  // Writes the matching into assigned_ on success.
  bool Match(const std::vector<int>& vars) {
    std::vector<int> match_of_value(d_ + 1, -1);
    for (size_t k = 0; k < vars.size(); ++k) {
      std::vector<bool> seen(d_ + 1, false);
      if (!Augment(vars, static_cast<int>(k), match_of_value, seen)) return false;
    }
    for (int value = 1; value <= d_; ++value) {
      if (match_of_value[value] >= 0) assigned_[vars[match_of_value[value]]] = value;
    }
    return true;
  }

  bool Augment(const std::vector<int>& vars, int k, std::vector<int>& match_of_value,
               std::vector<bool>& seen) const {
    for (int value : domains_[vars[k]].Values()) {
      if (used_[value] || seen[value]) continue;
      seen[value] = true;
      if (match_of_value[value] < 0 ||
          Augment(vars, match_of_value[value], match_of_value, seen)) {
        match_of_value[value] = k;
        return true;
      }
    }
    return false;
  }

  // Both sides, with the shared variables from `next` on still free.
  bool SidesMatchable(size_t next) {
    std::vector<int> s_side = s_only_, t_side = t_only_;
    s_side.insert(s_side.end(), shared_.begin() + static_cast<long>(next), shared_.end());
    t_side.insert(t_side.end(), shared_.begin() + static_cast<long>(next), shared_.end());
    return Match(s_side) && Match(t_side);
  }

  std::string Key() const {
    std::string key(d_, '0');
    for (int v = 1; v <= d_; ++v) key[v - 1] = used_[v] ? '1' : '0';
    return key;
  }

  bool Search(size_t next) {
    if (failed_.count(Key())) return false;
    if (!SidesMatchable(next)) {
      failed_.insert(Key());
      return false;
    }
    if (next == shared_.size()) return true;
    const int var = shared_[next];
    for (int value : domains_[var].Values()) {
      if (used_[value]) continue;
      used_[value] = true;
      assigned_[var] = value;
      const bool ok = Search(next + 1);
      used_[value] = false;
      if (ok) return true;
    }
    assigned_[var] = 0;
    failed_.insert(Key());
    return false;
  }

  const int d_;
  std::vector<ValueSet> domains_;
  std::vector<int> s_only_, shared_, t_only_;
  std::vector<int> assigned_;
  std::vector<bool> used_;
  std::unordered_set<std::string> failed_;
};

void CheckGuard(int n, int guard) {
  if (n > guard) throw SizeGuardExceeded(n, guard);
}

}  // namespace

SizeGuardExceeded::SizeGuardExceeded(int n, int guard)
    : std::runtime_error("instance has " + std::to_string(n) +
                         " variables, exhaustive guard is " +
                         std::to_string(guard)) {}

int SimMatching::ValueOf(VarId v) const {
  for (const auto& [var, value] : edges) {
    if (var == v) return value;
  }
  return 0;
}

bool IsValidSimMatching(const OverlapInstance& instance, const SimMatching& m) {
  const int n = instance.num_vars();
  const int d = instance.max_value();
  std::vector<int> value_of(n, 0);
  for (const auto& [var, value] : m.edges) {
    if (Index(var) < 0 || Index(var) >= n) return false;
    if (value_of[Index(var)] != 0) return false;
    if (!DomainContains(instance.domain(var), value)) return false;
    value_of[Index(var)] = value;
  }
  std::vector<bool> used_s(d + 1, false);
  std::vector<bool> used_t(d + 1, false);
  for (int i = 0; i < n; ++i) {
    const int value = value_of[i];
    if (value == 0) return false;
    if (instance.InS(MakeVarId(i))) {
      if (used_s[value]) return false;
      used_s[value] = true;
    }
    if (instance.InT(MakeVarId(i))) {
      if (used_t[value]) return false;
      used_t[value] = true;
    }
  }
  return true;
}

std::optional<SimMatching> SimMatchingExistsBruteForce(
    const OverlapInstance& instance, int size_guard) {
  CheckGuard(instance.num_vars(), size_guard);
  return SimMatchingSearch(instance).Run();
}

int SimHallSlack(std::span<const VarId> vars, const OverlapInstance& instance) {
  const int d = instance.max_value();
  ValueSet all(d), s_side(d), t_side(d);
  for (VarId v : vars) {
    const ValueSet dom = ToValueSet(instance.domain(v), d);
    all |= dom;
    switch (instance.block(v)) {
      case Block::kSOnly:
        s_side |= dom;
        break;
      case Block::kTOnly:
        t_side |= dom;
        break;
      case Block::kShared:
        break;
    }
  }
  return all.Size() + (s_side & t_side).Size() - static_cast<int>(vars.size());
}

std::optional<std::vector<VarId>> SimHallCheck(const OverlapInstance& instance,
                                               int size_guard) {
  const int n = instance.num_vars();
  CheckGuard(n, size_guard);
  const int d = instance.max_value();
  const uint32_t full = n == 0 ? 0 : (1u << n);
  // Neighborhoods per mask, built from the mask with its lowest bit cleared.
  std::vector<ValueSet> all(full, ValueSet(d));
  std::vector<ValueSet> s_side(full, ValueSet(d));
  std::vector<ValueSet> t_side(full, ValueSet(d));
  std::vector<ValueSet> doms;
  for (const Domain& dom : instance.domains()) doms.push_back(ToValueSet(dom, d));
  for (uint32_t mask = 1; mask < full; ++mask) {
    const int low = __builtin_ctz(mask);
    const uint32_t rest = mask & (mask - 1);
    all[mask] = all[rest] | doms[low];
    s_side[mask] = s_side[rest];
    t_side[mask] = t_side[rest];
    switch (instance.block(MakeVarId(low))) {
      case Block::kSOnly:
        s_side[mask] |= doms[low];
        break;
      case Block::kTOnly:
        t_side[mask] |= doms[low];
        break;
      case Block::kShared:
        break;
    }
    const int size = __builtin_popcount(mask);
    if (all[mask].Size() + (s_side[mask] & t_side[mask]).Size() < size) {
      std::vector<VarId> violator;
      for (int i = 0; i < n; ++i) {
        if (mask >> i & 1u) violator.push_back(MakeVarId(i));
      }
      if (SimHallSlack(violator, instance) < 0) return violator;
    }
  }
  return std::nullopt;
}

OverlapInstance InduceByEdge(const OverlapInstance& instance, VarId var,
                             int value) {
  const int n = instance.num_vars();
  const int d = instance.max_value();
  const Block edge_block = instance.block(var);
  std::vector<Domain> domains;
  std::vector<VarId> s_members, t_members;
  for (int i = 0; i < n; ++i) {
    const VarId v = MakeVarId(i);
    if (v == var) continue;
    const bool loses_value =
        edge_block == Block::kShared ||
        (edge_block == Block::kSOnly && instance.InS(v)) ||
        (edge_block == Block::kTOnly && instance.InT(v));
    ValueSet dom = ToValueSet(instance.domain(v), d);
    if (loses_value) dom.Erase(value);
    const VarId renumbered = MakeVarId(static_cast<int>(domains.size()));
    if (instance.InS(v)) s_members.push_back(renumbered);
    if (instance.InT(v)) t_members.push_back(renumbered);
    domains.emplace_back(std::move(dom));
  }
  return OverlapInstance(d, std::move(domains), std::move(s_members),
                         std::move(t_members));
}

bool EdgeSupportedBruteForce(const OverlapInstance& instance, VarId var,
                             int value, int size_guard) {
  if (!DomainContains(instance.domain(var), value)) {
    throw ValueNotInDomain("value " + std::to_string(value) +
                           " not in domain of variable " +
                           std::to_string(Index(var)));
  }
  CheckGuard(instance.num_vars(), size_guard);
  return SimMatchingExistsBruteForce(InduceByEdge(instance, var, value),
                                     size_guard)
      .has_value();
}

PropagationOutcome BcOracle(const OverlapInstance& instance, int size_guard) {
  const int n = instance.num_vars();
  CheckGuard(n, size_guard);
  std::vector<Domain> bounds;
  for (const Domain& dom : instance.domains()) bounds.emplace_back(Hull(dom));

  auto supported = [&](int var, int value) {
    std::vector<Domain> probe = bounds;
    probe[var] = Interval{value, value};
    return SimMatchingExistsBruteForce(instance.WithDomains(std::move(probe)),
                                       size_guard)
        .has_value();
  };

  std::vector<PruneEvent> log;
  for (const Domain& dom : bounds) {
    if (IsEmpty(dom)) return FailureOutcome(std::move(log));
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i) {
      auto& iv = std::get<Interval>(bounds[i]);
      const int old_lb = iv.lb;
      while (iv.lb <= iv.ub && !supported(i, iv.lb)) ++iv.lb;
      if (iv.Empty()) return FailureOutcome(std::move(log));
      if (iv.lb != old_lb) {
        log.push_back({MakeVarId(i), PruneKind::kRaiseLowerBound, iv.lb});
        changed = true;
      }
      const int old_ub = iv.ub;
      while (iv.ub > iv.lb && !supported(i, iv.ub)) --iv.ub;
      if (iv.ub != old_ub) {
        log.push_back({MakeVarId(i), PruneKind::kLowerUpperBound, iv.ub});
        changed = true;
      }
    }
  }
  PropagationOutcome out;
  out.domains = std::move(bounds);
  out.prune_log = std::move(log);
  return out;
}

}  // namespace oad
