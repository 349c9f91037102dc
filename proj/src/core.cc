#include "oad/core.h"

#include <algorithm>
#include <sstream>

namespace oad {

ValueSet ValueSet::Range(int max_value, int lb, int ub) {
  ValueSet set(max_value);
  for (int v = std::max(lb, 1); v <= std::min(ub, max_value); ++v) set.Insert(v);
  return set;
}

ValueSet ValueSet::Of(int max_value, std::initializer_list<int> values) {
  ValueSet set(max_value);
  for (int v : values) set.Insert(v);
  return set;
}

int ValueSet::Max() const {
  for (int v = max_value(); v >= 1; --v) {
    if (bits_.test(v - 1)) return v;
  }
  return 0;
}

int ValueSet::Next(int v) const {
  if (v < 1) return Empty() ? 0 : Min();
  const auto pos = bits_.find_next(static_cast<size_t>(v - 1));
  return pos == boost::dynamic_bitset<uint64_t>::npos ? 0
                                                      : static_cast<int>(pos) + 1;
}

bool ValueSet::IsContiguous() const {
  if (Empty()) return true;
  return Max() - Min() + 1 == Size();
}

std::vector<int> ValueSet::Values() const {
  std::vector<int> out;
  out.reserve(Size());
  for (auto pos = bits_.find_first(); pos != boost::dynamic_bitset<uint64_t>::npos;
       pos = bits_.find_next(pos)) {
    out.push_back(static_cast<int>(pos) + 1);
  }
  return out;
}

void ValueSet::Widen(int max_value) {
  if (max_value > this->max_value()) bits_.resize(max_value);
}

ValueSet& ValueSet::operator|=(const ValueSet& other) {
  if (other.max_value() == max_value()) {
    bits_ |= other.bits_;
    return *this;
  }
  Widen(other.max_value());
  for (int v : other.Values()) Insert(v);
  return *this;
}

ValueSet& ValueSet::operator&=(const ValueSet& other) {
  if (other.max_value() == max_value()) {
    bits_ &= other.bits_;
    return *this;
  }
  for (int v : Values()) {
    if (!other.Contains(v)) Erase(v);
  }
  return *this;
}

ValueSet& ValueSet::operator-=(const ValueSet& other) {
  if (other.max_value() == max_value()) {
    bits_ -= other.bits_;
    return *this;
  }
  for (int v : other.Values()) Erase(v);
  return *this;
}

ValueSet ToValueSet(const Domain& domain, int max_value) {
  if (const auto* iv = std::get_if<Interval>(&domain)) {
    return ValueSet::Range(max_value, iv->lb, iv->ub);
  }
  ValueSet set = std::get<ValueSet>(domain);
  if (set.max_value() != max_value) {
    ValueSet resized(max_value);
    for (int v : set.Values()) {
      if (v <= max_value) resized.Insert(v);
    }
    return resized;
  }
  return set;
}

Interval Hull(const Domain& domain) {
  if (const auto* iv = std::get_if<Interval>(&domain)) return *iv;
  const auto& set = std::get<ValueSet>(domain);
  if (set.Empty()) return Interval{1, 0};
  return Interval{set.Min(), set.Max()};
}

bool IsEmpty(const Domain& domain) {
  if (const auto* iv = std::get_if<Interval>(&domain)) return iv->Empty();
  return std::get<ValueSet>(domain).Empty();
}

bool DomainContains(const Domain& domain, int v) {
  if (const auto* iv = std::get_if<Interval>(&domain)) return iv->Contains(v);
  return std::get<ValueSet>(domain).Contains(v);
}

int DomainSize(const Domain& domain) {
  if (const auto* iv = std::get_if<Interval>(&domain)) return iv->Size();
  return std::get<ValueSet>(domain).Size();
}

std::optional<Interval> AsInterval(const ValueSet& set) {
  if (set.Empty() || !set.IsContiguous()) return std::nullopt;
  return Interval{set.Min(), set.Max()};
}

std::string DomainToString(const Domain& domain) {
  std::ostringstream os;
  if (const auto* iv = std::get_if<Interval>(&domain)) {
    os << '[' << iv->lb << ".." << iv->ub << ']';
    return os.str();
  }
  os << '{';
  bool first = true;
  for (int v : std::get<ValueSet>(domain).Values()) {
    if (!first) os << ',';
    os << v;
    first = false;
  }
  os << '}';
  return os.str();
}

OverlapInstance::OverlapInstance(int max_value, std::vector<Domain> domains,
                                 std::vector<VarId> s_members,
                                 std::vector<VarId> t_members)
    : max_value_(max_value),
      domains_(std::move(domains)),
      s_members_(std::move(s_members)),
      t_members_(std::move(t_members)),
      in_s_(domains_.size(), false),
      in_t_(domains_.size(), false) {
  if (max_value_ < 0) throw InstanceError("negative value range");
  const int n = num_vars();
  auto mark = [n](const std::vector<VarId>& members, std::vector<bool>& in,
                  const char* name) {
    for (VarId v : members) {
      if (Index(v) < 0 || Index(v) >= n) {
        throw InstanceError(std::string("variable out of range in ") + name);
      }
      if (in[Index(v)]) {
        throw InstanceError(std::string("duplicate variable ") +
                            std::to_string(Index(v)) + " in " + name);
      }
      in[Index(v)] = true;
    }
  };
  mark(s_members_, in_s_, "S");
  mark(t_members_, in_t_, "T");
  for (int i = 0; i < n; ++i) {
    if (!in_s_[i] && !in_t_[i]) {
      throw InstanceError("variable " + std::to_string(i) +
                          " belongs to neither S nor T");
    }
    const Domain& dom = domains_[i];
    if (IsEmpty(dom)) continue;
    const Interval hull = Hull(dom);
    if (hull.lb < 1 || hull.ub > max_value_) {
      throw InstanceError("domain of variable " + std::to_string(i) +
                          " outside [1, d]");
    }
  }
}

Block OverlapInstance::block(VarId v) const {
  if (InS(v) && InT(v)) return Block::kShared;
  return InS(v) ? Block::kSOnly : Block::kTOnly;
}

bool OverlapInstance::AllIntervals() const {
  return std::all_of(domains_.begin(), domains_.end(), [](const Domain& d) {
    return std::holds_alternative<Interval>(d);
  });
}

OverlapInstance OverlapInstance::WithDomains(std::vector<Domain> domains) const {
  return OverlapInstance(max_value_, std::move(domains), s_members_, t_members_);
}

VarPartition Partition(const OverlapInstance& instance) {
  VarPartition out;
  for (int i = 0; i < instance.num_vars(); ++i) {
    const VarId v = MakeVarId(i);
    switch (instance.block(v)) {
      case Block::kSOnly:
        out.s_only.push_back(v);
        break;
      case Block::kShared:
        out.shared.push_back(v);
        break;
      case Block::kTOnly:
        out.t_only.push_back(v);
        break;
    }
  }
  return out;
}

ValueSet Neighborhood(std::span<const VarId> vars,
                      const OverlapInstance& instance) {
  ValueSet out(instance.max_value());
  for (VarId v : vars) out |= ToValueSet(instance.domain(v), instance.max_value());
  return out;
}

PropagationOutcome FailureOutcome(std::vector<PruneEvent> log) {
  PropagationOutcome out;
  out.status = PropagationStatus::kFailure;
  out.prune_log = std::move(log);
  return out;
}

std::vector<Domain> ReplayPrunes(std::vector<Domain> domains,
                                 std::span<const PruneEvent> log) {
  for (const PruneEvent& e : log) {
    Domain& dom = domains[Index(e.var)];
    if (auto* iv = std::get_if<Interval>(&dom)) {
      switch (e.kind) {
        case PruneKind::kRaiseLowerBound:
          iv->lb = std::max(iv->lb, e.value);
          break;
        case PruneKind::kLowerUpperBound:
          iv->ub = std::min(iv->ub, e.value);
          break;
        case PruneKind::kRemoveValue:
          if (e.value == iv->lb) ++iv->lb;
          else if (e.value == iv->ub) --iv->ub;
          break;
        case PruneKind::kInteriorValue:
          break;
      }
      continue;
    }
    auto& set = std::get<ValueSet>(dom);
    switch (e.kind) {
      case PruneKind::kRaiseLowerBound:
        for (int v = 1; v < e.value; ++v) set.Erase(v);
        break;
      case PruneKind::kLowerUpperBound:
        for (int v = e.value + 1; v <= set.max_value(); ++v) set.Erase(v);
        break;
      case PruneKind::kRemoveValue:
      case PruneKind::kInteriorValue:
        set.Erase(e.value);
        break;
    }
  }
  return domains;
}

void AppendDomainDiff(VarId var, const Domain& before, const Domain& after,
                      std::vector<PruneEvent>& log) {
  const auto* b = std::get_if<Interval>(&before);
  const auto* a = std::get_if<Interval>(&after);
  if (b != nullptr && a != nullptr) {
    if (a->lb > b->lb) log.push_back({var, PruneKind::kRaiseLowerBound, a->lb});
    if (a->ub < b->ub) log.push_back({var, PruneKind::kLowerUpperBound, a->ub});
    return;
  }
  const int max_value = std::max(Hull(before).ub, Hull(after).ub);
  const ValueSet removed =
      ToValueSet(before, max_value) - ToValueSet(after, max_value);
  for (int v : removed.Values()) log.push_back({var, PruneKind::kRemoveValue, v});
}

}  // namespace oad
