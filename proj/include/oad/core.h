#ifndef OAD_CORE_H_
#define OAD_CORE_H_

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace oad {

// Variables are identified by their 0-based position in an instance.
enum class VarId : int32_t {};

constexpr int Index(VarId v) { return static_cast<int>(v); }
constexpr VarId MakeVarId(int index) { return static_cast<VarId>(index); }

// Explicit set of values drawn from [1, d].
class ValueSet {
 public:
  ValueSet() = default;
  explicit ValueSet(int max_value) : bits_(max_value) {}

  static ValueSet Range(int max_value, int lb, int ub);
  static ValueSet Of(int max_value, std::initializer_list<int> values);

  int max_value() const { return static_cast<int>(bits_.size()); }

  bool Contains(int v) const {
    return v >= 1 && v <= max_value() && bits_.test(v - 1);
  }
  void Insert(int v) { bits_.set(v - 1); }
  void Erase(int v) {
    if (v >= 1 && v <= max_value()) bits_.reset(v - 1);
  }
  void Clear() { bits_.reset(); }

  int Size() const { return static_cast<int>(bits_.count()); }
  bool Empty() const { return bits_.none(); }

  // Both require a non-empty set.
  int Min() const { return static_cast<int>(bits_.find_first()) + 1; }
  int Max() const;

  // Smallest member strictly greater than v, or 0 if none.
  int Next(int v) const;

  bool IsContiguous() const;
  std::vector<int> Values() const;

  ValueSet& operator|=(const ValueSet& other);
  ValueSet& operator&=(const ValueSet& other);
  ValueSet& operator-=(const ValueSet& other);

  friend ValueSet operator|(ValueSet a, const ValueSet& b) { return a |= b; }
  friend ValueSet operator&(ValueSet a, const ValueSet& b) { return a &= b; }
  friend ValueSet operator-(ValueSet a, const ValueSet& b) { return a -= b; }
  friend bool operator==(const ValueSet& a, const ValueSet& b) {
    return a.bits_ == b.bits_;
  }

 private:
  void Widen(int max_value);

  boost::dynamic_bitset<uint64_t> bits_;  // bit v-1 set iff v is a member
};

// Contiguous range [lb, ub]; empty when lb > ub.
struct Interval {
  int lb = 1;
  int ub = 0;

  bool Empty() const { return lb > ub; }
  int Size() const { return Empty() ? 0 : ub - lb + 1; }
  bool Contains(int v) const { return lb <= v && v <= ub; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

using Domain = std::variant<Interval, ValueSet>;

ValueSet ToValueSet(const Domain& domain, int max_value);
// Smallest interval containing the domain; an empty interval for an empty
// domain.
Interval Hull(const Domain& domain);
bool IsEmpty(const Domain& domain);
bool DomainContains(const Domain& domain, int v);
int DomainSize(const Domain& domain);
std::optional<Interval> AsInterval(const ValueSet& set);
std::string DomainToString(const Domain& domain);

class InstanceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Block { kSOnly, kShared, kTOnly };

// Two AllDifferent scopes S and T over variables 0..n-1 with values in
// [1, d]. Every variable belongs to S, to T, or to both. Domains may be
// empty (a failed instance), which the oracles treat as unsatisfiable.
class OverlapInstance {
 public:
  OverlapInstance(int max_value, std::vector<Domain> domains,
                  std::vector<VarId> s_members, std::vector<VarId> t_members);

  int num_vars() const { return static_cast<int>(domains_.size()); }
  int max_value() const { return max_value_; }

  const Domain& domain(VarId v) const { return domains_[Index(v)]; }
  const std::vector<Domain>& domains() const { return domains_; }

  std::span<const VarId> s_members() const { return s_members_; }
  std::span<const VarId> t_members() const { return t_members_; }

  bool InS(VarId v) const { return in_s_[Index(v)]; }
  bool InT(VarId v) const { return in_t_[Index(v)]; }
  Block block(VarId v) const;

  // True when every domain is an Interval.
  bool AllIntervals() const;

  // Same S/T structure, replaced domains.
  OverlapInstance WithDomains(std::vector<Domain> domains) const;

 private:
  int max_value_;
  std::vector<Domain> domains_;
  std::vector<VarId> s_members_;
  std::vector<VarId> t_members_;
  std::vector<bool> in_s_;
  std::vector<bool> in_t_;
};

struct VarPartition {
  std::vector<VarId> s_only;  // S \ T
  std::vector<VarId> shared;  // S ∩ T
  std::vector<VarId> t_only;  // T \ S
};

VarPartition Partition(const OverlapInstance& instance);

// Union of the domains of the variables in `vars`.
ValueSet Neighborhood(std::span<const VarId> vars,
                      const OverlapInstance& instance);

enum class PropagationStatus { kFixpoint, kFailure };

enum class PruneKind {
  kRemoveValue,      // `value` removed from the domain
  kRaiseLowerBound,  // lower bound moved up to `value`
  kLowerUpperBound,  // upper bound moved down to `value`
  kInteriorValue,    // `value` unsupported but strictly inside an interval
};

struct PruneEvent {
  VarId var;
  PruneKind kind;
  int value;
  friend bool operator==(const PruneEvent&, const PruneEvent&) = default;
};

struct PropagationOutcome {
  PropagationStatus status = PropagationStatus::kFixpoint;
  std::optional<std::vector<Domain>> domains;  // present iff kFixpoint
  std::vector<PruneEvent> prune_log;

  bool failed() const { return status == PropagationStatus::kFailure; }
};

PropagationOutcome FailureOutcome(std::vector<PruneEvent> log = {});

// Applies `log` in order. Interior notes leave Interval domains untouched;
// on a ValueSet they remove the value like kRemoveValue.
std::vector<Domain> ReplayPrunes(std::vector<Domain> domains,
                                 std::span<const PruneEvent> log);

// Records the bound moves and removals that turn `before` into `after`.
void AppendDomainDiff(VarId var, const Domain& before, const Domain& after,
                      std::vector<PruneEvent>& log);

}  // namespace oad

#endif  // OAD_CORE_H_
