#ifndef OAD_DECOMP_H_
#define OAD_DECOMP_H_

// Bound consistency for two overlapping AllDifferent constraints, through a
// network of Boolean interval indicators and bounded occupancy counters.
//
// For every variable X_i and value l the indicator b_il means X_i <= l, and
// a_ilu means l <= X_i <= u (kept only for u - l < n). For every value
// interval [l, u] three counters C^S, C^T and C^ST count how many variables
// of S\T, T\S and S∩T take a value inside it. The constraint families are
//
//   channel    b and a against the variable bounds
//   sum        C^B_lu = sum of a_ilu over block B (u - l < n)
//   prefix     C^B_1u = C^B_1l + C^B_(l+1)u   (ST in the base layer,
//                                             S and T in the extended one)
//   capacity   C^ST_lu + C^S_lu <= u-l+1,  C^ST_lu + C^T_lu <= u-l+1
//   split      C^ST_lu = C^ST_lk + C^ST_(k+1)u for 2 <= l <= k < u (extended)
//
// The base layer detects bound disentailment; the extended layer plus the
// almost-Hall pass (Rule3aPass) reaches bound consistency.

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "oad/core.h"
#include "oad/oracle.h"

namespace oad {

inline constexpr int kMaxNetworkVars = 1 << 15;

enum class Tri : int8_t { kUnknown = 0, kFalse = 1, kTrue = 2 };

enum class CounterBlock : int { kS = 0, kT = 1, kST = 2 };

struct CounterBounds {
  int lb;
  int ub;
  friend bool operator==(const CounterBounds&, const CounterBounds&) = default;
};

class Network {
 public:
  // Uses the interval hull of every domain. Throws InstanceError on more
  // than kMaxNetworkVars variables.
  explicit Network(const OverlapInstance& instance);

  int num_vars() const { return n_; }
  int max_value() const { return d_; }
  Block block(VarId v) const { return blocks_[Index(v)]; }

  Interval var_bounds(VarId v) const {
    return Interval{lb_[Index(v)], ub_[Index(v)]};
  }
  // 1 <= l <= u <= d, or the empty interval u == l - 1 (always 0).
  CounterBounds counter(CounterBlock block, int l, int u) const;
  // Requires 1 <= l <= u <= d and u - l < n.
  Tri a(VarId v, int l, int u) const;
  // 0 <= l <= d; derived from the variable bounds.
  Tri b(VarId v, int l) const;
  bool HasA(int l, int u) const { return l >= 1 && l <= u && u <= d_ && u - l < n_; }

  bool failed() const { return failed_; }

  // Fixpoint of channel, sum, ST prefix and capacity constraints.
  PropagationStatus PropagateBase() { return Propagate(false); }
  // Fixpoint of every family, including S/T prefixes and ST splits.
  PropagationStatus PropagateExtended() { return Propagate(true); }

  // Narrow a variable from outside; propagation happens on the next call.
  void RestrictVar(VarId v, Interval bounds);

  // Unit bound steps plus decided indicators so far.
  int64_t work() const { return work_; }
  // Sum over all variables and counters of (ub - lb + 1) plus the number of
  // undecided indicators; strictly decreases with every tightening.
  int64_t LatticeHeight() const;

  std::vector<Domain> VarDomains() const;

 private:
  struct Structure;

  PropagationStatus Propagate(bool extended);
  void Enqueue(int c);
  void Run(int c);
  void RunChannel(int var);
  void RunSum(int block, int l, int u);
  void RunLinear(int z, int x, int y);
  void RunCapacity(int block, int l, int u);

  int CounterIndex(int block, int l, int u) const {
    return (block * (d_ + 2) + l) * (d_ + 1) + u;
  }
  int AIndex(int var, int l, int u) const {
    return ((var * d_) + (l - 1)) * n_ + (u - l);
  }
  void SetCounterLb(int c, int v);
  void SetCounterUb(int c, int v);
  void SetVarLb(int var, int v);
  void SetVarUb(int var, int v);
  void SetA(int var, int l, int u, Tri state);

  std::shared_ptr<const Structure> structure_;
  int n_;
  int d_;
  std::vector<Block> blocks_;
  std::vector<int> lb_;
  std::vector<int> ub_;
  std::vector<Tri> a_;
  std::vector<int> counter_lb_;
  std::vector<int> counter_ub_;
  std::vector<int> queue_;
  size_t queue_head_ = 0;
  std::vector<char> in_queue_;
  int running_ = -1;
  bool extended_on_ = false;
  bool failed_ = false;
  int64_t work_ = 0;
};

// Build the network and run the base layer.
PropagationOutcome PropagateBase(const OverlapInstance& instance);

// Values proved unsupported for shared variables by restricting each shared
// variable into every interval whose C^ST counter has slack at most one and
// reading the saturated intersection intervals of the propagated copy.
// Requires an extended fixpoint. Sorted, without duplicates.
std::vector<std::pair<VarId, int>> Rule3aPass(const Network& network);

struct FullPropagationStats {
  int rounds = 0;           // outer fixpoint + almost-Hall rounds
  int64_t probes = 0;       // propagated copies inside Rule3aPass
  int64_t work = 0;         // unit bound steps in the main network
};

// Extended fixpoint and almost-Hall pass, alternated until stable. Output
// domains are Intervals; interior values found unsupported are noted as
// kInteriorValue without shrinking the interval.
PropagationOutcome PropagateFull(const OverlapInstance& instance,
                                 FullPropagationStats* stats = nullptr);

// Simultaneous matching on interval domains: fix each variable to its lower
// bound in turn and re-propagate. Returns nullopt iff the instance has none.
std::optional<SimMatching> FindSimMatchingConvex(const OverlapInstance& instance);

}  // namespace oad

#endif  // OAD_DECOMP_H_
