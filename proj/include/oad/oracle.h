#ifndef OAD_ORACLE_H_
#define OAD_ORACLE_H_

// Exponential reference procedures. Everything fast in this library is
// tested against these.

#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "oad/core.h"

namespace oad {

inline constexpr int kDefaultMatchingGuard = 16;
inline constexpr int kDefaultSubsetGuard = 12;

class SizeGuardExceeded : public std::runtime_error {
 public:
  SizeGuardExceeded(int n, int guard);
};

class ValueNotInDomain : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// One (variable, value) edge per variable. A shared variable's single edge
// serves both S and T.
struct SimMatching {
  std::vector<std::pair<VarId, int>> edges;

  // Value assigned to `v`, or 0 when `v` has no edge.
  int ValueOf(VarId v) const;
};

// Each variable has exactly one edge inside its domain and values are
// pairwise distinct within S and within T.
bool IsValidSimMatching(const OverlapInstance& instance, const SimMatching& m);

// Depth-first search over the shared variables (ascending id, values
// ascending) with failed value sets remembered; the one-sided variables are
// then matched by augmenting paths. Returns the first witness found.
std::optional<SimMatching> SimMatchingExistsBruteForce(
    const OverlapInstance& instance, int size_guard = kDefaultMatchingGuard);

// |N(P)| + |N(P^S) ∩ N(P^T)| - |P|.
int SimHallSlack(std::span<const VarId> vars, const OverlapInstance& instance);

// Enumerates every non-empty subset and returns one with negative slack.
std::optional<std::vector<VarId>> SimHallCheck(
    const OverlapInstance& instance, int size_guard = kDefaultSubsetGuard);

// The graph left after committing edge (var, value): `var` disappears; a
// shared variable takes `value` away from everybody, a one-sided variable
// only from its own side. The returned instance renumbers the remaining
// variables in order.
OverlapInstance InduceByEdge(const OverlapInstance& instance, VarId var,
                             int value);

bool EdgeSupportedBruteForce(const OverlapInstance& instance, VarId var,
                             int value, int size_guard = kDefaultMatchingGuard);

// Bound consistency by exhaustive bound-support tests on the interval hull
// of every domain, iterated to fixpoint.
PropagationOutcome BcOracle(const OverlapInstance& instance,
                            int size_guard = kDefaultMatchingGuard);

}  // namespace oad

#endif  // OAD_ORACLE_H_
