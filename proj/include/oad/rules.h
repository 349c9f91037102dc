#ifndef OAD_RULES_H_
#define OAD_RULES_H_

// Reference propagator driven by the simultaneous-Hall set taxonomy. It
// enumerates every variable subset, so it is only meant for small instances
// and as a test oracle.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "oad/core.h"
#include "oad/oracle.h"

namespace oad {

enum class SetKind { kViolating, kSimHall, kAlmostSimHall, kLoose };

struct SetClass {
  SetKind kind;
  int slack;  // |N(P)| + |N(P^S) ∩ N(P^T)| - |P|
};

// Requires a non-empty P.
SetClass ClassifySet(std::span<const VarId> vars, const OverlapInstance& instance);

struct RulesOptions {
  int size_guard = kDefaultSubsetGuard;
  // When set, subsets are visited in a seeded random order instead of by
  // increasing cardinality.
  std::optional<uint64_t> shuffle_seed;
};

// Removals justified by one sweep over all subsets of a fixed graph.
struct RuleSweep {
  std::optional<std::vector<VarId>> violator;
  std::vector<std::pair<VarId, int>> removals;  // sorted, no duplicates
};

RuleSweep SweepRules(const OverlapInstance& instance,
                     const RulesOptions& options = {});

// Repeats SweepRules on the shrinking graph until nothing changes. Output
// domains are ValueSets.
PropagationOutcome DcByRules(const OverlapInstance& instance,
                             const RulesOptions& options = {});

// Same sweeps on interval domains, keeping only removals that touch a bound.
// The rules-level reference for bound propagation; output domains are
// Intervals (hulls of the input).
PropagationOutcome BoundsByRules(const OverlapInstance& instance,
                                 const RulesOptions& options = {});

}  // namespace oad

#endif  // OAD_RULES_H_
