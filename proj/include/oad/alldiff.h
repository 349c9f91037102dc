#ifndef OAD_ALLDIFF_H_
#define OAD_ALLDIFF_H_

// Single AllDifferent propagators used as search baselines. Both take the
// domains of a whole problem, indexed by VarId, and only touch the scope.

#include <span>
#include <vector>

#include "oad/core.h"

namespace oad {

// Hall-interval filtering to fixpoint, on interval hulls. Interval domains
// stay Intervals; ValueSet domains are trimmed to the new bounds.
// Throws std::invalid_argument on a duplicated scope variable.
PropagationOutcome BcAllDiff(std::span<const VarId> scope,
                             std::span<const Domain> domains);

// Matching-based domain consistency. Scope domains come back as ValueSets.
PropagationOutcome DcAllDiff(std::span<const VarId> scope,
                             std::span<const Domain> domains);

}  // namespace oad

#endif  // OAD_ALLDIFF_H_
