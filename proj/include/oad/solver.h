#ifndef OAD_SOLVER_H_
#define OAD_SOLVER_H_

// Depth-first search over problems made of AllDifferent, overlapping
// AllDifferent and strict order constraints.

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "oad/core.h"

namespace oad {

struct AllDifferent {
  std::vector<VarId> scope;
  friend bool operator==(const AllDifferent&, const AllDifferent&) = default;
};

// AllDifferent(s) and AllDifferent(t) with shared variables.
struct OverlappingAllDifferent {
  std::vector<VarId> s;
  std::vector<VarId> t;
  friend bool operator==(const OverlappingAllDifferent&,
                         const OverlappingAllDifferent&) = default;
};

// lhs < rhs
struct LessThan {
  VarId lhs;
  VarId rhs;
  friend bool operator==(const LessThan&, const LessThan&) = default;
};

using Constraint = std::variant<AllDifferent, OverlappingAllDifferent, LessThan>;

struct Problem {
  int max_value = 0;
  std::vector<std::string> names;
  std::vector<Domain> domains;
  std::vector<Constraint> constraints;

  int num_vars() const { return static_cast<int>(domains.size()); }
  VarId AddVar(std::string name, Domain domain);
  // Throws InstanceError on out-of-range values or scope variables,
  // duplicates inside a scope, or a name count that does not match.
  void Validate() const;

  friend bool operator==(const Problem&, const Problem&) = default;
};

// Direct evaluation of every constraint and domain.
bool CheckSolution(const Problem& problem, std::span<const int> values);

enum class PropagationMode {
  kObc,       // overlapping pairs through the BC network, others Hall intervals
  kDecompBc,  // every AllDifferent on its own, Hall intervals
  kDecompDc,  // every AllDifferent on its own, matching-based DC
};

// The single overlapping pair of a problem made of exactly one
// OverlappingAllDifferent or exactly two AllDifferent constraints that share
// a variable, and nothing else. Variables outside both scopes are rejected.
std::optional<OverlapInstance> AsOverlapInstance(const Problem& problem);

// Root fixpoint of all constraints under `mode`. Domains come back as
// ValueSets.
PropagationOutcome PropagateProblem(const Problem& problem, PropagationMode mode);

// kTimeout covers both the time and the node budget.
enum class SearchStatus { kSolved, kUnsat, kTimeout };

struct SearchStats {
  int64_t nodes = 0;
  int64_t backtracks = 0;
  double wall_time = 0;
  SearchStatus status = SearchStatus::kUnsat;
};

struct SolveConfig {
  PropagationMode mode = PropagationMode::kObc;
  uint64_t var_order_seed = 0;
  double timeout_s = std::numeric_limits<double>::infinity();
  // Search stops once this many nodes have been opened.
  int64_t node_limit = std::numeric_limits<int64_t>::max();
};

struct SolveResult {
  std::optional<std::vector<int>> solution;
  SearchStats stats;
};

// Two-way branching X = min / X != min on a seeded random static variable
// order, full propagation at every node. A backtrack is a failed node after
// which another alternative is explored. Budgets are checked between nodes.
// Throws std::logic_error if a leaf fails the independent checker.
SolveResult Solve(const Problem& problem, const SolveConfig& config);

const char* ModeName(PropagationMode mode);
const char* StatusName(SearchStatus status);

}  // namespace oad

#endif  // OAD_SOLVER_H_
