#include "oad/solver.h"

#include <algorithm>
#include <chrono>
#include <random>
#include <stdexcept>
#include <string>

#include "oad/alldiff.h"
#include "oad/decomp.h"
#include "oad/random.h"

namespace oad {

VarId Problem::AddVar(std::string name, Domain domain) {
  names.push_back(std::move(name));
  domains.push_back(std::move(domain));
  return MakeVarId(num_vars() - 1);
}

namespace {

void CheckScope(std::span<const VarId> scope, int n, const char* what) {
  std::vector<int> ids;
  for (VarId v : scope) {
    if (Index(v) < 0 || Index(v) >= n) {
      throw InstanceError(std::string(what) + " refers to an unknown variable");
    }
    ids.push_back(Index(v));
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw InstanceError(std::string(what) + " lists a variable twice");
  }
}

}  // namespace

void Problem::Validate() const {
  if (max_value < 1) throw InstanceError("value range must be at least 1");
  if (names.size() != domains.size()) {
    throw InstanceError("every variable needs exactly one name");
  }
  for (const Domain& dom : domains) {
    const Interval hull = Hull(dom);
    if (!hull.Empty() && (hull.lb < 1 || hull.ub > max_value)) {
      throw InstanceError("domain " + DomainToString(dom) + " leaves [1, " +
                          std::to_string(max_value) + "]");
    }
  }
  const int n = num_vars();
  for (const Constraint& c : constraints) {
    if (const auto* ad = std::get_if<AllDifferent>(&c)) {
      CheckScope(ad->scope, n, "alldifferent");
    } else if (const auto* ov = std::get_if<OverlappingAllDifferent>(&c)) {
      CheckScope(ov->s, n, "overlapping_alldifferent");
      CheckScope(ov->t, n, "overlapping_alldifferent");
    } else {
      const auto& lt = std::get<LessThan>(c);
      const VarId pair[] = {lt.lhs, lt.rhs};
      CheckScope(pair, n, "less_than");
    }
  }
}

bool CheckSolution(const Problem& problem, std::span<const int> values) {
  if (static_cast<int>(values.size()) != problem.num_vars()) return false;
  for (int i = 0; i < problem.num_vars(); ++i) {
    if (!DomainContains(problem.domains[i], values[i])) return false;
  }
  auto distinct = [&](std::span<const VarId> scope) {
    for (size_t a = 0; a < scope.size(); ++a) {
      for (size_t b = a + 1; b < scope.size(); ++b) {
        if (values[Index(scope[a])] == values[Index(scope[b])]) return false;
      }
    }
    return true;
  };
  for (const Constraint& c : problem.constraints) {
    if (const auto* ad = std::get_if<AllDifferent>(&c)) {
      if (!distinct(ad->scope)) return false;
    } else if (const auto* ov = std::get_if<OverlappingAllDifferent>(&c)) {
      if (!distinct(ov->s) || !distinct(ov->t)) return false;
    } else {
      const auto& lt = std::get<LessThan>(c);
      if (values[Index(lt.lhs)] >= values[Index(lt.rhs)]) return false;
    }
  }
  return true;
}

std::optional<OverlapInstance> AsOverlapInstance(const Problem& problem) {
  std::vector<VarId> s, t;
  if (problem.constraints.size() == 1) {
    const auto* ov = std::get_if<OverlappingAllDifferent>(&problem.constraints[0]);
    if (ov == nullptr) return std::nullopt;
    s = ov->s;
    t = ov->t;
  } else if (problem.constraints.size() == 2) {
    const auto* a = std::get_if<AllDifferent>(&problem.constraints[0]);
    const auto* b = std::get_if<AllDifferent>(&problem.constraints[1]);
    if (a == nullptr || b == nullptr) return std::nullopt;
    s = a->scope;
    t = b->scope;
  } else {
    return std::nullopt;
  }
  try {
    return OverlapInstance(problem.max_value, problem.domains, s, t);
  } catch (const InstanceError&) {
    return std::nullopt;
  }
}

namespace {

struct Propagator {
  enum Kind { kPair, kBc, kDc, kLess };
  Kind kind;
  std::vector<VarId> s;  // scope, or the S side of a pair
  std::vector<VarId> t;  // T side of a pair
  std::vector<VarId> vars;
};

std::vector<VarId> Union(const std::vector<VarId>& a, const std::vector<VarId>& b) {
  std::vector<VarId> out = a;
  for (VarId v : b) {
    if (std::find(a.begin(), a.end(), v) == a.end()) out.push_back(v);
  }
  return out;
}

bool Intersects(const std::vector<VarId>& a, const std::vector<VarId>& b) {
  return std::any_of(a.begin(), a.end(), [&](VarId v) {
    return std::find(b.begin(), b.end(), v) != b.end();
  });
}

class Engine {
 public:
  Engine(const Problem& problem, PropagationMode mode) : d_(problem.max_value) {
    const Propagator::Kind single =
        mode == PropagationMode::kDecompDc ? Propagator::kDc : Propagator::kBc;
    std::vector<const AllDifferent*> alldiffs;
    for (const Constraint& c : problem.constraints) {
      if (const auto* ad = std::get_if<AllDifferent>(&c)) {
        alldiffs.push_back(ad);
      } else if (const auto* ov = std::get_if<OverlappingAllDifferent>(&c)) {
        if (mode == PropagationMode::kObc) {
          Add({Propagator::kPair, ov->s, ov->t, {}});
        } else {
          Add({single, ov->s, {}, {}});
          Add({single, ov->t, {}, {}});
        }
      } else {
        const auto& lt = std::get<LessThan>(c);
        Add({Propagator::kLess, {lt.lhs, lt.rhs}, {}, {}});
      }
    }
    std::vector<bool> paired(alldiffs.size(), false);
    if (mode == PropagationMode::kObc) {
      for (size_t i = 0; i < alldiffs.size(); ++i) {
        for (size_t j = i + 1; j < alldiffs.size(); ++j) {
          if (!Intersects(alldiffs[i]->scope, alldiffs[j]->scope)) continue;
          Add({Propagator::kPair, alldiffs[i]->scope, alldiffs[j]->scope, {}});
          paired[i] = paired[j] = true;
        }
      }
    }
    for (size_t i = 0; i < alldiffs.size(); ++i) {
      if (!paired[i]) Add({single, alldiffs[i]->scope, {}, {}});
    }
    watchers_.resize(problem.num_vars());
    for (int p = 0; p < static_cast<int>(props_.size()); ++p) {
      for (VarId v : props_[p].vars) watchers_[Index(v)].push_back(p);
    }
    in_queue_.assign(props_.size(), 0);
  }

  // Returns false on failure.
  bool FixpointAll(std::vector<Domain>& doms) {
    for (int p = 0; p < static_cast<int>(props_.size()); ++p) Push(p);
    return Drain(doms);
  }

  bool FixpointFrom(VarId changed, std::vector<Domain>& doms) {
    for (int p : watchers_[Index(changed)]) Push(p);
    return Drain(doms);
  }

 private:
  void Add(Propagator p) {
    p.vars = p.kind == Propagator::kPair ? Union(p.s, p.t) : p.s;
    props_.push_back(std::move(p));
  }

  void Push(int p) {
    if (in_queue_[p]) return;
    in_queue_[p] = 1;
    queue_.push_back(p);
  }

  bool Drain(std::vector<Domain>& doms) {
    bool ok = true;
    size_t head = 0;
    while (ok && head < queue_.size()) {
      const int p = queue_[head++];
      in_queue_[p] = 0;
      ok = Run(p, doms);
    }
    for (size_t k = head; k < queue_.size(); ++k) in_queue_[queue_[k]] = 0;
    queue_.clear();
    return ok;
  }

  // Writes `next` into `doms` for the variables of `p` and wakes the other
  // propagators watching the ones that changed.
  bool Commit(int p, std::vector<Domain>& doms, std::span<const VarId> vars,
              std::vector<Domain> next) {
    for (size_t k = 0; k < vars.size(); ++k) {
      Domain& cur = doms[Index(vars[k])];
      if (IsEmpty(next[k])) return false;
      if (next[k] == cur) continue;
      cur = std::move(next[k]);
      for (int q : watchers_[Index(vars[k])]) {
        if (q != p) Push(q);
      }
    }
    return true;
  }

  static Domain Trim(const Domain& dom, Interval bounds) {
    ValueSet set = std::get<ValueSet>(dom);
    for (int v : set.Values()) {
      if (!bounds.Contains(v)) set.Erase(v);
    }
    return set;
  }

  bool Run(int p, std::vector<Domain>& doms) {
    const Propagator& prop = props_[p];
    switch (prop.kind) {
      case Propagator::kLess: {
        const Interval x = Hull(doms[Index(prop.s[0])]);
        const Interval y = Hull(doms[Index(prop.s[1])]);
        std::vector<Domain> next = {
            Trim(doms[Index(prop.s[0])], Interval{x.lb, std::min(x.ub, y.ub - 1)}),
            Trim(doms[Index(prop.s[1])], Interval{std::max(y.lb, x.lb + 1), y.ub})};
        return Commit(p, doms, prop.s, std::move(next));
      }
      case Propagator::kBc:
      case Propagator::kDc: {
        const PropagationOutcome out = prop.kind == Propagator::kBc
                                           ? BcAllDiff(prop.s, doms)
                                           : DcAllDiff(prop.s, doms);
        if (out.failed()) return false;
        std::vector<Domain> next;
        for (VarId v : prop.s) {
          next.push_back(Domain{ToValueSet((*out.domains)[Index(v)], d_)});
        }
        return Commit(p, doms, prop.s, std::move(next));
      }
      case Propagator::kPair: {
        std::vector<Domain> local;
        for (VarId v : prop.vars) local.emplace_back(Hull(doms[Index(v)]));
        auto local_id = [&](VarId v) {
          return MakeVarId(static_cast<int>(
              std::find(prop.vars.begin(), prop.vars.end(), v) - prop.vars.begin()));
        };
        std::vector<VarId> s, t;
        for (VarId v : prop.s) s.push_back(local_id(v));
        for (VarId v : prop.t) t.push_back(local_id(v));
        const PropagationOutcome out =
            PropagateFull(OverlapInstance(d_, std::move(local), s, t));
        if (out.failed()) return false;
        std::vector<Domain> next;
        for (size_t k = 0; k < prop.vars.size(); ++k) {
          next.push_back(Trim(doms[Index(prop.vars[k])], Hull((*out.domains)[k])));
        }
        return Commit(p, doms, prop.vars, std::move(next));
      }
    }
    return true;
  }

  int d_;
  std::vector<Propagator> props_;
  std::vector<std::vector<int>> watchers_;
  std::vector<int> queue_;
  std::vector<char> in_queue_;
};

std::vector<Domain> AsValueSets(const Problem& problem) {
  std::vector<Domain> doms;
  for (const Domain& dom : problem.domains) {
    doms.emplace_back(ToValueSet(dom, problem.max_value));
  }
  return doms;
}

}  // namespace

PropagationOutcome PropagateProblem(const Problem& problem, PropagationMode mode) {
  problem.Validate();
  Engine engine(problem, mode);
  std::vector<Domain> doms = AsValueSets(problem);
  if (std::any_of(doms.begin(), doms.end(), IsEmpty) || !engine.FixpointAll(doms)) {
    return FailureOutcome();
  }
  PropagationOutcome out;
  for (int i = 0; i < problem.num_vars(); ++i) {
    AppendDomainDiff(MakeVarId(i), problem.domains[i], doms[i], out.prune_log);
  }
  out.domains = std::move(doms);
  return out;
}

SolveResult Solve(const Problem& problem, const SolveConfig& config) {
  problem.Validate();
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  SolveResult result;
  SearchStats& stats = result.stats;

  std::vector<VarId> order;
  for (int i = 0; i < problem.num_vars(); ++i) order.push_back(MakeVarId(i));
  std::mt19937_64 rng(config.var_order_seed);
  Shuffle(order, rng);

  Engine engine(problem, config.mode);
  std::vector<Domain> current = AsValueSets(problem);
  struct Pending {
    std::vector<Domain> doms;
    VarId var;
  };
  std::vector<Pending> pending;

  auto out_of_budget = [&] {
    return stats.nodes >= config.node_limit || elapsed() >= config.timeout_s;
  };
  auto finish = [&](SearchStatus status) {
    stats.status = status;
    stats.wall_time = elapsed();
    return result;
  };

  ++stats.nodes;
  bool ok = !std::any_of(current.begin(), current.end(), IsEmpty) &&
            engine.FixpointAll(current);
  while (true) {
    while (!ok) {
      if (pending.empty()) return finish(SearchStatus::kUnsat);
      if (out_of_budget()) return finish(SearchStatus::kTimeout);
      ++stats.backtracks;
      ++stats.nodes;
      current = std::move(pending.back().doms);
      const VarId var = pending.back().var;
      pending.pop_back();
      ok = engine.FixpointFrom(var, current);
    }
    const auto next = std::find_if(order.begin(), order.end(), [&](VarId v) {
      return DomainSize(current[Index(v)]) > 1;
    });
    if (next == order.end()) {
      std::vector<int> values;
      for (const Domain& dom : current) values.push_back(Hull(dom).lb);
      if (!CheckSolution(problem, values)) {
        throw std::logic_error("search reached an assignment that violates a constraint");
      }
      result.solution = std::move(values);
      return finish(SearchStatus::kSolved);
    }
    if (out_of_budget()) return finish(SearchStatus::kTimeout);
    const VarId var = *next;
    ValueSet& dom = std::get<ValueSet>(current[Index(var)]);
    const int value = dom.Min();
    std::vector<Domain> alternative = current;
    std::get<ValueSet>(alternative[Index(var)]).Erase(value);
    pending.push_back({std::move(alternative), var});
    dom.Clear();
    dom.Insert(value);
    ++stats.nodes;
    ok = engine.FixpointFrom(var, current);
  }
}

const char* ModeName(PropagationMode mode) {
  switch (mode) {
    case PropagationMode::kObc:
      return "obc";
    case PropagationMode::kDecompBc:
      return "decomp-bc";
    case PropagationMode::kDecompDc:
      return "decomp-dc";
  }
  return "?";
}

const char* StatusName(SearchStatus status) {
  switch (status) {
    case SearchStatus::kSolved:
      return "Solved";
    case SearchStatus::kUnsat:
      return "Unsat";
    case SearchStatus::kTimeout:
      return "Timeout";
  }
  return "?";
}

}  // namespace oad
