#include "oad/alldiff.h"

#include <algorithm>
#include <stdexcept>

namespace oad {
namespace {

void CheckScope(std::span<const VarId> scope, size_t num_domains) {
  std::vector<int> ids;
  for (VarId v : scope) {
    if (Index(v) < 0 || static_cast<size_t>(Index(v)) >= num_domains) {
      throw std::invalid_argument("scope variable out of range");
    }
    ids.push_back(Index(v));
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw std::invalid_argument("duplicate variable in AllDifferent scope");
  }
}

Domain TrimTo(const Domain& dom, Interval bounds) {
  if (std::holds_alternative<Interval>(dom)) return bounds;
  ValueSet set = std::get<ValueSet>(dom);
  for (int v : set.Values()) {
    if (!bounds.Contains(v)) set.Erase(v);
  }
  return set;
}

int MaxValue(std::span<const Domain> domains) {
  int d = 0;
  for (const Domain& dom : domains) d = std::max(d, Hull(dom).ub);
  return d;
}

}  // namespace

PropagationOutcome BcAllDiff(std::span<const VarId> scope,
                             std::span<const Domain> domains) {
  CheckScope(scope, domains.size());
  std::vector<Domain> out(domains.begin(), domains.end());
  std::vector<PruneEvent> log;
  const int k = static_cast<int>(scope.size());
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Interval> b(k);
    for (int i = 0; i < k; ++i) {
      b[i] = Hull(out[Index(scope[i])]);
      if (b[i].Empty()) return FailureOutcome(std::move(log));
    }
    std::vector<Interval> next = b;
    for (int i = 0; i < k && !changed; ++i) {
      for (int j = 0; j < k && !changed; ++j) {
        const int lo = b[i].lb;
        const int hi = b[j].ub;
        if (lo > hi) continue;
        int inside = 0;
        for (const Interval& x : b) inside += (x.lb >= lo && x.ub <= hi);
        if (inside > hi - lo + 1) return FailureOutcome(std::move(log));
        if (inside < hi - lo + 1) continue;
        for (int m = 0; m < k; ++m) {
          if (b[m].lb >= lo && b[m].ub <= hi) continue;
          if (next[m].lb >= lo && next[m].lb <= hi) next[m].lb = hi + 1;
          if (next[m].ub >= lo && next[m].ub <= hi) next[m].ub = lo - 1;
          if (next[m] != b[m]) changed = true;
        }
      }
    }
    for (int m = 0; m < k; ++m) {
      if (next[m] == b[m]) continue;
      Domain& dom = out[Index(scope[m])];
      const Domain before = dom;
      dom = TrimTo(dom, next[m]);
      AppendDomainDiff(scope[m], before, dom, log);
    }
  }
  PropagationOutcome result;
  result.domains = std::move(out);
  result.prune_log = std::move(log);
  return result;
}

PropagationOutcome DcAllDiff(std::span<const VarId> scope,
                             std::span<const Domain> domains) {
  CheckScope(scope, domains.size());
  const int k = static_cast<int>(scope.size());
  const int d = MaxValue(domains);
  std::vector<std::vector<int>> adj(k);
  for (int i = 0; i < k; ++i) {
    adj[i] = ToValueSet(domains[Index(scope[i])], d).Values();
    if (adj[i].empty()) return FailureOutcome();
  }

  // Maximum matching, augmenting paths.
  std::vector<int> match_var(k, 0);       // value matched to var i, 0 if none
  std::vector<int> match_val(d + 1, -1);  // var matched to value v
  std::vector<int> seen(d + 1, -1);
  auto augment = [&](auto&& self, int i, int stamp) -> bool {
    for (int v : adj[i]) {
      if (seen[v] == stamp) continue;
      seen[v] = stamp;
      if (match_val[v] < 0 || self(self, match_val[v], stamp)) {
        match_val[v] = i;
        match_var[i] = v;
        return true;
      }
    }
    return false;
  };
  for (int i = 0; i < k; ++i) {
    if (!augment(augment, i, i)) return FailureOutcome();
  }

  // Directed graph: vars 0..k-1, value v at k+v-1. Matching edges go
  // var -> value, free edges value -> var.
  const int nodes = k + d;
  std::vector<std::vector<int>> out_arcs(nodes);
  for (int i = 0; i < k; ++i) {
    for (int v : adj[i]) {
      if (match_var[i] == v) {
        out_arcs[i].push_back(k + v - 1);
      } else {
        out_arcs[k + v - 1].push_back(i);
      }
    }
  }

  // Nodes reachable from a free value.
  std::vector<char> reach(nodes, 0);
  std::vector<int> stack;
  for (int v = 1; v <= d; ++v) {
    if (match_val[v] < 0) {
      reach[k + v - 1] = 1;
      stack.push_back(k + v - 1);
    }
  }
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    for (int y : out_arcs[x]) {
      if (!reach[y]) {
        reach[y] = 1;
        stack.push_back(y);
      }
    }
  }

  // Tarjan SCC, iterative.
  std::vector<int> index(nodes, -1), low(nodes, 0), comp(nodes, -1);
  std::vector<char> on_stack(nodes, 0);
  std::vector<int> scc_stack;
  std::vector<std::pair<int, size_t>> call;
  int counter = 0;
  int num_comps = 0;
  for (int root = 0; root < nodes; ++root) {
    if (index[root] >= 0) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    scc_stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [x, pos] = call.back();
      if (pos < out_arcs[x].size()) {
        const int y = out_arcs[x][pos++];
        if (index[y] < 0) {
          index[y] = low[y] = counter++;
          scc_stack.push_back(y);
          on_stack[y] = 1;
          call.emplace_back(y, 0);
        } else if (on_stack[y]) {
          low[x] = std::min(low[x], index[y]);
        }
        continue;
      }
      const int done = x;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] == index[done]) {
        while (true) {
          const int y = scc_stack.back();
          scc_stack.pop_back();
          on_stack[y] = 0;
          comp[y] = num_comps;
          if (y == done) break;
        }
        ++num_comps;
      }
    }
  }

  std::vector<Domain> out(domains.begin(), domains.end());
  std::vector<PruneEvent> log;
  for (int i = 0; i < k; ++i) {
    ValueSet kept(d);
    for (int v : adj[i]) {
      const int node = k + v - 1;
      if (match_var[i] == v || comp[node] == comp[i] || reach[node]) kept.Insert(v);
    }
    Domain& dom = out[Index(scope[i])];
    const Domain before = dom;
    dom = kept;
    AppendDomainDiff(scope[i], before, dom, log);
  }
  PropagationOutcome result;
  result.domains = std::move(out);
  result.prune_log = std::move(log);
  return result;
}

}  // namespace oad
