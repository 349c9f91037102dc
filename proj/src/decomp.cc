#include "oad/decomp.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace oad {

struct Network::Structure {
  enum Kind : uint8_t { kChannel, kSum, kLinear, kCapacity };
  struct Constraint {
    Kind kind;
    bool extended;
    // kChannel: var. kSum/kCapacity: block, l, u. kLinear: counter indices
    // z, x, y with z = x + y.
    int p0, p1, p2;
  };

  std::vector<Constraint> constraints;
  std::vector<int> extended_ids;
  // Constraints watching each counter, in CSR layout.
  std::vector<int> watch_start;
  std::vector<int> watch_list;
  std::vector<int> sum_id;  // per counter index, -1 when there is none
  std::vector<std::vector<int>> members;  // per CounterBlock
};

namespace {

int CounterBlockOf(Block b) {
  switch (b) {
    case Block::kSOnly:
      return static_cast<int>(CounterBlock::kS);
    case Block::kTOnly:
      return static_cast<int>(CounterBlock::kT);
    case Block::kShared:
      break;
  }
  return static_cast<int>(CounterBlock::kST);
}

}  // namespace

Network::Network(const OverlapInstance& instance)
    : n_(instance.num_vars()), d_(instance.max_value()) {
  if (n_ > kMaxNetworkVars) {
    throw InstanceError("network supports at most " +
                        std::to_string(kMaxNetworkVars) + " variables");
  }
  auto structure = std::make_shared<Structure>();
  structure->members.resize(3);
  for (int i = 0; i < n_; ++i) {
    blocks_.push_back(instance.block(MakeVarId(i)));
    structure->members[CounterBlockOf(blocks_.back())].push_back(i);
  }

  const int num_counters = 3 * (d_ + 2) * (d_ + 1);
  using C = Structure::Constraint;
  auto& cons = structure->constraints;
  for (int i = 0; i < n_; ++i) cons.push_back(C{Structure::kChannel, false, i, 0, 0});
  structure->sum_id.assign(num_counters, -1);
  for (int block = 0; block < 3; ++block) {
    for (int l = 1; l <= d_; ++l) {
      for (int u = l; u <= d_ && u - l < n_; ++u) {
        structure->sum_id[CounterIndex(block, l, u)] = static_cast<int>(cons.size());
        cons.push_back(C{Structure::kSum, false, block, l, u});
      }
    }
  }
  auto add_prefix = [&](int block, bool extended) {
    for (int u = 2; u <= d_; ++u) {
      for (int l = 1; l < u; ++l) {
        if (extended) structure->extended_ids.push_back(static_cast<int>(cons.size()));
        cons.push_back(C{Structure::kLinear, extended, CounterIndex(block, 1, u),
                         CounterIndex(block, 1, l), CounterIndex(block, l + 1, u)});
      }
    }
  };
  const int st = static_cast<int>(CounterBlock::kST);
  add_prefix(st, false);
  for (int block : {static_cast<int>(CounterBlock::kS), static_cast<int>(CounterBlock::kT)}) {
    for (int l = 1; l <= d_; ++l) {
      for (int u = l; u <= d_; ++u) {
        cons.push_back(C{Structure::kCapacity, false, block, l, u});
      }
    }
  }
  add_prefix(static_cast<int>(CounterBlock::kT), true);
  add_prefix(static_cast<int>(CounterBlock::kS), true);
  for (int l = 2; l <= d_; ++l) {
    for (int u = l + 1; u <= d_; ++u) {
      for (int k = l; k < u; ++k) {
        structure->extended_ids.push_back(static_cast<int>(cons.size()));
        cons.push_back(C{Structure::kLinear, true, CounterIndex(st, l, u),
                         CounterIndex(st, l, k), CounterIndex(st, k + 1, u)});
      }
    }
  }

  // Watch lists.
  std::vector<std::vector<int>> watchers(num_counters);
  for (int c = 0; c < static_cast<int>(cons.size()); ++c) {
    const C& con = cons[c];
    switch (con.kind) {
      case Structure::kChannel:
        break;
      case Structure::kSum:
        watchers[CounterIndex(con.p0, con.p1, con.p2)].push_back(c);
        break;
      case Structure::kLinear:
        watchers[con.p0].push_back(c);
        watchers[con.p1].push_back(c);
        watchers[con.p2].push_back(c);
        break;
      case Structure::kCapacity:
        watchers[CounterIndex(st, con.p1, con.p2)].push_back(c);
        watchers[CounterIndex(con.p0, con.p1, con.p2)].push_back(c);
        break;
    }
  }
  structure->watch_start.reserve(num_counters + 1);
  for (const auto& w : watchers) {
    structure->watch_start.push_back(static_cast<int>(structure->watch_list.size()));
    structure->watch_list.insert(structure->watch_list.end(), w.begin(), w.end());
  }
  structure->watch_start.push_back(static_cast<int>(structure->watch_list.size()));

  // State.
  for (const Domain& dom : instance.domains()) {
    const Interval hull = Hull(dom);
    lb_.push_back(hull.lb);
    ub_.push_back(hull.ub);
    if (hull.Empty()) failed_ = true;
  }
  a_.assign(static_cast<size_t>(n_) * d_ * n_, Tri::kUnknown);
  counter_lb_.assign(num_counters, 0);
  counter_ub_.assign(num_counters, 0);
  for (int block = 0; block < 3; ++block) {
    const int size = static_cast<int>(structure->members[block].size());
    for (int l = 1; l <= d_; ++l) {
      for (int u = l; u <= d_; ++u) counter_ub_[CounterIndex(block, l, u)] = size;
    }
  }
  in_queue_.assign(cons.size(), 0);
  structure_ = std::move(structure);
  for (int c = 0; c < static_cast<int>(structure_->constraints.size()); ++c) {
    if (!structure_->constraints[c].extended) Enqueue(c);
  }
}

CounterBounds Network::counter(CounterBlock block, int l, int u) const {
  const int c = CounterIndex(static_cast<int>(block), l, u);
  return CounterBounds{counter_lb_[c], counter_ub_[c]};
}

Tri Network::a(VarId v, int l, int u) const { return a_[AIndex(Index(v), l, u)]; }

Tri Network::b(VarId v, int l) const {
  if (ub_[Index(v)] <= l) return Tri::kTrue;
  if (lb_[Index(v)] > l) return Tri::kFalse;
  return Tri::kUnknown;
}

void Network::RestrictVar(VarId v, Interval bounds) {
  SetVarLb(Index(v), bounds.lb);
  SetVarUb(Index(v), bounds.ub);
}

int64_t Network::LatticeHeight() const {
  int64_t height = 0;
  for (int i = 0; i < n_; ++i) height += std::max(0, ub_[i] - lb_[i] + 1);
  for (int block = 0; block < 3; ++block) {
    for (int l = 1; l <= d_; ++l) {
      for (int u = l; u <= d_; ++u) {
        const int c = CounterIndex(block, l, u);
        height += std::max(0, counter_ub_[c] - counter_lb_[c] + 1);
      }
    }
  }
  for (int i = 0; i < n_; ++i) {
    for (int l = 1; l <= d_; ++l) {
      for (int u = l; u <= d_ && u - l < n_; ++u) {
        if (a_[AIndex(i, l, u)] == Tri::kUnknown) ++height;
      }
    }
  }
  return height;
}

std::vector<Domain> Network::VarDomains() const {
  std::vector<Domain> out;
  for (int i = 0; i < n_; ++i) out.emplace_back(Interval{lb_[i], ub_[i]});
  return out;
}

PropagationStatus Network::Propagate(bool extended) {
  if (!failed_ && extended && !extended_on_) {
    extended_on_ = true;
    for (int c : structure_->extended_ids) Enqueue(c);
  }
  while (!failed_ && queue_head_ < queue_.size()) {
    const int c = queue_[queue_head_++];
    in_queue_[c] = 0;
    running_ = c;
    Run(c);
    running_ = -1;
  }
  for (size_t k = queue_head_; k < queue_.size(); ++k) in_queue_[queue_[k]] = 0;
  queue_.clear();
  queue_head_ = 0;
  return failed_ ? PropagationStatus::kFailure : PropagationStatus::kFixpoint;
}

void Network::Enqueue(int c) {
  if (c < 0 || c == running_ || in_queue_[c]) return;
  if (structure_->constraints[c].extended && !extended_on_) return;
  in_queue_[c] = 1;
  queue_.push_back(c);
}

void Network::Run(int c) {
  const auto& con = structure_->constraints[c];
  switch (con.kind) {
    case Structure::kChannel:
      RunChannel(con.p0);
      break;
    case Structure::kSum:
      RunSum(con.p0, con.p1, con.p2);
      break;
    case Structure::kLinear:
      RunLinear(con.p0, con.p1, con.p2);
      break;
    case Structure::kCapacity:
      RunCapacity(con.p0, con.p1, con.p2);
      break;
  }
}

void Network::SetCounterLb(int c, int v) {
  if (v <= counter_lb_[c]) return;
  work_ += std::max(0, std::min(v, counter_ub_[c] + 1) - counter_lb_[c]);
  counter_lb_[c] = v;
  if (counter_lb_[c] > counter_ub_[c]) failed_ = true;
  for (int k = structure_->watch_start[c]; k < structure_->watch_start[c + 1]; ++k) {
    Enqueue(structure_->watch_list[k]);
  }
}

void Network::SetCounterUb(int c, int v) {
  if (v >= counter_ub_[c]) return;
  work_ += std::max(0, counter_ub_[c] - std::max(v, counter_lb_[c] - 1));
  counter_ub_[c] = v;
  if (counter_lb_[c] > counter_ub_[c]) failed_ = true;
  for (int k = structure_->watch_start[c]; k < structure_->watch_start[c + 1]; ++k) {
    Enqueue(structure_->watch_list[k]);
  }
}

void Network::SetVarLb(int var, int v) {
  if (v <= lb_[var]) return;
  work_ += std::max(0, std::min(v, ub_[var] + 1) - lb_[var]);
  lb_[var] = v;
  if (lb_[var] > ub_[var]) failed_ = true;
  Enqueue(var);
}

void Network::SetVarUb(int var, int v) {
  if (v >= ub_[var]) return;
  work_ += std::max(0, ub_[var] - std::max(v, lb_[var] - 1));
  ub_[var] = v;
  if (lb_[var] > ub_[var]) failed_ = true;
  Enqueue(var);
}

void Network::SetA(int var, int l, int u, Tri state) {
  a_[AIndex(var, l, u)] = state;
  ++work_;
  Enqueue(structure_->sum_id[CounterIndex(CounterBlockOf(blocks_[var]), l, u)]);
  Enqueue(var);
}

void Network::RunChannel(int var) {
  bool changed = true;
  while (changed && !failed_) {
    changed = false;
    for (int l = 1; l <= d_; ++l) {
      const int u_end = std::min(d_, l + n_ - 1);
      for (int u = l; u <= u_end; ++u) {
        const int lb = lb_[var];
        const int ub = ub_[var];
        switch (a_[AIndex(var, l, u)]) {
          case Tri::kUnknown:
            if (lb >= l && ub <= u) {
              SetA(var, l, u, Tri::kTrue);
            } else if (ub < l || lb > u) {
              SetA(var, l, u, Tri::kFalse);
            }
            break;
          case Tri::kTrue:
            if (lb < l) {
              SetVarLb(var, l);
              changed = true;
            }
            if (ub > u) {
              SetVarUb(var, u);
              changed = true;
            }
            break;
          case Tri::kFalse:
            if (lb >= l && lb <= u) {
              SetVarLb(var, u + 1);
              changed = true;
            } else if (ub <= u && ub >= l) {
              SetVarUb(var, l - 1);
              changed = true;
            }
            break;
        }
        if (failed_) return;
      }
    }
  }
}

void Network::RunSum(int block, int l, int u) {
  const int c = CounterIndex(block, l, u);
  int fixed_true = 0;
  int unknown = 0;
  const auto& members = structure_->members[block];
  for (int j : members) {
    const Tri st = a_[AIndex(j, l, u)];
    if (st == Tri::kTrue) ++fixed_true;
    if (st == Tri::kUnknown) ++unknown;
  }
  SetCounterLb(c, fixed_true);
  SetCounterUb(c, fixed_true + unknown);
  if (failed_ || unknown == 0) return;
  Tri forced = Tri::kUnknown;
  if (fixed_true == counter_ub_[c]) forced = Tri::kFalse;
  if (fixed_true + unknown == counter_lb_[c]) forced = Tri::kTrue;
  if (forced == Tri::kUnknown) return;
  for (int j : members) {
    if (a_[AIndex(j, l, u)] == Tri::kUnknown) SetA(j, l, u, forced);
  }
}

void Network::RunLinear(int z, int x, int y) {
  SetCounterLb(z, counter_lb_[x] + counter_lb_[y]);
  SetCounterUb(z, counter_ub_[x] + counter_ub_[y]);
  SetCounterLb(x, counter_lb_[z] - counter_ub_[y]);
  SetCounterUb(x, counter_ub_[z] - counter_lb_[y]);
  SetCounterLb(y, counter_lb_[z] - counter_ub_[x]);
  SetCounterUb(y, counter_ub_[z] - counter_lb_[x]);
}

void Network::RunCapacity(int block, int l, int u) {
  const int cap = u - l + 1;
  const int shared = CounterIndex(static_cast<int>(CounterBlock::kST), l, u);
  const int side = CounterIndex(block, l, u);
  SetCounterUb(shared, cap - counter_lb_[side]);
  SetCounterUb(side, cap - counter_lb_[shared]);
}

namespace {

PropagationOutcome OutcomeFrom(const OverlapInstance& instance,
                               const Network& net) {
  if (net.failed()) return FailureOutcome();
  PropagationOutcome out;
  out.domains = net.VarDomains();
  for (int i = 0; i < instance.num_vars(); ++i) {
    const VarId v = MakeVarId(i);
    AppendDomainDiff(v, Domain{Hull(instance.domain(v))}, (*out.domains)[i],
                     out.prune_log);
  }
  return out;
}

// Values of [lo, hi] lying in an interval whose S-only and T-only counters
// are both forced to its full length.
void MarkSaturatedIntersections(const Network& net, int lo, int hi,
                                ValueSet& marked) {
  for (int l = lo; l <= hi; ++l) {
    for (int u = l; u <= hi; ++u) {
      const int len = u - l + 1;
      if (net.counter(CounterBlock::kS, l, u).lb == len &&
          net.counter(CounterBlock::kT, l, u).lb == len) {
        for (int v = l; v <= u; ++v) marked.Insert(v);
      }
    }
  }
}

// Reads what a propagated network says `var` cannot take inside [lo, hi].
void CollectExclusions(const Network& net, VarId var, int lo, int hi,
                       ValueSet& removed) {
  const Interval bounds = net.var_bounds(var);
  ValueSet saturated(net.max_value());
  MarkSaturatedIntersections(net, lo, hi, saturated);
  for (int v = lo; v <= hi; ++v) {
    if (!bounds.Contains(v) || saturated.Contains(v) ||
        net.a(var, v, v) == Tri::kFalse) {
      removed.Insert(v);
    }
  }
}

std::vector<std::pair<VarId, int>> Rule3aPassImpl(const Network& net,
                                                  int64_t* probes) {
  const int n = net.num_vars();
  const int d = net.max_value();
  std::vector<VarId> shared;
  for (int i = 0; i < n; ++i) {
    if (net.block(MakeVarId(i)) == Block::kShared) shared.push_back(MakeVarId(i));
  }
  std::vector<ValueSet> removed(n, ValueSet(d));
  if (net.failed() || shared.empty()) return {};

  // Probes depend only on the restricted interval, so each (variable,
  // [lo, hi]) pair is propagated once per pass.
  std::vector<ValueSet> probed(static_cast<size_t>(n) * (d + 1), ValueSet(d));
  for (int a = 1; a <= d; ++a) {
    for (int b = a; b <= d; ++b) {
      const CounterBounds c = net.counter(CounterBlock::kST, a, b);
      if (c.ub - c.lb > 1) continue;
      for (VarId y : shared) {
        const Interval dom = net.var_bounds(y);
        const int lo = std::max(a, dom.lb);
        const int hi = std::min(b, dom.ub);
        if (lo > hi) continue;
        ValueSet& seen = probed[static_cast<size_t>(Index(y)) * (d + 1) + lo];
        if (seen.Contains(hi)) continue;
        seen.Insert(hi);
        if (dom.lb >= a && dom.ub <= b) {
          // Already inside: the current network is its own probe.
          CollectExclusions(net, y, lo, hi, removed[Index(y)]);
          continue;
        }
        Network probe = net;
        probe.RestrictVar(y, Interval{lo, hi});
        if (probes != nullptr) ++*probes;
        if (probe.PropagateExtended() == PropagationStatus::kFailure) {
          for (int v = lo; v <= hi; ++v) removed[Index(y)].Insert(v);
          continue;
        }
        CollectExclusions(probe, y, lo, hi, removed[Index(y)]);
      }
    }
  }
  std::vector<std::pair<VarId, int>> out;
  for (int i = 0; i < n; ++i) {
    for (int v : removed[i].Values()) out.emplace_back(MakeVarId(i), v);
  }
  return out;
}

}  // namespace

PropagationOutcome PropagateBase(const OverlapInstance& instance) {
  Network net(instance);
  net.PropagateBase();
  return OutcomeFrom(instance, net);
}

std::vector<std::pair<VarId, int>> Rule3aPass(const Network& network) {
  return Rule3aPassImpl(network, nullptr);
}

PropagationOutcome PropagateFull(const OverlapInstance& instance,
                                 FullPropagationStats* stats) {
  const int n = instance.num_vars();
  const int d = instance.max_value();
  Network net(instance);
  FullPropagationStats local;
  std::vector<PruneEvent> log;
  std::vector<ValueSet> noted(n, ValueSet(d));
  std::vector<Domain> previous;
  for (const Domain& dom : instance.domains()) previous.emplace_back(Hull(dom));

  auto log_moves = [&]() {
    std::vector<Domain> now = net.VarDomains();
    for (int i = 0; i < n; ++i) AppendDomainDiff(MakeVarId(i), previous[i], now[i], log);
    previous = std::move(now);
  };

  bool failed = false;
  while (true) {
    ++local.rounds;
    if (net.PropagateExtended() == PropagationStatus::kFailure) {
      failed = true;
      break;
    }
    log_moves();
    const auto prunes = Rule3aPassImpl(net, &local.probes);
    std::vector<ValueSet> removed(n, ValueSet(d));
    for (const auto& [var, value] : prunes) removed[Index(var)].Insert(value);
    bool moved = false;
    for (int i = 0; i < n; ++i) {
      if (removed[i].Empty()) continue;
      const VarId v = MakeVarId(i);
      Interval bounds = net.var_bounds(v);
      while (bounds.lb <= bounds.ub && removed[i].Contains(bounds.lb)) ++bounds.lb;
      while (bounds.ub >= bounds.lb && removed[i].Contains(bounds.ub)) --bounds.ub;
      for (int value : removed[i].Values()) {
        if (bounds.lb < value && value < bounds.ub && !noted[i].Contains(value)) {
          noted[i].Insert(value);
          log.push_back({v, PruneKind::kInteriorValue, value});
        }
      }
      if (bounds != net.var_bounds(v)) {
        net.RestrictVar(v, bounds);
        moved = true;
      }
    }
    if (!moved) break;
  }
  local.work = net.work();
  if (stats != nullptr) *stats = local;
  if (failed) return FailureOutcome(std::move(log));
  PropagationOutcome out;
  out.domains = net.VarDomains();
  out.prune_log = std::move(log);
  return out;
}

std::optional<SimMatching> FindSimMatchingConvex(const OverlapInstance& instance) {
  PropagationOutcome out = PropagateFull(instance);
  if (out.failed()) return std::nullopt;
  std::vector<Domain> domains = *out.domains;
  for (int i = 0; i < instance.num_vars(); ++i) {
    const int value = std::get<Interval>(domains[i]).lb;
    domains[i] = Interval{value, value};
    out = PropagateFull(instance.WithDomains(domains));
    if (out.failed()) {
      throw std::logic_error("bound-consistent lower bound lost its support");
    }
    domains = *out.domains;
  }
  SimMatching m;
  for (int i = 0; i < instance.num_vars(); ++i) {
    m.edges.emplace_back(MakeVarId(i), std::get<Interval>(domains[i]).lb);
  }
  return m;
}

}  // namespace oad
