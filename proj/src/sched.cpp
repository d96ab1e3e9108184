#include "bpsim/sched.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "bpsim/errors.hpp"

namespace bpsim {

namespace {

PairMask bit(std::size_t i) { return PairMask{1} << i; }

std::vector<PairIndex> mask_members(PairMask m) {
  std::vector<PairIndex> out;
  while (m) {
    out.push_back(static_cast<PairIndex>(std::countr_zero(m)));
    m &= m - 1;
  }
  return out;
}

// Bron-Kerbosch with pivoting on the complement graph: maximal cliques of
// the complement are the maximal independent sets.
class MisEnumerator {
 public:
  explicit MisEnumerator(const ConflictGraph& g) : n_(g.size()), compat_(n_, 0) {
    const PairMask all = n_ == 64 ? ~PairMask{0} : bit(n_) - 1;
    for (std::size_t v = 0; v < n_; ++v) {
      PairMask conflicting = bit(v);
      for (PairIndex u : g.neighbors(v)) conflicting |= bit(u);
      compat_[v] = all & ~conflicting;
    }
    all_ = all;
  }

  std::vector<PairMask> run() {
    out_.clear();
    expand(0, all_, 0);
    return std::move(out_);
  }

 private:
  void expand(PairMask r, PairMask p, PairMask x) {
    if (p == 0 && x == 0) {
      out_.push_back(r);
      return;
    }
    PairMask px = p | x;
    std::size_t pivot = static_cast<std::size_t>(std::countr_zero(px));
    int best = -1;
    for (PairMask m = px; m; m &= m - 1) {
      std::size_t u = static_cast<std::size_t>(std::countr_zero(m));
      int c = std::popcount(p & compat_[u]);
      if (c > best) {
        best = c;
        pivot = u;
      }
    }
    for (PairMask m = p & ~compat_[pivot]; m; m &= m - 1) {
      std::size_t v = static_cast<std::size_t>(std::countr_zero(m));
      expand(r | bit(v), p & compat_[v], x & compat_[v]);
      p &= ~bit(v);
      x |= bit(v);
    }
  }

  std::size_t n_;
  std::vector<PairMask> compat_;
  PairMask all_ = 0;
  std::vector<PairMask> out_;
};

}  // namespace

Schedule Schedule::from_mask(std::size_t pair_count, PairMask mask) {
  Schedule s(pair_count);
  for (PairIndex p : mask_members(mask)) s.active[p] = 1;
  return s;
}

std::size_t Schedule::active_count() const {
  return static_cast<std::size_t>(std::count(active.begin(), active.end(), std::uint8_t{1}));
}

std::vector<PairIndex> Schedule::members() const {
  std::vector<PairIndex> out;
  for (PairIndex p = 0; p < active.size(); ++p) {
    if (active[p]) out.push_back(p);
  }
  return out;
}

bool is_feasible(const Schedule& schedule, const ConflictGraph& conflicts) {
  if (schedule.size() != conflicts.size()) return false;
  for (PairIndex p = 0; p < schedule.size(); ++p) {
    if (!schedule.is_active(p)) continue;
    for (PairIndex q : conflicts.neighbors(p)) {
      if (schedule.is_active(q)) return false;
    }
  }
  return true;
}

Weight clamped_score(std::span<const Weight> weights, const Schedule& schedule) {
  Weight total = 0;
  for (PairIndex p = 0; p < schedule.size(); ++p) {
    if (schedule.is_active(p) && weights[p] > 0) total += weights[p];
  }
  return total;
}

ScheduleCatalog ScheduleCatalog::enumerate(const ConflictGraph& conflicts, std::size_t cap) {
  cap = std::min(cap, kMaxCap);
  if (conflicts.size() > cap) {
    std::ostringstream os;
    os << "instance too large for exact solver: " << conflicts.size() << " link-flow pairs exceed the enumeration cap of "
       << cap << "; use a greedy policy (qgms or dgms)";
    throw SolverLimitError(os.str());
  }
  ScheduleCatalog c;
  c.pair_count_ = conflicts.size();
  c.masks_ = MisEnumerator(conflicts).run();
  std::vector<std::pair<std::vector<PairIndex>, PairMask>> keyed;
  keyed.reserve(c.masks_.size());
  for (PairMask m : c.masks_) keyed.emplace_back(mask_members(m), m);
  std::sort(keyed.begin(), keyed.end());
  for (std::size_t i = 0; i < keyed.size(); ++i) c.masks_[i] = keyed[i].second;
  return c;
}

Schedule maxweight_select(std::span<const Weight> weights, const ScheduleCatalog& catalog) {
  if (catalog.empty()) throw ConfigError("maxweight_select: empty schedule catalog");
  if (weights.size() != catalog.pair_count()) throw ConfigError("maxweight_select: weight vector length mismatch");

  PairMask positive = 0;
  for (std::size_t p = 0; p < weights.size(); ++p) {
    if (weights[p] > 0) positive |= bit(p);
  }
  const auto& masks = catalog.masks();
  std::size_t best_index = 0;
  Weight best_score = -1;
  for (std::size_t i = 0; i < masks.size(); ++i) {
    Weight s = 0;
    for (PairMask m = masks[i] & positive; m; m &= m - 1) s += weights[static_cast<std::size_t>(std::countr_zero(m))];
    if (s > best_score) {
      best_score = s;
      best_index = i;
    }
  }
  return Schedule::from_mask(catalog.pair_count(), masks[best_index] & positive);
}

Schedule greedy_maximal_select(std::span<const Weight> weights, const ConflictGraph& conflicts) {
  if (weights.size() != conflicts.size()) throw ConfigError("greedy_maximal_select: weight vector length mismatch");
  const std::size_t n = weights.size();
  std::vector<PairIndex> order;
  for (PairIndex p = 0; p < n; ++p) {
    if (weights[p] > 0) order.push_back(p);
  }
  std::stable_sort(order.begin(), order.end(), [&](PairIndex a, PairIndex b) { return weights[a] > weights[b]; });

  Schedule s(n);
  std::vector<std::uint8_t> blocked(n, 0);
  for (PairIndex p : order) {
    if (blocked[p]) continue;
    s.active[p] = 1;
    for (PairIndex q : conflicts.neighbors(p)) blocked[q] = 1;
  }
  return s;
}

Schedule brute_force_maxweight(std::span<const Weight> weights, const ConflictGraph& conflicts) {
  const std::size_t n = conflicts.size();
  if (n > kBruteForceLimit) throw SolverLimitError("brute_force_maxweight refuses more than 20 pairs");
  if (weights.size() != n) throw ConfigError("brute_force_maxweight: weight vector length mismatch");

  std::vector<PairMask> adj(n, 0);
  for (PairIndex p = 0; p < n; ++p) {
    for (PairIndex q : conflicts.neighbors(p)) adj[p] |= bit(q);
  }
  PairMask best = 0;
  Weight best_score = -1;
  for (PairMask m = 0; m < bit(n); ++m) {
    bool feasible = true;
    Weight s = 0;
    for (PairMask r = m; r && feasible; r &= r - 1) {
      std::size_t p = static_cast<std::size_t>(std::countr_zero(r));
      if (adj[p] & m) feasible = false;
      s += std::max<Weight>(weights[p], 0);
    }
    if (feasible && s > best_score) {
      best_score = s;
      best = m;
    }
  }
  Schedule out = Schedule::from_mask(n, best);
  for (PairIndex p = 0; p < n; ++p) {
    if (weights[p] <= 0) out.active[p] = 0;
  }
  return out;
}

std::string_view to_string(Policy p) {
  switch (p) {
    case Policy::qbp: return "qbp";
    case Policy::dbp: return "dbp";
    case Policy::qgms: return "qgms";
    case Policy::dgms: return "dgms";
  }
  return "?";
}

std::optional<Policy> parse_policy(std::string_view name) {
  for (Policy p : {Policy::qbp, Policy::dbp, Policy::qgms, Policy::dgms}) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

Policy policy_from_string(std::string_view name) {
  if (auto p = parse_policy(name)) return *p;
  throw ConfigError("unknown policy '" + std::string(name) + "' (expected qbp, dbp, qgms or dgms)");
}

Scheduler::Scheduler(const ConflictGraph& conflicts, Policy policy, std::size_t enumeration_cap)
    : conflicts_(&conflicts), policy_(policy), exact_(is_exact(policy)) {
  if (exact_) catalog_ = ScheduleCatalog::enumerate(conflicts, enumeration_cap);
}

Schedule Scheduler::select(std::span<const Weight> weights) const {
  if (exact_) return maxweight_select(weights, catalog_);
  return greedy_maximal_select(weights, *conflicts_);
}

}  // namespace bpsim
