#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bpsim/model.hpp"

namespace bpsim {

using Weight = std::int64_t;
using WeightVector = std::vector<Weight>;
using PairMask = std::uint64_t;

// Activation vector over link-flow pairs.
struct Schedule {
  std::vector<std::uint8_t> active;

  Schedule() = default;
  explicit Schedule(std::size_t pair_count) : active(pair_count, 0) {}
  static Schedule from_mask(std::size_t pair_count, PairMask mask);

  std::size_t size() const { return active.size(); }
  bool is_active(PairIndex p) const { return active[p] != 0; }
  std::size_t active_count() const;
  std::vector<PairIndex> members() const;

  bool operator==(const Schedule&) const = default;
};

bool is_feasible(const Schedule& schedule, const ConflictGraph& conflicts);

// Sum of max(w, 0) over active pairs.
Weight clamped_score(std::span<const Weight> weights, const Schedule& schedule);

// All maximal independent sets of a conflict graph, sorted lexicographically
// by their ascending member lists.
class ScheduleCatalog {
 public:
  static constexpr std::size_t kDefaultCap = 32;
  static constexpr std::size_t kMaxCap = 64;

  ScheduleCatalog() = default;

  // Throws SolverLimitError when the graph has more than `cap` pairs.
  static ScheduleCatalog enumerate(const ConflictGraph& conflicts, std::size_t cap = kDefaultCap);

  std::size_t pair_count() const { return pair_count_; }
  std::size_t size() const { return masks_.size(); }
  bool empty() const { return masks_.empty(); }
  const std::vector<PairMask>& masks() const { return masks_; }
  Schedule schedule(std::size_t i) const { return Schedule::from_mask(pair_count_, masks_.at(i)); }

 private:
  std::size_t pair_count_ = 0;
  std::vector<PairMask> masks_;
};

// Exact MaxWeight over the catalog. Scores clamp negative weights to zero,
// ties go to the lowest catalog index and pairs with weight <= 0 are
// deactivated in the winner.
Schedule maxweight_select(std::span<const Weight> weights, const ScheduleCatalog& catalog);

// Activates the highest positive-weight remaining pair (lowest index on ties)
// and drops its conflict neighbours until no positive pair remains.
Schedule greedy_maximal_select(std::span<const Weight> weights, const ConflictGraph& conflicts);

// Exhaustive scan over all 2^n activation vectors; test oracle for n <= 20.
Schedule brute_force_maxweight(std::span<const Weight> weights, const ConflictGraph& conflicts);
inline constexpr std::size_t kBruteForceLimit = 20;

enum class Policy { qbp, dbp, qgms, dgms };

std::string_view to_string(Policy p);
std::optional<Policy> parse_policy(std::string_view name);
// Throws ConfigError listing the accepted names.
Policy policy_from_string(std::string_view name);
inline bool uses_delay_weights(Policy p) { return p == Policy::dbp || p == Policy::dgms; }
inline bool is_exact(Policy p) { return p == Policy::qbp || p == Policy::dbp; }

// Policy-bound schedule selector; exact policies precompute the catalog.
class Scheduler {
 public:
  Scheduler(const ConflictGraph& conflicts, Policy policy, std::size_t enumeration_cap = ScheduleCatalog::kDefaultCap);

  Policy policy() const { return policy_; }
  const ScheduleCatalog* catalog() const { return exact_ ? &catalog_ : nullptr; }
  Schedule select(std::span<const Weight> weights) const;

 private:
  const ConflictGraph* conflicts_;
  Policy policy_;
  bool exact_;
  ScheduleCatalog catalog_;
};

}  // namespace bpsim
