#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bpsim/engine.hpp"

namespace bpsim {

enum class InvariantKind {
  queue_differential,  // Q_{s,k} >= Q_{s,k+1} - 2
  delay_differential,  // What_{s,k} >= What_{s,k+1} - 2 B_{s,k}
};

struct Violation {
  InvariantKind kind = InvariantKind::queue_differential;
  PairIndex pair = 0;
  std::int64_t slot = 0;
  std::int64_t lhs = 0;
  std::int64_t rhs = 0;
};

// Checks the back-pressure monotonicity bounds on every observed state.
// Queue-weighted policies (qbp, qgms) get the queue bound, delay-weighted
// ones (dbp, dgms) the delay bound. Both constants assume one packet of
// service per slot, so non-unit-capacity networks are refused.
class InvariantMonitor {
 public:
  InvariantMonitor(const Network& network, Policy policy);

  void observe(const QueueState& state);
  const std::vector<Violation>& violations() const { return violations_; }
  std::int64_t states_checked() const { return checked_; }

 private:
  const Network* network_;
  InvariantKind kind_;
  std::vector<Violation> violations_;
  std::int64_t checked_ = 0;
};

std::vector<Violation> check_invariants(const Network& network, Policy policy, std::span<const QueueState> history);

}  // namespace bpsim
