#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "bpsim/metrics.hpp"
#include "bpsim/model.hpp"
#include "bpsim/sched.hpp"

namespace bpsim {

struct Packet {
  FlowId flow = 0;
  std::int64_t entry_slot = 0;  // slot in which the packet reached its source node

  bool operator==(const Packet&) const = default;
};

struct Departure {
  std::size_t flow_position = 0;
  std::int64_t delay = 0;
};

struct SlotDecision {
  std::int64_t slot = 0;
  WeightVector weights;
  Schedule schedule;                     // Pi
  std::vector<std::int64_t> queue_before;  // Q(t)
  std::vector<std::int64_t> service;     // Psi per pair
  std::vector<std::int64_t> arrivals;    // A per flow position
  std::vector<Departure> departures;
};

// FIFO queues of every link-flow pair at the start of slot `slot()`.
class QueueState {
 public:
  explicit QueueState(const Network& network);

  std::int64_t slot() const { return slot_; }
  std::size_t pair_count() const { return queues_.size(); }

  const std::deque<Packet>& queue(PairIndex p) const { return queues_[p]; }
  std::int64_t length(PairIndex p) const { return static_cast<std::int64_t>(queues_[p].size()); }
  std::int64_t total_length() const;
  std::vector<std::int64_t> lengths() const;

  // Entry slot of the packet most recently served by pair p.
  std::optional<std::int64_t> last_served_entry(PairIndex p) const { return last_served_entry_[p]; }

  // Per flow position.
  std::int64_t injected(std::size_t f) const { return injected_[f]; }
  std::int64_t departed(std::size_t f) const { return departed_[f]; }
  // Cumulative service of pair p.
  std::int64_t served(PairIndex p) const { return served_[p]; }

  // Direct state manipulation for tests and hand-built scenarios. Counters
  // are not adjusted.
  std::deque<Packet>& mutable_queue(PairIndex p) { return queues_[p]; }
  void set_slot(std::int64_t t) { slot_ = t; }
  void set_last_served_entry(PairIndex p, std::optional<std::int64_t> e) { last_served_entry_[p] = e; }

 private:
  friend SlotDecision step(const Network&, const Scheduler&, QueueState&, std::span<const std::int64_t>);

  std::int64_t slot_ = 0;
  std::vector<std::deque<Packet>> queues_;
  std::vector<std::optional<std::int64_t>> last_served_entry_;
  std::vector<std::int64_t> injected_;
  std::vector<std::int64_t> departed_;
  std::vector<std::int64_t> served_;
};

// w_{s,k} = Q_{s,k} - Q_{s,k+1} with Q_{s,H+1} = 0.
WeightVector compute_qbp_weights(const Network& network, const QueueState& state);

// Head-of-line delay quantities per pair, all in slots.
//
// W is the network sojourn of the HOL packet; an empty queue inherits W of
// the hop before it (W_{s,0} = 0), resolved from source to destination.
// U = t - W is the entry slot of the (possibly inherited) HOL packet.
// What = W_k - W_{k-1}; dWhat = What_k - What_{k+1} with What_{H+1} = 0.
// B = U - (entry slot of the packet last served by this pair), 0 if the pair
// has never served a packet.
struct DelayView {
  std::vector<std::int64_t> sojourn;       // W
  std::vector<std::int64_t> metric;        // What
  std::vector<std::int64_t> differential;  // dWhat
  std::vector<std::int64_t> entry;         // U
  std::vector<std::int64_t> gap;           // B
};

DelayView compute_delay_view(const Network& network, const QueueState& state);

WeightVector compute_weights(const Network& network, const QueueState& state, Policy policy);

// Advances the state by one slot: weights from Q(t), schedule, FIFO service
// of min(capacity, Q) on active pairs, forwarding or departure, then the
// slot's arrivals enter hop 1 stamped with the current slot.
SlotDecision step(const Network& network, const Scheduler& scheduler, QueueState& state,
                  std::span<const std::int64_t> arrivals);

struct RunOptions {
  std::int64_t horizon = 100000;
  std::uint64_t seed = 1;
  std::int64_t trace_stride = 1;
  std::size_t enumeration_cap = ScheduleCatalog::kDefaultCap;
  // Called with the state at the start of every slot, before scheduling.
  std::function<void(const QueueState&)> on_slot_start;
  // Called after every step with the state at t+1.
  std::function<void(const QueueState&, const SlotDecision&)> on_slot_end;
};

// Flow f draws arrivals from RngStream(seed, flow id).
std::vector<RngStream> make_flow_streams(const Network& network, std::uint64_t seed);

// Simulates `horizon` slots from an empty network. Throws SolverLimitError
// when an exact policy exceeds the enumeration cap.
RunSummary run(const Network& network, Policy policy, const RunOptions& options);

}  // namespace bpsim
