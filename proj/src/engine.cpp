#include "bpsim/engine.hpp"

#include <algorithm>
#include <numeric>

#include "bpsim/errors.hpp"

namespace bpsim {

QueueState::QueueState(const Network& network)
    : queues_(network.pair_count()),
      last_served_entry_(network.pair_count()),
      injected_(network.flow_count(), 0),
      departed_(network.flow_count(), 0),
      served_(network.pair_count(), 0) {}

std::int64_t QueueState::total_length() const {
  std::int64_t total = 0;
  for (const auto& q : queues_) total += static_cast<std::int64_t>(q.size());
  return total;
}

std::vector<std::int64_t> QueueState::lengths() const {
  std::vector<std::int64_t> out(queues_.size());
  for (std::size_t p = 0; p < queues_.size(); ++p) out[p] = static_cast<std::int64_t>(queues_[p].size());
  return out;
}

WeightVector compute_qbp_weights(const Network& network, const QueueState& state) {
  WeightVector w(network.pair_count(), 0);
  for (std::size_t f = 0; f < network.flow_count(); ++f) {
    const PairIndex first = network.first_pair(f);
    const std::size_t h = network.hops(f);
    for (std::size_t k = 0; k < h; ++k) {
      const std::int64_t next = k + 1 < h ? state.length(first + k + 1) : 0;
      w[first + k] = state.length(first + k) - next;
    }
  }
  return w;
}

DelayView compute_delay_view(const Network& network, const QueueState& state) {
  const std::size_t n = network.pair_count();
  const std::int64_t t = state.slot();
  DelayView v;
  v.sojourn.assign(n, 0);
  v.metric.assign(n, 0);
  v.differential.assign(n, 0);
  v.entry.assign(n, t);
  v.gap.assign(n, 0);

  for (std::size_t f = 0; f < network.flow_count(); ++f) {
    const PairIndex first = network.first_pair(f);
    const std::size_t h = network.hops(f);
    // Nothing upstream of hop 1: the next packet would enter now.
    std::int64_t upstream_entry = t;
    std::int64_t upstream_sojourn = 0;
    for (std::size_t k = 0; k < h; ++k) {
      const PairIndex p = first + k;
      const auto& q = state.queue(p);
      const std::int64_t entry = q.empty() ? upstream_entry : q.front().entry_slot;
      const std::int64_t sojourn = t - entry;
      v.entry[p] = entry;
      v.sojourn[p] = sojourn;
      v.metric[p] = sojourn - upstream_sojourn;
      if (auto last = state.last_served_entry(p)) v.gap[p] = entry - *last;
      upstream_entry = entry;
      upstream_sojourn = sojourn;
    }
    for (std::size_t k = 0; k < h; ++k) {
      const PairIndex p = first + k;
      const std::int64_t next = k + 1 < h ? v.metric[p + 1] : 0;
      v.differential[p] = v.metric[p] - next;
    }
  }
  return v;
}

WeightVector compute_weights(const Network& network, const QueueState& state, Policy policy) {
  if (uses_delay_weights(policy)) return compute_delay_view(network, state).differential;
  return compute_qbp_weights(network, state);
}

SlotDecision step(const Network& network, const Scheduler& scheduler, QueueState& state,
                  std::span<const std::int64_t> arrivals) {
  if (arrivals.size() != network.flow_count()) throw ConfigError("step: one arrival count per flow is required");
  const std::int64_t t = state.slot_;
  SlotDecision d;
  d.slot = t;
  d.queue_before = state.lengths();
  d.weights = compute_weights(network, state, scheduler.policy());
  d.schedule = scheduler.select(d.weights);
  d.service.assign(network.pair_count(), 0);
  d.arrivals.assign(arrivals.begin(), arrivals.end());

  const auto& pairs = network.pairs();
  for (std::size_t f = 0; f < network.flow_count(); ++f) {
    const PairIndex first = network.first_pair(f);
    const std::size_t h = network.hops(f);
    // Downstream first, so a forwarded packet is never served twice in a slot.
    for (std::size_t k = h; k-- > 0;) {
      const PairIndex p = first + k;
      if (!d.schedule.is_active(p)) continue;
      auto& q = state.queues_[p];
      const auto moved = std::min<std::int64_t>(pairs[p].capacity, static_cast<std::int64_t>(q.size()));
      for (std::int64_t i = 0; i < moved; ++i) {
        Packet pkt = q.front();
        q.pop_front();
        state.last_served_entry_[p] = pkt.entry_slot;
        if (k + 1 == h) {
          d.departures.push_back({f, (t + 1) - pkt.entry_slot});
          ++state.departed_[f];
        } else {
          state.queues_[p + 1].push_back(pkt);
        }
      }
      d.service[p] = moved;
      state.served_[p] += moved;
    }
    const FlowId id = network.flows()[f].id;
    for (std::int64_t i = 0; i < arrivals[f]; ++i) state.queues_[first].push_back({id, t});
    state.injected_[f] += arrivals[f];
  }
  ++state.slot_;
  return d;
}

std::vector<RngStream> make_flow_streams(const Network& network, std::uint64_t seed) {
  std::vector<RngStream> streams;
  streams.reserve(network.flow_count());
  for (const Flow& f : network.flows()) streams.emplace_back(seed, static_cast<std::uint64_t>(f.id));
  return streams;
}

RunSummary run(const Network& network, Policy policy, const RunOptions& options) {
  if (options.horizon < 1) throw ConfigError("run: horizon must be >= 1");
  if (options.trace_stride < 1) throw ConfigError("run: trace stride must be >= 1");

  const Scheduler scheduler(network.conflicts(), policy, options.enumeration_cap);
  QueueState state(network);
  auto streams = make_flow_streams(network, options.seed);

  const std::size_t n_pairs = network.pair_count();
  const std::size_t n_flows = network.flow_count();
  RunSummary s;
  s.policy = std::string(to_string(policy));
  s.horizon = options.horizon;
  s.seed = options.seed;
  s.trace_stride = options.trace_stride;
  s.total_queue.reserve(static_cast<std::size_t>(options.horizon));
  s.queue_traces.resize(n_pairs);
  s.hol_traces.resize(n_pairs);
  s.delays.resize(n_flows);

  std::vector<std::int64_t> arrivals(n_flows, 0);
  for (std::int64_t t = 0; t < options.horizon; ++t) {
    if (options.on_slot_start) options.on_slot_start(state);
    s.total_queue.push_back(state.total_length());
    if (t % options.trace_stride == 0) {
      s.trace_slots.push_back(t);
      const DelayView view = compute_delay_view(network, state);
      for (PairIndex p = 0; p < n_pairs; ++p) {
        s.queue_traces[p].push_back(state.length(p));
        s.hol_traces[p].push_back(view.sojourn[p]);
      }
    }
    for (std::size_t f = 0; f < n_flows; ++f) arrivals[f] = sample_arrivals(network.flows()[f].arrival, t, streams[f]);
    const SlotDecision d = step(network, scheduler, state, arrivals);
    for (const Departure& dep : d.departures) s.delays[dep.flow_position].push_back(dep.delay);
    if (options.on_slot_end) options.on_slot_end(state, d);
  }

  for (std::size_t f = 0; f < n_flows; ++f) {
    s.injected.push_back(state.injected(f));
    s.departed.push_back(state.departed(f));
    std::int64_t in_net = 0;
    for (std::size_t k = 0; k < network.hops(f); ++k) in_net += state.length(network.first_pair(f) + k);
    s.in_network.push_back(in_net);
  }
  for (PairIndex p = 0; p < n_pairs; ++p) {
    s.served.push_back(state.served(p));
    s.final_queue.push_back(state.length(p));
  }
  return s;
}

}  // namespace bpsim
