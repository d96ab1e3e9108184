#include "bpsim/invariants.hpp"

#include "bpsim/errors.hpp"

namespace bpsim {

InvariantMonitor::InvariantMonitor(const Network& network, Policy policy)
    : network_(&network),
      kind_(uses_delay_weights(policy) ? InvariantKind::delay_differential : InvariantKind::queue_differential) {
  if (!network.unit_capacity()) {
    throw ConfigError(
        "invariant monitor needs unit link capacities: the bounds 2 and 2B assume at most one packet served per "
        "slot");
  }
}

void InvariantMonitor::observe(const QueueState& state) {
  ++checked_;
  const Network& net = *network_;
  if (kind_ == InvariantKind::queue_differential) {
    for (std::size_t f = 0; f < net.flow_count(); ++f) {
      const PairIndex first = net.first_pair(f);
      for (std::size_t k = 0; k + 1 < net.hops(f); ++k) {
        const std::int64_t lhs = state.length(first + k);
        const std::int64_t rhs = state.length(first + k + 1) - 2;
        if (lhs < rhs) violations_.push_back({kind_, first + k, state.slot(), lhs, rhs});
      }
    }
    return;
  }
  const DelayView v = compute_delay_view(net, state);
  for (std::size_t f = 0; f < net.flow_count(); ++f) {
    const PairIndex first = net.first_pair(f);
    const std::size_t h = net.hops(f);
    for (std::size_t k = 0; k < h; ++k) {
      const PairIndex p = first + k;
      const std::int64_t next = k + 1 < h ? v.metric[p + 1] : 0;
      const std::int64_t lhs = v.metric[p];
      const std::int64_t rhs = next - 2 * v.gap[p];
      if (lhs < rhs) violations_.push_back({kind_, p, state.slot(), lhs, rhs});
    }
  }
}

std::vector<Violation> check_invariants(const Network& network, Policy policy, std::span<const QueueState> history) {
  InvariantMonitor m(network, policy);
  for (const QueueState& s : history) m.observe(s);
  return m.violations();
}

}  // namespace bpsim
