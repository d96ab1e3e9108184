#include <gtest/gtest.h>

#include <random>

#include "bpsim/engine.hpp"
#include "bpsim/errors.hpp"
#include "bpsim/invariants.hpp"
#include "support/oracles.hpp"
#include "support/random_networks.hpp"

using namespace bpsim;
using bpsim::testkit::ReferenceTracker;

namespace {

// One flow over `hops` links of a line 1 -> 2 -> ... with the given capacity.
Network line(std::size_t hops, int capacity, ArrivalSpec arrival = PoissonPerSlot{0.0}, int k = 1) {
  std::vector<NodeId> nodes;
  std::vector<Link> links;
  for (int i = 1; i <= static_cast<int>(hops) + 1; ++i) nodes.push_back(i);
  for (int i = 1; i <= static_cast<int>(hops); ++i) links.push_back({i, i + 1, capacity});
  Topology topo(nodes, links);
  std::vector<LinkIndex> route;
  for (std::size_t i = 0; i < hops; ++i) route.push_back(i);
  return Network(topo, {Flow{1, route, arrival}}, KHopInterference{k});
}

void fill(QueueState& s, PairIndex p, std::initializer_list<std::int64_t> entries) {
  for (auto e : entries) s.mutable_queue(p).push_back({1, e});
}

}  // namespace

TEST(Weights, QueueDifferential) {
  Network net = line(2, 1);
  QueueState s(net);
  fill(s, 0, {0, 0, 0, 0, 0});
  fill(s, 1, {0, 0, 0});
  EXPECT_EQ(compute_qbp_weights(net, s), (WeightVector{2, 3}));

  QueueState e(net);
  fill(e, 1, {0, 0, 0, 0});
  EXPECT_EQ(compute_qbp_weights(net, e), (WeightVector{-4, 4}));

  Network one = line(1, 1);
  QueueState o(one);
  fill(o, 0, {0, 0, 0, 0, 0, 0, 0});
  EXPECT_EQ(compute_qbp_weights(one, o), (WeightVector{7}));
}

TEST(Weights, DelayViewWithInheritance) {
  Network net = line(2, 1);
  {
    // HOL at hop 1 entered 8 slots ago, hop 2 empty and inherits it.
    QueueState s(net);
    s.set_slot(10);
    fill(s, 0, {2});
    const DelayView v = compute_delay_view(net, s);
    EXPECT_EQ(v.sojourn, (std::vector<std::int64_t>{8, 8}));
    EXPECT_EQ(v.metric, (std::vector<std::int64_t>{8, 0}));
    EXPECT_EQ(v.differential, (std::vector<std::int64_t>{8, 0}));
  }
  {
    QueueState s(net);
    s.set_slot(10);
    fill(s, 0, {2});
    fill(s, 1, {0});
    const DelayView v = compute_delay_view(net, s);
    EXPECT_EQ(v.sojourn, (std::vector<std::int64_t>{8, 10}));
    EXPECT_EQ(v.metric, (std::vector<std::int64_t>{8, 2}));
    EXPECT_EQ(v.differential, (std::vector<std::int64_t>{6, 2}));
    EXPECT_EQ(compute_weights(net, s, Policy::dbp), (WeightVector{6, 2}));
    EXPECT_EQ(compute_weights(net, s, Policy::qbp), (WeightVector{0, 1}));
  }
  {
    QueueState s(net);
    s.set_slot(10);
    const DelayView v = compute_delay_view(net, s);
    EXPECT_EQ(v.sojourn, (std::vector<std::int64_t>{0, 0}));
    EXPECT_EQ(v.differential, (std::vector<std::int64_t>{0, 0}));
    EXPECT_EQ(v.gap, (std::vector<std::int64_t>{0, 0}));
  }
}

TEST(Weights, DelayViewMatchesReference) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 40; ++i) {
    Network net = testkit::random_network(rng);
    RunOptions o;
    o.horizon = 300;
    o.seed = static_cast<std::uint64_t>(i);
    std::vector<std::optional<std::int64_t>> last(net.pair_count());
    o.on_slot_start = [&](const QueueState& s) {
      const DelayView v = compute_delay_view(net, s);
      const auto r = testkit::reference_delay(net, s, last);
      for (PairIndex p = 0; p < net.pair_count(); ++p) {
        ASSERT_EQ(s.last_served_entry(p), last[p]);
        ASSERT_EQ(v.sojourn[p], r.W[p]);
        ASSERT_EQ(v.metric[p], r.What[p]);
        ASSERT_EQ(v.gap[p], r.B[p]);
      }
    };
    o.on_slot_end = [&](const QueueState& s, const SlotDecision&) {
      for (PairIndex p = 0; p < net.pair_count(); ++p) last[p] = s.last_served_entry(p);
    };
    run(net, Policy::dbp, o);
  }
}

TEST(Step, ForwardsOnePacketAndInjectsArrivals) {
  Network net = line(2, 1);
  Scheduler sched(net.conflicts(), Policy::qbp);
  QueueState s(net);
  fill(s, 0, {0, 0});
  const std::vector<std::int64_t> arrivals{1};
  const SlotDecision d = step(net, sched, s, arrivals);
  EXPECT_EQ(d.service, (std::vector<std::int64_t>{1, 0}));
  EXPECT_EQ(s.lengths(), (std::vector<std::int64_t>{2, 1}));
  EXPECT_EQ(s.slot(), 1);
  EXPECT_EQ(s.queue(0).back().entry_slot, 0);
}

TEST(Step, ServiceCappedByQueueLength) {
  Network net = line(1, 3);
  Scheduler sched(net.conflicts(), Policy::qbp);
  QueueState s(net);
  fill(s, 0, {0, 0});
  s.set_slot(4);
  const SlotDecision d = step(net, sched, s, std::vector<std::int64_t>{0});
  EXPECT_EQ(d.service, (std::vector<std::int64_t>{2}));
  ASSERT_EQ(d.departures.size(), 2u);
  EXPECT_EQ(d.departures[0].delay, 5);
  EXPECT_EQ(s.total_length(), 0);
}

TEST(Step, DelayCountsToTheEndOfTheServingSlot) {
  // Arrives during slot 0, first visible at slot 1, leaves at the end of slot 1.
  Network net = line(1, 1);
  Scheduler sched(net.conflicts(), Policy::dbp);
  QueueState s(net);
  step(net, sched, s, std::vector<std::int64_t>{1});
  const SlotDecision d = step(net, sched, s, std::vector<std::int64_t>{0});
  ASSERT_EQ(d.departures.size(), 1u);
  EXPECT_EQ(d.departures[0].delay, 2);
}

TEST(Step, RejectsWrongArrivalVector) {
  Network net = line(1, 1);
  Scheduler sched(net.conflicts(), Policy::qbp);
  QueueState s(net);
  EXPECT_THROW(step(net, sched, s, std::vector<std::int64_t>{}), ConfigError);
}

TEST(Run, SingleLinkThroughput) {
  Network net = line(1, 1, PoissonPerSlot{0.5});
  RunOptions o;
  o.horizon = 1000000;
  o.seed = 3;
  o.trace_stride = o.horizon;
  const RunSummary s = run(net, Policy::qbp, o);
  const double rate = static_cast<double>(s.departed[0]) / static_cast<double>(o.horizon);
  EXPECT_NEAR(rate, 0.5, 0.005);
  EXPECT_EQ(s.injected[0], s.departed[0] + s.in_network[0]);
}

TEST(Run, NoArrivalsMeansNothingHappens) {
  Network net = line(3, 1);
  RunOptions o;
  o.horizon = 500;
  const RunSummary s = run(net, Policy::dbp, o);
  EXPECT_EQ(s.injected[0], 0);
  EXPECT_EQ(s.departed[0], 0);
  for (auto q : s.total_queue) EXPECT_EQ(q, 0);
  for (auto w : s.hol_traces[2]) EXPECT_EQ(w, 0);
}

TEST(Run, RecursionConservationAndFifoOnRandomScenarios) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 40; ++i) {
    InterferenceSpec intf;
    Network net = testkit::random_network(rng, {}, &intf);
    for (Policy pol : {Policy::qbp, Policy::dbp, Policy::qgms, Policy::dgms}) {
      ReferenceTracker tr(net, testkit::oracle_conflicts(net, intf));
      RunOptions o;
      o.horizon = 1000;
      o.seed = static_cast<std::uint64_t>(i);
      const RunSummary s = run(net, pol, tr.hook(o));
      EXPECT_TRUE(tr.ok()) << to_string(pol) << " " << tr.first_failure();
      EXPECT_EQ(tr.slots(), o.horizon);
      EXPECT_EQ(s.injected, tr.injected());
      EXPECT_EQ(s.departed, tr.departed());
    }
  }
}

TEST(Run, SameSeedSameRun) {
  Network net = line(3, 1, BurstyFile{0.1, 3.0});
  RunOptions o;
  o.horizon = 5000;
  o.seed = 99;
  const RunSummary a = run(net, Policy::dbp, o);
  const RunSummary b = run(net, Policy::dbp, o);
  EXPECT_EQ(a.total_queue, b.total_queue);
  EXPECT_EQ(a.delays, b.delays);
  o.seed = 100;
  EXPECT_NE(run(net, Policy::dbp, o).total_queue, a.total_queue);
}

TEST(Run, TraceStrideDownsamples) {
  Network net = line(2, 1, PoissonPerSlot{0.3});
  RunOptions o;
  o.horizon = 100;
  o.trace_stride = 30;
  const RunSummary s = run(net, Policy::qbp, o);
  EXPECT_EQ(s.trace_slots, (std::vector<std::int64_t>{0, 30, 60, 90}));
  EXPECT_EQ(s.queue_traces[0].size(), 4u);
  EXPECT_EQ(s.total_queue.size(), 100u);
  o.trace_stride = 0;
  EXPECT_THROW(run(net, Policy::qbp, o), ConfigError);
}

TEST(Monitor, HoldsOnRandomUnitCapacityRuns) {
  std::mt19937_64 rng(13);
  testkit::RandomNetworkParams prm;
  prm.max_capacity = 1;
  for (int i = 0; i < 30; ++i) {
    Network net = testkit::random_network(rng, prm);
    for (Policy pol : {Policy::qbp, Policy::dbp}) {
      InvariantMonitor mon(net, pol);
      RunOptions o;
      o.horizon = 2000;
      o.seed = static_cast<std::uint64_t>(i);
      o.on_slot_start = [&](const QueueState& s) { mon.observe(s); };
      run(net, pol, o);
      EXPECT_EQ(mon.states_checked(), o.horizon);
      EXPECT_TRUE(mon.violations().empty()) << to_string(pol) << " scenario " << i;
    }
  }
}

TEST(Monitor, DetectsPlantedViolations) {
  Network net = line(2, 1);
  QueueState q(net);
  fill(q, 1, {0, 0, 0, 0, 0});
  InvariantMonitor qm(net, Policy::qbp);
  qm.observe(q);
  ASSERT_EQ(qm.violations().size(), 1u);
  EXPECT_EQ(qm.violations()[0].pair, 0u);
  EXPECT_EQ(qm.violations()[0].lhs, 0);
  EXPECT_EQ(qm.violations()[0].rhs, 3);

  // What = [1, 9] with B_1 = 0.
  QueueState d(net);
  d.set_slot(10);
  fill(d, 0, {9});
  fill(d, 1, {0});
  d.set_last_served_entry(0, 9);
  InvariantMonitor dm(net, Policy::dbp);
  dm.observe(d);
  ASSERT_EQ(dm.violations().size(), 1u);
  EXPECT_EQ(dm.violations()[0].kind, InvariantKind::delay_differential);

  std::vector<QueueState> history{q, d};
  EXPECT_EQ(check_invariants(net, Policy::qbp, history).size(), 1u);
}

TEST(Monitor, RefusesNonUnitCapacity) { EXPECT_THROW(InvariantMonitor(line(2, 2), Policy::dbp), ConfigError); }
