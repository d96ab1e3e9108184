#include <gtest/gtest.h>

#include <random>

#include "bpsim/errors.hpp"
#include "bpsim/sched.hpp"
#include "support/random_networks.hpp"

using namespace bpsim;
using bpsim::testkit::brute_force_maximal_sets;
using bpsim::testkit::mask_independent;
using bpsim::testkit::random_conflict_graph;

namespace {

ConflictGraph path3() {
  ConflictGraph g(3);
  g.connect(0, 1);
  g.connect(1, 2);
  return g;
}

ConflictGraph triangle() {
  ConflictGraph g(3);
  g.connect(0, 1);
  g.connect(1, 2);
  g.connect(0, 2);
  return g;
}

std::vector<PairIndex> members(const Schedule& s) { return s.members(); }

// Best clamped score over all independent subsets.
Weight oracle_best(const std::vector<Weight>& w, const ConflictGraph& g) {
  Weight best = 0;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << g.size()); ++m) {
    if (!mask_independent(g, m)) continue;
    Weight s = 0;
    for (std::size_t p = 0; p < g.size(); ++p)
      if (m >> p & 1) s += std::max<Weight>(w[p], 0);
    best = std::max(best, s);
  }
  return best;
}

std::vector<Weight> random_weights(std::mt19937_64& rng, std::size_t n, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  std::vector<Weight> w(n);
  for (auto& x : w) x = d(rng);
  return w;
}

}  // namespace

TEST(Catalog, PathAndTriangle) {
  auto c = ScheduleCatalog::enumerate(path3());
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(members(c.schedule(0)), (std::vector<PairIndex>{0, 2}));
  EXPECT_EQ(members(c.schedule(1)), (std::vector<PairIndex>{1}));

  auto t = ScheduleCatalog::enumerate(triangle());
  ASSERT_EQ(t.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(t.schedule(i).active_count(), 1u);
}

TEST(Catalog, EdgelessGraphHasOneScheduleWithEveryPair) {
  auto c = ScheduleCatalog::enumerate(ConflictGraph(5));
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.schedule(0).active_count(), 5u);
}

TEST(Catalog, MatchesBruteForceMaximalSets) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 150; ++i) {
    const std::size_t n = 1 + rng() % 14;
    const double p = std::uniform_real_distribution<double>(0.0, 0.9)(rng);
    ConflictGraph g = random_conflict_graph(rng, n, p);
    auto c = ScheduleCatalog::enumerate(g);
    std::set<std::uint64_t> got(c.masks().begin(), c.masks().end());
    EXPECT_EQ(got.size(), c.size()) << "duplicate schedules";
    EXPECT_EQ(got, brute_force_maximal_sets(g));
  }
}

TEST(Catalog, RefusesInstancesAboveTheCap) {
  try {
    ScheduleCatalog::enumerate(ConflictGraph(33));
    FAIL() << "expected SolverLimitError";
  } catch (const SolverLimitError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("33"), std::string::npos) << msg;
    EXPECT_NE(msg.find("qgms"), std::string::npos) << msg;
  }
  EXPECT_THROW(ScheduleCatalog::enumerate(ConflictGraph(10), 8), SolverLimitError);
  EXPECT_NO_THROW(ScheduleCatalog::enumerate(ConflictGraph(32)));
}

TEST(MaxWeight, Examples) {
  auto c = ScheduleCatalog::enumerate(path3());
  EXPECT_EQ(members(maxweight_select(std::vector<Weight>{3, 1, 2}, c)), (std::vector<PairIndex>{0, 2}));
  EXPECT_EQ(members(maxweight_select(std::vector<Weight>{1, 5, 1}, c)), (std::vector<PairIndex>{1}));
  EXPECT_TRUE(members(maxweight_select(std::vector<Weight>{0, 0, 0}, c)).empty());

  ConflictGraph edge(2);
  edge.connect(0, 1);
  auto ce = ScheduleCatalog::enumerate(edge);
  EXPECT_EQ(members(maxweight_select(std::vector<Weight>{-1, 5}, ce)), (std::vector<PairIndex>{1}));
}

TEST(MaxWeight, TiesGoToTheFirstCatalogEntry) {
  auto c = ScheduleCatalog::enumerate(path3());
  // {0,2} scores 2, {1} scores 2; the catalog lists {0,2} first.
  EXPECT_EQ(members(maxweight_select(std::vector<Weight>{1, 2, 1}, c)), (std::vector<PairIndex>{0, 2}));
}

TEST(MaxWeight, NonPositivePairsAreNeverActivated) {
  auto c = ScheduleCatalog::enumerate(ConflictGraph(3));
  EXPECT_EQ(members(maxweight_select(std::vector<Weight>{4, 0, -2}, c)), (std::vector<PairIndex>{0}));
}

TEST(MaxWeight, EqualsBruteForceOracleOnRandomInstances) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 1 + rng() % 12;
    ConflictGraph g = random_conflict_graph(rng, n, std::uniform_real_distribution<double>(0.1, 0.8)(rng));
    auto w = random_weights(rng, n, -10, 10);
    auto c = ScheduleCatalog::enumerate(g);
    Schedule s = maxweight_select(w, c);
    EXPECT_TRUE(is_feasible(s, g));
    EXPECT_EQ(clamped_score(w, s), oracle_best(w, g));
    EXPECT_EQ(clamped_score(w, brute_force_maxweight(w, g)), oracle_best(w, g));
    for (std::size_t p = 0; p < n; ++p)
      if (w[p] <= 0) EXPECT_FALSE(s.is_active(p));
  }
}

TEST(MaxWeight, ClampingNegativesDoesNotChangeTheDecision) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + rng() % 10;
    ConflictGraph g = random_conflict_graph(rng, n, 0.4);
    auto w = random_weights(rng, n, -10, 10);
    std::vector<Weight> clamped(w);
    for (auto& x : clamped) x = std::max<Weight>(x, 0);
    auto c = ScheduleCatalog::enumerate(g);
    EXPECT_EQ(maxweight_select(w, c), maxweight_select(clamped, c));
  }
}

TEST(Greedy, Examples) {
  EXPECT_EQ(members(greedy_maximal_select(std::vector<Weight>{5, 3, 4}, path3())), (std::vector<PairIndex>{0, 2}));
  EXPECT_EQ(members(greedy_maximal_select(std::vector<Weight>{1, 10, 1}, path3())), (std::vector<PairIndex>{1}));
  EXPECT_TRUE(members(greedy_maximal_select(std::vector<Weight>{0, -3, 0}, path3())).empty());
  // Equal weights: lowest index first.
  EXPECT_EQ(members(greedy_maximal_select(std::vector<Weight>{2, 2, 2}, triangle())), (std::vector<PairIndex>{0}));
}

TEST(Greedy, FeasibleMaximalAndNeverBetterThanExact) {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 1 + rng() % 12;
    ConflictGraph g = random_conflict_graph(rng, n, 0.35);
    auto w = random_weights(rng, n, -10, 10);
    Schedule s = greedy_maximal_select(w, g);
    EXPECT_TRUE(is_feasible(s, g));
    EXPECT_LE(clamped_score(w, s), oracle_best(w, g));
    // Every positive pair left out is blocked by an active neighbour.
    for (std::size_t p = 0; p < n; ++p) {
      if (w[p] <= 0 || s.is_active(p)) continue;
      bool blocked = false;
      for (std::size_t q = 0; q < n; ++q) blocked = blocked || (s.is_active(q) && g.adjacent(p, q));
      EXPECT_TRUE(blocked);
    }
  }
}

TEST(Scheduler, PolicyDispatch) {
  EXPECT_EQ(policy_from_string("dgms"), Policy::dgms);
  EXPECT_FALSE(parse_policy("mw").has_value());
  EXPECT_THROW(policy_from_string("mw"), ConfigError);
  EXPECT_TRUE(uses_delay_weights(Policy::dbp));
  EXPECT_FALSE(uses_delay_weights(Policy::qgms));
  EXPECT_TRUE(is_exact(Policy::qbp));
  EXPECT_FALSE(is_exact(Policy::dgms));

  // Greedy policies work beyond the enumeration cap.
  ConflictGraph big(40);
  EXPECT_THROW(Scheduler(big, Policy::qbp), SolverLimitError);
  Scheduler greedy(big, Policy::qgms);
  EXPECT_EQ(greedy.select(std::vector<Weight>(40, 1)).active_count(), 40u);

  const ConflictGraph g = path3();
  Scheduler exact(g, Policy::dbp);
  EXPECT_EQ(members(exact.select(std::vector<Weight>{1, 5, 1})), (std::vector<PairIndex>{1}));
}
