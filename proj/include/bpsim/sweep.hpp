#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bpsim/engine.hpp"
#include "bpsim/metrics.hpp"

namespace bpsim {

struct SweepOptions {
  Policy policy = Policy::qbp;
  std::vector<double> rhos;
  int runs = 10;
  std::int64_t horizon = 100000;
  // Run r at every load point uses seed + r, so points and policies share
  // arrival randomness.
  std::uint64_t seed = 1;
  StabilityThresholds thresholds;
  std::size_t enumeration_cap = ScheduleCatalog::kDefaultCap;
};

struct SweepPoint {
  double rho = 0.0;
  std::vector<double> run_averages;  // time-averaged ||Q|| per run
  std::vector<Verdict> run_verdicts;
  double mean = 0.0;
  double stderr_mean = 0.0;
  // Growth ratio of the run-averaged last-quarter and second-quarter means.
  double growth = 1.0;
  Verdict verdict = Verdict::stable;
};

struct SweepResult {
  Policy policy = Policy::qbp;
  std::vector<SweepPoint> points;
};

// Copy of the network with every flow's arrival intensity scaled by rho.
Network scaled_network(const Network& network, double rho);

SweepResult sweep(const Network& network, const SweepOptions& options);

// Smallest rho whose aggregate verdict is unstable.
std::optional<double> first_unstable_rho(const SweepResult& result);

}  // namespace bpsim
