#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bpsim/model.hpp"

namespace bpsim {

// Everything recorded during one simulation run.
struct RunSummary {
  std::string policy;
  std::int64_t horizon = 0;
  std::uint64_t seed = 0;
  std::int64_t trace_stride = 1;

  // ||Q(t)|| at the start of every slot t in [0, horizon).
  std::vector<std::int64_t> total_queue;

  // Downsampled per-pair traces, one row per recorded slot.
  std::vector<std::int64_t> trace_slots;
  std::vector<std::vector<std::int64_t>> queue_traces;  // [pair][row] Q
  std::vector<std::vector<std::int64_t>> hol_traces;    // [pair][row] W

  // Per flow position: end-to-end delays of departed packets, in departure order.
  std::vector<std::vector<std::int64_t>> delays;
  std::vector<std::int64_t> injected;  // F_s(horizon)
  std::vector<std::int64_t> departed;
  std::vector<std::int64_t> in_network;
  // Per pair: cumulative service F^_{s,k}(horizon) and final queue length.
  std::vector<std::int64_t> served;
  std::vector<std::int64_t> final_queue;
};

// The floor(N*X/100)-th delay counted from zero in descending order,
// clamped to the smallest sample, so the maximum whenever N*X/100 < 1.
// Throws ConfigError on empty input or X <= 0.
std::int64_t top_percent_delay(std::span<const std::int64_t> delays, double percent);

struct Window {
  std::int64_t begin = 0;  // inclusive slot
  std::int64_t end = 0;    // exclusive slot
};

// Mean of ||Q(t)|| over the window. Throws ConfigError if the window is
// empty or leaves the recorded horizon.
double time_averaged_queue(const RunSummary& summary, Window window);
double time_averaged_queue(const RunSummary& summary);

enum class Verdict { stable, unstable, inconclusive };
std::string_view to_string(Verdict v);

struct StabilityThresholds {
  double unstable_ratio = 2.0;
  double stable_ratio = 1.2;
};

// Ratio of the last-quarter to the second-quarter mean of ||Q||; 1 when
// both are zero.
double growth_ratio(double second_quarter_mean, double last_quarter_mean);
Verdict classify_growth(double ratio, const StabilityThresholds& thresholds = {});
std::pair<double, double> quarter_means(const RunSummary& summary);
Verdict stability_verdict(const RunSummary& summary, const StabilityThresholds& thresholds = {});

struct DelayDistribution {
  std::vector<std::pair<std::int64_t, std::int64_t>> histogram;  // (delay, count), ascending delay
  std::int64_t count = 0;
  double mean = 0.0;
  std::int64_t top1 = 0;
  std::int64_t top5 = 0;
  std::int64_t max = 0;
};

DelayDistribution delay_distribution(std::span<const std::int64_t> delays);
// Throws ConfigError when the flow has no departures.
DelayDistribution delay_distribution(const RunSummary& summary, std::size_t flow_position);

}  // namespace bpsim
