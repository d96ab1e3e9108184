#include "bpsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "bpsim/errors.hpp"

namespace bpsim {

std::int64_t top_percent_delay(std::span<const std::int64_t> delays, double percent) {
  if (delays.empty()) throw ConfigError("top_percent_delay: no delay samples");
  if (!(percent > 0.0)) throw ConfigError("top_percent_delay: percent must be positive");
  const auto n = static_cast<long double>(delays.size());
  const auto rank = static_cast<std::size_t>(std::floor(n * static_cast<long double>(percent) / 100.0L));
  const std::size_t index = std::min(rank, delays.size() - 1);
  std::vector<std::int64_t> sorted(delays.begin(), delays.end());
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(index), sorted.end(),
                   std::greater<>());
  return sorted[index];
}

double time_averaged_queue(const RunSummary& summary, Window window) {
  const auto recorded = static_cast<std::int64_t>(summary.total_queue.size());
  if (window.begin >= window.end) throw ConfigError("time_averaged_queue: empty window");
  if (window.begin < 0 || window.end > recorded) throw ConfigError("time_averaged_queue: window outside the horizon");
  long double sum = 0;
  for (std::int64_t t = window.begin; t < window.end; ++t) sum += summary.total_queue[static_cast<std::size_t>(t)];
  return static_cast<double>(sum / static_cast<long double>(window.end - window.begin));
}

double time_averaged_queue(const RunSummary& summary) {
  return time_averaged_queue(summary, {0, static_cast<std::int64_t>(summary.total_queue.size())});
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::stable: return "stable";
    case Verdict::unstable: return "unstable";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

double growth_ratio(double second_quarter_mean, double last_quarter_mean) {
  if (second_quarter_mean == 0.0) {
    return last_quarter_mean == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  }
  return last_quarter_mean / second_quarter_mean;
}

Verdict classify_growth(double ratio, const StabilityThresholds& thresholds) {
  if (ratio > thresholds.unstable_ratio) return Verdict::unstable;
  if (ratio < thresholds.stable_ratio) return Verdict::stable;
  return Verdict::inconclusive;
}

std::pair<double, double> quarter_means(const RunSummary& summary) {
  const auto n = static_cast<std::int64_t>(summary.total_queue.size());
  if (n < 4) throw ConfigError("stability verdict needs a horizon of at least 4 slots");
  const std::int64_t q = n / 4;
  double second = time_averaged_queue(summary, {q, 2 * q});
  double last = time_averaged_queue(summary, {n - q, n});
  return {second, last};
}

Verdict stability_verdict(const RunSummary& summary, const StabilityThresholds& thresholds) {
  auto [second, last] = quarter_means(summary);
  return classify_growth(growth_ratio(second, last), thresholds);
}

DelayDistribution delay_distribution(std::span<const std::int64_t> delays) {
  if (delays.empty()) throw ConfigError("delay_distribution: no departures");
  DelayDistribution d;
  std::map<std::int64_t, std::int64_t> hist;
  long double sum = 0;
  for (std::int64_t x : delays) {
    ++hist[x];
    sum += x;
  }
  d.histogram.assign(hist.begin(), hist.end());
  d.count = static_cast<std::int64_t>(delays.size());
  d.mean = static_cast<double>(sum / static_cast<long double>(delays.size()));
  d.top1 = top_percent_delay(delays, 1.0);
  d.top5 = top_percent_delay(delays, 5.0);
  d.max = hist.rbegin()->first;
  return d;
}

DelayDistribution delay_distribution(const RunSummary& summary, std::size_t flow_position) {
  if (flow_position >= summary.delays.size()) throw ConfigError("delay_distribution: unknown flow");
  if (summary.delays[flow_position].empty()) {
    throw ConfigError("delay_distribution: flow at position " + std::to_string(flow_position) + " has no departures");
  }
  return delay_distribution(summary.delays[flow_position]);
}

}  // namespace bpsim
