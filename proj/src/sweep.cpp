#include "bpsim/sweep.hpp"

#include <cmath>

#include "bpsim/errors.hpp"

namespace bpsim {

Network scaled_network(const Network& network, double rho) {
  std::vector<Flow> flows = network.flows();
  for (Flow& f : flows) f.arrival = scaled(f.arrival, rho);
  // The conflict graph is reused verbatim so explicit interference survives.
  ExplicitInterference same;
  for (const auto& [a, b] : network.conflicts().edges()) {
    const auto& pa = network.pairs()[a];
    const auto& pb = network.pairs()[b];
    same.conflicts.push_back({{pa.flow, pa.hop}, {pb.flow, pb.hop}});
  }
  return Network(network.topology(), std::move(flows), same);
}

SweepResult sweep(const Network& network, const SweepOptions& options) {
  if (options.rhos.empty()) throw ConfigError("sweep: empty load grid");
  if (options.runs < 1) throw ConfigError("sweep: runs must be >= 1");
  SweepResult result;
  result.policy = options.policy;
  for (double rho : options.rhos) {
    const Network scaled = scaled_network(network, rho);
    SweepPoint point;
    point.rho = rho;
    double second_sum = 0.0;
    double last_sum = 0.0;
    for (int r = 0; r < options.runs; ++r) {
      RunOptions ro;
      ro.horizon = options.horizon;
      ro.seed = options.seed + static_cast<std::uint64_t>(r);
      ro.trace_stride = options.horizon;
      ro.enumeration_cap = options.enumeration_cap;
      const RunSummary s = run(scaled, options.policy, ro);
      point.run_averages.push_back(time_averaged_queue(s));
      point.run_verdicts.push_back(stability_verdict(s, options.thresholds));
      auto [second, last] = quarter_means(s);
      second_sum += second;
      last_sum += last;
    }
    const double n = static_cast<double>(options.runs);
    double sum = 0.0;
    for (double v : point.run_averages) sum += v;
    point.mean = sum / n;
    if (options.runs > 1) {
      double ss = 0.0;
      for (double v : point.run_averages) ss += (v - point.mean) * (v - point.mean);
      point.stderr_mean = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    }
    point.growth = growth_ratio(second_sum / n, last_sum / n);
    point.verdict = classify_growth(point.growth, options.thresholds);
    result.points.push_back(std::move(point));
  }
  return result;
}

std::optional<double> first_unstable_rho(const SweepResult& result) {
  for (const SweepPoint& p : result.points) {
    if (p.verdict == Verdict::unstable) return p.rho;
  }
  return std::nullopt;
}

}  // namespace bpsim
