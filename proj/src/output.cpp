#include "bpsim/output.hpp"

#include <charconv>
#include <cmath>

namespace bpsim {

using nlohmann::json;

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

// JSON has no infinity; growth ratios may be infinite.
json number_or_string(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

}  // namespace

std::vector<std::string> trace_columns(const Network& network) {
  std::vector<std::string> cols;
  for (const auto& p : network.pairs()) cols.push_back("q_" + std::to_string(p.flow) + "_" + std::to_string(p.hop));
  for (const auto& p : network.pairs()) cols.push_back("w_" + std::to_string(p.flow) + "_" + std::to_string(p.hop));
  return cols;
}

void write_run_csv(std::ostream& out, const Network& network, const RunSummary& summary, const json& provenance) {
  out << "# " << provenance.dump() << '\n';
  out << "slot,total_queue";
  for (const auto& c : trace_columns(network)) out << ',' << c;
  out << '\n';
  const std::size_t n_pairs = network.pair_count();
  for (std::size_t row = 0; row < summary.trace_slots.size(); ++row) {
    const auto t = summary.trace_slots[row];
    out << t << ',' << summary.total_queue[static_cast<std::size_t>(t)];
    for (std::size_t p = 0; p < n_pairs; ++p) out << ',' << summary.queue_traces[p][row];
    for (std::size_t p = 0; p < n_pairs; ++p) out << ',' << summary.hol_traces[p][row];
    out << '\n';
  }
}

json run_summary_json(const Network& network, const RunSummary& summary, const json& provenance,
                      const StabilityThresholds& thresholds) {
  json doc;
  doc["config"] = provenance;
  doc["policy"] = summary.policy;
  doc["horizon"] = summary.horizon;
  doc["seed"] = summary.seed;
  doc["trace_stride"] = summary.trace_stride;
  doc["time_averaged_queue"] = time_averaged_queue(summary);
  auto [second, last] = quarter_means(summary);
  doc["stability"] = {{"second_quarter_mean", second},
                      {"last_quarter_mean", last},
                      {"growth_ratio", number_or_string(growth_ratio(second, last))},
                      {"unstable_ratio", thresholds.unstable_ratio},
                      {"stable_ratio", thresholds.stable_ratio},
                      {"verdict", std::string(to_string(stability_verdict(summary, thresholds)))}};
  json flows = json::array();
  for (std::size_t f = 0; f < network.flow_count(); ++f) {
    json fj;
    fj["id"] = network.flows()[f].id;
    fj["injected"] = summary.injected[f];
    fj["departed"] = summary.departed[f];
    fj["in_network"] = summary.in_network[f];
    if (!summary.delays[f].empty()) {
      const DelayDistribution d = delay_distribution(summary, f);
      fj["delay"] = {{"count", d.count}, {"mean", d.mean}, {"top1", d.top1}, {"top5", d.top5}, {"max", d.max}};
    } else {
      fj["delay"] = nullptr;
    }
    flows.push_back(std::move(fj));
  }
  doc["flows"] = std::move(flows);
  json pairs = json::array();
  for (std::size_t p = 0; p < network.pair_count(); ++p) {
    const auto& lp = network.pairs()[p];
    pairs.push_back({{"flow", lp.flow},
                     {"hop", lp.hop},
                     {"capacity", lp.capacity},
                     {"served", summary.served[p]},
                     {"final_queue", summary.final_queue[p]}});
  }
  doc["pairs"] = std::move(pairs);
  return doc;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepResult>& results, int runs, const json& provenance) {
  out << "# " << provenance.dump() << '\n';
  out << "policy,rho,runs,mean_avg_queue,stderr_avg_queue,growth_ratio,verdict\n";
  for (const SweepResult& r : results) {
    for (const SweepPoint& p : r.points) {
      out << to_string(r.policy) << ',' << format_number(p.rho) << ',' << runs << ',' << format_number(p.mean) << ','
          << format_number(p.stderr_mean) << ',' << format_number(p.growth) << ',' << to_string(p.verdict) << '\n';
    }
  }
}

json sweep_json(const std::vector<SweepResult>& results, const json& provenance) {
  json doc;
  doc["config"] = provenance;
  json policies = json::array();
  for (const SweepResult& r : results) {
    json points = json::array();
    for (const SweepPoint& p : r.points) {
      json verdicts = json::array();
      for (Verdict v : p.run_verdicts) verdicts.push_back(std::string(to_string(v)));
      points.push_back({{"rho", p.rho},
                        {"mean_avg_queue", p.mean},
                        {"stderr_avg_queue", p.stderr_mean},
                        {"run_averages", p.run_averages},
                        {"run_verdicts", verdicts},
                        {"growth_ratio", number_or_string(p.growth)},
                        {"verdict", std::string(to_string(p.verdict))}});
    }
    json first = nullptr;
    if (auto f = first_unstable_rho(r)) first = *f;
    policies.push_back({{"policy", std::string(to_string(r.policy))}, {"first_unstable_rho", first}, {"points", points}});
  }
  doc["results"] = std::move(policies);
  return doc;
}

}  // namespace bpsim
