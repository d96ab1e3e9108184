#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "bpsim/metrics.hpp"
#include "bpsim/scenario.hpp"
#include "bpsim/sweep.hpp"

namespace bpsim {

// Shortest round-trip decimal form with a '.' separator, independent of locale.
std::string format_number(double v);

// Header labels "q_<flow>_<hop>" and "w_<flow>_<hop>" per pair.
std::vector<std::string> trace_columns(const Network& network);

// Comment line "# <compact json>" followed by the header
// slot,total_queue,q_*...,w_*... and one row per recorded slot.
void write_run_csv(std::ostream& out, const Network& network, const RunSummary& summary,
                   const nlohmann::json& provenance);

nlohmann::json run_summary_json(const Network& network, const RunSummary& summary, const nlohmann::json& provenance,
                                const StabilityThresholds& thresholds = {});

// Header policy,rho,runs,mean_avg_queue,stderr_avg_queue,growth_ratio,verdict.
void write_sweep_csv(std::ostream& out, const std::vector<SweepResult>& results, int runs,
                     const nlohmann::json& provenance);

nlohmann::json sweep_json(const std::vector<SweepResult>& results, const nlohmann::json& provenance);

}  // namespace bpsim
