#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bpsim/metrics.hpp"
#include "bpsim/sched.hpp"
#include "bpsim/sweep.hpp"

namespace bpsim {

struct RunRequest {
  std::string scenario;
  std::optional<Policy> policy;          // scenario default when unset
  std::optional<std::int64_t> horizon;   // scenario default when unset
  std::optional<std::uint64_t> seed;     // scenario default when unset
  std::optional<std::int64_t> trace_stride;  // ceil(horizon / 1e5) when unset
  double rho = 1.0;
  std::filesystem::path out_dir = ".";
};

struct RunOutputs {
  std::filesystem::path csv;
  std::filesystem::path json;
  RunSummary summary;
};

// Simulates one scenario and writes <name>_<policy>_seed<seed>.{csv,json}.
RunOutputs cmd_run(const RunRequest& request);

struct SweepRequest {
  std::string scenario;
  std::vector<Policy> policies;
  std::vector<double> rhos;
  int runs = 10;
  std::optional<std::int64_t> horizon;
  std::optional<std::uint64_t> seed;
  StabilityThresholds thresholds;
  std::filesystem::path out_dir = ".";
};

struct SweepOutputs {
  std::filesystem::path csv;
  std::filesystem::path json;
  std::vector<SweepResult> results;
};

// Writes <name>_sweep.{csv,json}, one CSV row per (policy, rho).
SweepOutputs cmd_sweep(const SweepRequest& request);

struct ValidationReport {
  std::string name;
  std::size_t nodes = 0;
  std::size_t links = 0;
  std::size_t flows = 0;
  std::size_t pairs = 0;
  std::size_t conflict_edges = 0;
  std::optional<std::size_t> maximal_schedules;  // nullopt: greedy only
  std::string text() const;
};

ValidationReport cmd_validate(const std::string& scenario);

// Parses "0.1,0.2" or "start:stop:step" (inclusive stop).
std::vector<double> parse_rho_list(const std::string& text);
std::vector<Policy> parse_policy_list(const std::string& text);

}  // namespace bpsim
