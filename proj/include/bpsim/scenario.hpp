#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "bpsim/model.hpp"
#include "bpsim/sched.hpp"

namespace bpsim {

struct FlowConfig {
  FlowId id = 0;
  std::vector<NodeId> route;  // node sequence, source first
  ArrivalSpec arrival = PoissonPerSlot{};

  bool operator==(const FlowConfig&) const = default;
};

struct ScenarioDefaults {
  std::int64_t horizon = 100000;
  std::uint64_t seed = 1;
  Policy policy = Policy::dbp;

  bool operator==(const ScenarioDefaults&) const = default;
};

// Resolved scenario document.
//
//   {
//     "name": "hnet",
//     "nodes": [1, 2, 3],
//     "links": [{"src": 1, "dst": 2, "capacity": 5}, ...],
//     "interference": {"kind": "khop", "k": 2}
//                   | {"kind": "explicit", "conflicts": [[[flow, hop], [flow, hop]], ...]},
//     "flows": [{"id": 1, "route": [1, 2, 3],
//                "arrival": {"kind": "poisson", "rate": 3}
//                         | {"kind": "finite-batch", "mean": 10}
//                         | {"kind": "bursty-file", "p": 0.01, "mean_size": 10}}],
//     "defaults": {"horizon": 100000, "seed": 1, "policy": "dbp"}
//   }
struct Scenario {
  std::string name = "scenario";
  std::vector<NodeId> nodes;
  std::vector<Link> links;
  InterferenceSpec interference = KHopInterference{2};
  std::vector<FlowConfig> flows;
  ScenarioDefaults defaults;

  bool operator==(const Scenario&) const = default;
};

// Field-addressed ConfigError on any malformed or inconsistent entry,
// including routes that fail to build against the declared links.
Scenario parse_scenario(const nlohmann::json& doc);
Scenario parse_scenario_text(const std::string& text);
nlohmann::json to_json(const Scenario& scenario);

std::vector<std::string> builtin_scenario_names();
bool is_builtin_scenario(const std::string& name);
Scenario builtin_scenario(const std::string& name);

// Reads a scenario file, or a built-in when `spec` is "builtin:<name>" or a
// built-in name that is not an existing path.
Scenario load_scenario(const std::string& spec);

Network build_network(const Scenario& scenario);

}  // namespace bpsim
