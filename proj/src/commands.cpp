#include "bpsim/commands.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "bpsim/engine.hpp"
#include "bpsim/errors.hpp"
#include "bpsim/output.hpp"
#include "bpsim/scenario.hpp"

namespace bpsim {

using nlohmann::json;

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  return out;
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir.string() + "': " + ec.message());
}

}  // namespace

RunOutputs cmd_run(const RunRequest& req) {
  const Scenario scenario = load_scenario(req.scenario);
  const Policy policy = req.policy.value_or(scenario.defaults.policy);
  RunOptions opts;
  opts.horizon = req.horizon.value_or(scenario.defaults.horizon);
  opts.seed = req.seed.value_or(scenario.defaults.seed);
  if (opts.horizon < 1) throw ConfigError("--horizon must be >= 1");
  opts.trace_stride = req.trace_stride.value_or(std::max<std::int64_t>(1, (opts.horizon + 99999) / 100000));

  Network network = build_network(scenario);
  if (req.rho != 1.0) network = scaled_network(network, req.rho);

  RunOutputs out;
  out.summary = run(network, policy, opts);

  json provenance = {{"command", "run"},
                     {"scenario", to_json(scenario)},
                     {"policy", std::string(to_string(policy))},
                     {"horizon", opts.horizon},
                     {"seed", opts.seed},
                     {"rho", req.rho},
                     {"trace_stride", opts.trace_stride}};

  ensure_dir(req.out_dir);
  const std::string stem = scenario.name + "_" + std::string(to_string(policy)) + "_seed" + std::to_string(opts.seed);
  out.csv = req.out_dir / (stem + ".csv");
  out.json = req.out_dir / (stem + ".json");
  {
    auto f = open_output(out.csv);
    write_run_csv(f, network, out.summary, provenance);
  }
  {
    auto f = open_output(out.json);
    f << run_summary_json(network, out.summary, provenance).dump(2) << '\n';
  }
  return out;
}

SweepOutputs cmd_sweep(const SweepRequest& req) {
  const Scenario scenario = load_scenario(req.scenario);
  if (req.policies.empty()) throw ConfigError("--policies must name at least one policy");
  const Network network = build_network(scenario);

  SweepOptions opts;
  opts.rhos = req.rhos;
  opts.runs = req.runs;
  opts.horizon = req.horizon.value_or(scenario.defaults.horizon);
  opts.seed = req.seed.value_or(scenario.defaults.seed);
  opts.thresholds = req.thresholds;

  SweepOutputs out;
  for (Policy p : req.policies) {
    opts.policy = p;
    out.results.push_back(sweep(network, opts));
  }

  json policies = json::array();
  for (Policy p : req.policies) policies.push_back(std::string(to_string(p)));
  json provenance = {{"command", "sweep"},
                     {"scenario", to_json(scenario)},
                     {"policies", policies},
                     {"rho", req.rhos},
                     {"runs", req.runs},
                     {"horizon", opts.horizon},
                     {"seed", opts.seed},
                     {"unstable_ratio", req.thresholds.unstable_ratio},
                     {"stable_ratio", req.thresholds.stable_ratio}};

  ensure_dir(req.out_dir);
  out.csv = req.out_dir / (scenario.name + "_sweep.csv");
  out.json = req.out_dir / (scenario.name + "_sweep.json");
  {
    auto f = open_output(out.csv);
    write_sweep_csv(f, out.results, req.runs, provenance);
  }
  {
    auto f = open_output(out.json);
    f << sweep_json(out.results, provenance).dump(2) << '\n';
  }
  return out;
}

std::string ValidationReport::text() const {
  std::ostringstream os;
  os << "scenario " << name << ": " << nodes << " nodes, " << links << " links, " << flows << " flows, " << pairs
     << " link-flow pairs, " << conflict_edges << " conflict edges, ";
  if (maximal_schedules) {
    os << *maximal_schedules << " maximal schedules";
  } else {
    os << "greedy-only (more than " << ScheduleCatalog::kDefaultCap << " pairs)";
  }
  return os.str();
}

ValidationReport cmd_validate(const std::string& spec) {
  const Scenario scenario = load_scenario(spec);
  const Network network = build_network(scenario);
  ValidationReport r;
  r.name = scenario.name;
  r.nodes = network.topology().nodes().size();
  r.links = network.topology().links().size();
  r.flows = network.flow_count();
  r.pairs = network.pair_count();
  r.conflict_edges = network.conflicts().edge_count();
  if (network.pair_count() <= ScheduleCatalog::kDefaultCap) {
    r.maximal_schedules = ScheduleCatalog::enumerate(network.conflicts()).size();
  }
  return r;
}

std::vector<double> parse_rho_list(const std::string& text) {
  auto to_double = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw ConfigError("--rho: '" + s + "' is not a number");
    }
    if (used != s.size() || !std::isfinite(v) || v < 0) throw ConfigError("--rho: invalid value '" + s + "'");
    return v;
  };
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 3) throw ConfigError("--rho: range form is start:stop:step");
    const double start = to_double(parts[0]);
    const double stop = to_double(parts[1]);
    const double stepv = to_double(parts[2]);
    if (stepv <= 0 || stop < start) throw ConfigError("--rho: empty range");
    const auto n = static_cast<long>(std::floor((stop - start) / stepv + 1e-9));
    for (long i = 0; i <= n; ++i) {
      // Round to 1e-9 so the grid prints as typed (0.15, not 0.15000000000000002).
      out.push_back(std::round((start + static_cast<double>(i) * stepv) * 1e9) / 1e9);
    }
    return out;
  }
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(to_double(item));
  if (out.empty()) throw ConfigError("--rho: empty list");
  return out;
}

std::vector<Policy> parse_policy_list(const std::string& text) {
  std::vector<Policy> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(policy_from_string(item));
  if (out.empty()) throw ConfigError("--policies: empty list");
  return out;
}

}  // namespace bpsim
