// bpsim: back-pressure scheduling simulator.
//
//   bpsim validate --scenario hnet
//   bpsim run --scenario hnet --policy dbp --horizon 100000 --seed 1 --out out/
//   bpsim sweep --scenario grid4x4 --policies qbp,dbp --rho 0.05:0.6:0.05 --runs 10 --out out/

#include <iostream>

#include "CLI11.hpp"

#include "bpsim/commands.hpp"
#include "bpsim/errors.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolverLimit = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Back-pressure scheduling simulator (Q-BP, D-BP, greedy variants)"};
  app.require_subcommand(1);

  std::string scenario;
  std::string policy;
  std::int64_t horizon = 0;
  std::uint64_t seed = 0;
  std::int64_t stride = 0;
  double rho = 1.0;
  std::string out_dir = ".";

  auto* run = app.add_subcommand("run", "simulate one scenario and write CSV + JSON");
  run->add_option("--scenario", scenario, "scenario file or built-in name (hnet, grid4x4)")->required();
  run->add_option("--policy", policy, "qbp | dbp | qgms | dgms");
  run->add_option("--horizon", horizon, "slots to simulate");
  run->add_option("--seed", seed, "base seed");
  run->add_option("--stride", stride, "trace downsampling stride");
  run->add_option("--rho", rho, "scale every flow's arrival intensity");
  run->add_option("--out", out_dir, "output directory");

  std::string policies = "qbp,dbp";
  std::string rho_list;
  int runs = 10;
  double unstable_ratio = 2.0;
  double stable_ratio = 1.2;
  auto* sweep = app.add_subcommand("sweep", "throughput-region sweep over load scales");
  sweep->add_option("--scenario", scenario, "scenario file or built-in name")->required();
  sweep->add_option("--policies", policies, "comma-separated policies");
  sweep->add_option("--rho", rho_list, "comma list or start:stop:step")->required();
  sweep->add_option("--runs", runs, "independent runs per load point");
  sweep->add_option("--horizon", horizon, "slots per run");
  sweep->add_option("--seed", seed, "base seed; run r uses seed + r");
  sweep->add_option("--unstable-ratio", unstable_ratio, "growth ratio above which a point is unstable");
  sweep->add_option("--stable-ratio", stable_ratio, "growth ratio below which a point is stable");
  sweep->add_option("--out", out_dir, "output directory");

  auto* validate = app.add_subcommand("validate", "check a scenario and report its size");
  validate->add_option("--scenario", scenario, "scenario file or built-in name")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      bpsim::RunRequest req;
      req.scenario = scenario;
      if (!policy.empty()) req.policy = bpsim::policy_from_string(policy);
      if (run->count("--horizon")) req.horizon = horizon;
      if (run->count("--seed")) req.seed = seed;
      if (run->count("--stride")) req.trace_stride = stride;
      req.rho = rho;
      req.out_dir = out_dir;
      auto out = bpsim::cmd_run(req);
      std::cout << "wrote " << out.csv.string() << "\nwrote " << out.json.string() << '\n';
    } else if (sweep->parsed()) {
      bpsim::SweepRequest req;
      req.scenario = scenario;
      req.policies = bpsim::parse_policy_list(policies);
      req.rhos = bpsim::parse_rho_list(rho_list);
      req.runs = runs;
      if (sweep->count("--horizon")) req.horizon = horizon;
      if (sweep->count("--seed")) req.seed = seed;
      req.thresholds = {unstable_ratio, stable_ratio};
      req.out_dir = out_dir;
      auto out = bpsim::cmd_sweep(req);
      std::cout << "wrote " << out.csv.string() << "\nwrote " << out.json.string() << '\n';
    } else if (validate->parsed()) {
      std::cout << bpsim::cmd_validate(scenario).text() << '\n';
    }
  } catch (const bpsim::SolverLimitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolverLimit;
  } catch (const bpsim::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}
