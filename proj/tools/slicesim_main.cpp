#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "slicesim/eval.hpp"
#include "slicesim/exact_solver.hpp"
#include "slicesim/heuristics.hpp"
#include "slicesim/profiler.hpp"
#include "slicesim/scenario_io.hpp"
#include "slicesim/util.hpp"

namespace fs = std::filesystem;
using namespace slicesim;

namespace {

Scenario resolve_scenario(const std::string& scenario_file, int n_slices, std::uint64_t seed) {
  if (!scenario_file.empty()) return load_scenario_file(scenario_file);
  return generate_scenario(n_slices, seed);
}

void write_placement_csv(const std::string& path, const Scenario& scenario,
                         const SolveResult& result) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << "slice_id,vnf_index,vnf_name,infra\n";
  if (result.placement) {
    for (const auto& req : scenario.requests)
      for (std::size_t v = 0; v < req.vnfs.size(); ++v) {
        auto m = result.placement->infra_of(req.id, static_cast<int>(v));
        os << req.id << "," << v << "," << req.vnfs[v].name << ","
           << (m ? std::to_string(*m) : "") << "\n";
      }
  }
  os << "# cost_per_hour=" << format_double(result.cost) << "\n";
  os << "# rejected_slices=" << result.rejected_slices.size() << "\n";
  os << "# optimal=" << (result.optimal ? "true" : "false") << "\n";
  if (!os) throw std::runtime_error("short write: " + path);
}

int run_solve(const std::string& algorithm, const std::string& scenario_file, int n_slices,
              std::uint64_t seed, const std::string& checkpoints, const std::string& out,
              double time_budget) {
  const Scenario scenario = resolve_scenario(scenario_file, n_slices, seed);
  SolveResult result;
  if (algorithm == "exact") {
    result = solve_exact(scenario, time_budget > 0 ? time_budget
                                                   : std::numeric_limits<double>::infinity());
  } else if (algorithm == "cost") {
    result = place_cost_aware(scenario);
  } else if (algorithm == "perf") {
    result = place_performance_aware(scenario);
  } else if (algorithm == "random") {
    Rng rng(mix_seed(scenario.rng_seed, 0x7A2D0011ULL));
    result = place_random(scenario, rng);
  } else if (algorithm == "balance") {
    result = place_load_balance(scenario);
  } else if (algorithm == "marl" || algorithm == "mono") {
    if (checkpoints.empty()) throw std::runtime_error("--checkpoints required for " + algorithm);
    const bool mono = algorithm == "mono";
    SchedulerBundle bundle = load_bundle(checkpoints, !mono, mono);
    result = place_slices(bundle, scenario,
                          mono ? SchedulerMode::monolithic : SchedulerMode::disaggregated);
  } else {
    throw std::runtime_error("unknown algorithm: " + algorithm);
  }

  if (!out.empty()) write_placement_csv(out, scenario, result);
  std::cout << "algorithm=" << algorithm << " slices=" << scenario.requests.size()
            << " feasible=" << (result.placement ? "yes" : "no")
            << " cost_per_hour=" << format_double(result.cost)
            << " wall_time_s=" << format_double(result.wall_time_s)
            << " nodes=" << result.nodes_explored
            << " rejected=" << result.rejected_slices.size() << "\n";
  return 0;
}

struct AgentJob {
  std::string name;
  std::optional<SliceType> type;  // empty = monolithic
};

int run_train(const std::string& agent, int episodes, std::uint64_t seed,
              const std::string& out_dir, const std::string& optimizer, double gamma_override) {
  std::vector<AgentJob> jobs;
  if (agent == "all") {
    jobs = {{"embb", SliceType::embb},
            {"urllc", SliceType::urllc},
            {"mmtc", SliceType::mmtc},
            {"monolithic", std::nullopt}};
  } else if (agent == "monolithic") {
    jobs = {{"monolithic", std::nullopt}};
  } else {
    jobs = {{agent, slice_type_from_string(agent)}};
  }
  fs::create_directories(out_dir);
  const Catalog catalog = default_catalog();
  const int n_infras = static_cast<int>(catalog.infrastructures.size());

  for (const auto& job : jobs) {
    AgentConfig cfg = job.type ? default_agent_config(*job.type) : default_monolithic_config();
    cfg.episodes = episodes;
    cfg.rng_seed = mix_seed(seed, fnv1a64(job.name));
    // adam by default: plain SGD diverges at the published per-type rates
    if (optimizer == "sgd") cfg.optimizer = Optimizer::sgd;
    else if (optimizer == "adam") cfg.optimizer = Optimizer::adam;
    else throw std::runtime_error("unknown optimizer: " + optimizer);
    if (gamma_override > 0) cfg.discount = gamma_override;

    const SchedulerMode mode =
        job.type ? SchedulerMode::disaggregated : SchedulerMode::monolithic;
    DqnAgent dqn(cfg, state_width_for(mode, n_infras), n_infras);

    TrainOptions topts;
    topts.episodes = episodes;
    topts.master_seed = mix_seed(seed, fnv1a64(job.name), 0x77ULL);
    topts.checkpoint_dir = out_dir;
    topts.name = job.name;

    std::cout << "training " << job.name << " for " << episodes << " episodes" << std::endl;
    const TrainingReport report = train_agent(dqn, catalog, job.type, topts);
    dqn.save((fs::path(out_dir) / (job.name + ".ckpt")).string());

    std::ofstream curve((fs::path(out_dir) / (job.name + "_curve.csv")).string(),
                        std::ios::trunc);
    curve << "episode,reward,loss\n";
    for (std::size_t e = 0; e < report.episodes.size(); ++e)
      curve << e << "," << format_double(report.episodes[e].reward) << ","
            << format_double(report.episodes[e].loss) << "\n";

    double tail = 0.0;
    const std::size_t n = report.episodes.size();
    const std::size_t tail_n = std::min<std::size_t>(100, n);
    for (std::size_t e = n - tail_n; e < n; ++e) tail += report.episodes[e].reward;
    std::cout << "  env_steps=" << report.env_steps
              << " mean_reward_last_" << tail_n << "=" << format_double(tail / tail_n)
              << std::endl;
  }
  return 0;
}

int run_evaluate(const std::string& spec_file, const std::string& checkpoints,
                 const std::string& out_dir) {
  ExperimentSpec spec;
  if (!spec_file.empty()) {
    spec = load_experiment_spec(spec_file);
  } else {
    spec.algorithms = {Algorithm::exact, Algorithm::cost_aware, Algorithm::performance_aware,
                       Algorithm::random_placement, Algorithm::load_balance};
  }
  const bool wants_marl = std::find(spec.algorithms.begin(), spec.algorithms.end(),
                                    Algorithm::marl) != spec.algorithms.end();
  const bool wants_mono = std::find(spec.algorithms.begin(), spec.algorithms.end(),
                                    Algorithm::monolithic) != spec.algorithms.end();
  SchedulerBundle bundle;
  if (wants_marl || wants_mono) {
    if (checkpoints.empty()) throw std::runtime_error("--checkpoints required for RL algorithms");
    bundle = load_bundle(checkpoints, wants_marl, wants_mono);
  }

  const auto rows = run_experiment(spec, &bundle);
  fs::create_directories(out_dir);
  emit_report(rows, (fs::path(out_dir) / "metrics.csv").string(),
              (fs::path(out_dir) / "summary.txt").string());

  std::ofstream sp((fs::path(out_dir) / "speedup.csv").string(), std::ios::trunc);
  sp << "algorithm,slice_count,speedup,lower_bound\n";
  if (std::find(spec.algorithms.begin(), spec.algorithms.end(), Algorithm::exact) !=
      spec.algorithms.end()) {
    for (const auto& s : speedup_table(rows))
      sp << to_string(s.algorithm) << "," << s.slice_count << "," << format_double(s.speedup)
         << "," << (s.lower_bound ? "true" : "false") << "\n";
  }
  std::cout << "wrote " << rows.size() << " rows to " << out_dir << "\n";
  return 0;
}

int run_profile(const std::string& trace, double window, const std::string& out,
                const std::string& slice_type, const std::string& seed_table_out) {
  if (!seed_table_out.empty()) {
    seed_demand_table().save_csv(seed_table_out);
    std::cout << "wrote demand table to " << seed_table_out << "\n";
  }
  if (trace.empty()) return 0;
  const LoadedTrace loaded = load_trace(trace);
  for (const auto& w : loaded.warnings)
    std::cerr << "warning: " << trace << ":" << w.line << ": " << w.message << "\n";
  std::optional<SliceType> type;
  if (!slice_type.empty()) type = slice_type_from_string(slice_type);
  const TrafficProfile profile = profile_trace(loaded.records, window, type);
  save_profile_csv(profile, out);
  std::cout << "packets=" << profile.packet_count
            << " windows=" << profile.packets_per_s.size()
            << " interarrival_mean_us=" << format_double(profile.interarrival_mean_us) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"network slice placement engine and experiment harness"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "place one scenario with a single algorithm");
  std::string algorithm = "exact", scenario_file, checkpoints, out;
  int n_slices = 5;
  std::uint64_t seed = 1;
  double time_budget = 0.0;
  solve->add_option("--algorithm", algorithm,
                    "exact|cost|perf|random|balance|marl|mono")->required();
  solve->add_option("--scenario", scenario_file, "scenario JSON; omit to generate");
  solve->add_option("--slices", n_slices, "generated scenario size");
  solve->add_option("--seed", seed, "generated scenario seed");
  solve->add_option("--checkpoints", checkpoints, "checkpoint directory for marl/mono");
  solve->add_option("--out", out, "placement CSV path");
  solve->add_option("--time-budget", time_budget, "seconds; exact solver only, 0 = uncapped");

  // train
  auto* train = app.add_subcommand("train", "train placement agents");
  std::string agent = "all", train_out = "checkpoints", optimizer = "adam";
  int episodes = 10000;
  std::uint64_t train_seed = 1;
  double gamma_override = 0.0;
  train->add_option("--agent", agent, "embb|urllc|mmtc|monolithic|all");
  train->add_option("--episodes", episodes, "episodes per agent");
  train->add_option("--seed", train_seed, "master seed");
  train->add_option("--out", train_out, "checkpoint directory")->required();
  train->add_option("--optimizer", optimizer, "adam|sgd (sgd diverges at the default rates)");
  train->add_option("--gamma", gamma_override, "override the discount factor");

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "run the experiment matrix");
  std::string spec_file, eval_checkpoints, eval_out = "results";
  evaluate->add_option("--spec", spec_file, "experiment spec JSON");
  evaluate->add_option("--checkpoints", eval_checkpoints, "checkpoint directory");
  evaluate->add_option("--out", eval_out, "output directory")->required();

  // profile
  auto* profile = app.add_subcommand("profile", "profile a packet trace");
  std::string trace, profile_out = "profile.csv", profile_type, seed_table_out;
  double window = 1.0;
  profile->add_option("--trace", trace, "trace CSV");
  profile->add_option("--window", window, "window seconds");
  profile->add_option("--out", profile_out, "profile CSV path");
  profile->add_option("--slice-type", profile_type, "urllc|embb|mmtc tag for the profile");
  profile->add_option("--emit-seed-table", seed_table_out, "write the built-in demand table CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed())
      return run_solve(algorithm, scenario_file, n_slices, seed, checkpoints, out, time_budget);
    if (train->parsed())
      return run_train(agent, episodes, train_seed, train_out, optimizer, gamma_override);
    if (evaluate->parsed()) return run_evaluate(spec_file, eval_checkpoints, eval_out);
    if (profile->parsed())
      return run_profile(trace, window, profile_out, profile_type, seed_table_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
