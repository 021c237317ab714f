#pragma once

#include <limits>
#include <string>
#include <vector>

#include "slicesim/marl.hpp"

namespace slicesim {

enum class Algorithm {
  exact,
  cost_aware,
  performance_aware,
  random_placement,
  load_balance,
  marl,
  monolithic,
};

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);

struct ExperimentSpec {
  std::vector<int> slice_counts = {5, 10, 15};
  int trials = 100;
  std::vector<Algorithm> algorithms;
  std::uint64_t base_seed = 1;
  int latency_samples_per_slice = 1;
  double exact_time_budget_s = std::numeric_limits<double>::infinity();

  void validate() const;
};

struct MetricsRow {
  Algorithm algorithm{};
  int slice_count = 0;
  int trial = 0;
  double cost_per_hour = 0.0;
  double decision_time_s = 0.0;
  double decision_time_parallel_s = 0.0;  // per-agent critical path for marl
  double sla_violation_pct = 0.0;
  std::vector<double> cpu_util_pct;  // per infrastructure
  std::vector<double> mem_util_pct;
  int rejected_slices = 0;
};

// One algorithm on one scenario; the deterministic building block behind
// run_experiment. The random baseline derives its stream from the
// scenario seed.
SolveResult run_algorithm(Algorithm algo, const Scenario& scenario, const SchedulerBundle* bundle,
                          double exact_budget_s, PlacementTiming* timing = nullptr);

// Runs every (algorithm, slice count, trial) cell. All algorithms of one
// trial see the identical scenario, and SLA sampling uses one shared
// standard-normal stream per trial (common random numbers), so
// cross-algorithm comparisons are paired. Trials run in parallel; rows come
// back ordered by (algorithm, slice_count, trial). RL algorithms need their
// checkpoints loaded into `bundle` up front. When `raw_results` is given it
// receives the per-row solver output in row order, e.g. for audits of the
// utilization bookkeeping against the placements that produced it.
std::vector<MetricsRow> run_experiment(const ExperimentSpec& spec, const SchedulerBundle* bundle,
                                       std::vector<SolveResult>* raw_results = nullptr);

struct SpeedupRow {
  Algorithm algorithm{};
  int slice_count = 0;
  double speedup = 0.0;  // mean exact decision time / mean algorithm decision time
  bool lower_bound = false;  // denominator hit the timer resolution
};

std::vector<SpeedupRow> speedup_table(const std::vector<MetricsRow>& rows);

// metrics CSV (stable column order) plus a human-readable per-cell summary;
// byte-identical output for identical rows
void emit_report(const std::vector<MetricsRow>& rows, const std::string& csv_path,
                 const std::string& summary_path);

std::string metrics_csv_header(int n_infras);
std::string metrics_csv_line(const MetricsRow& row);

// scenario seed shared by every algorithm of a trial
std::uint64_t trial_scenario_seed(std::uint64_t base_seed, int slice_count, int trial);

}  // namespace slicesim
