#include "slicesim/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "slicesim/exact_solver.hpp"
#include "slicesim/heuristics.hpp"
#include "slicesim/util.hpp"

namespace slicesim {

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::exact: return "exact";
    case Algorithm::cost_aware: return "cost";
    case Algorithm::performance_aware: return "perf";
    case Algorithm::random_placement: return "random";
    case Algorithm::load_balance: return "balance";
    case Algorithm::marl: return "marl";
    case Algorithm::monolithic: return "mono";
  }
  throw std::logic_error("bad Algorithm");
}

Algorithm algorithm_from_string(const std::string& s) {
  if (s == "exact") return Algorithm::exact;
  if (s == "cost") return Algorithm::cost_aware;
  if (s == "perf") return Algorithm::performance_aware;
  if (s == "random") return Algorithm::random_placement;
  if (s == "balance") return Algorithm::load_balance;
  if (s == "marl") return Algorithm::marl;
  if (s == "mono" || s == "monolithic") return Algorithm::monolithic;
  throw std::invalid_argument("unknown algorithm: " + s);
}

void ExperimentSpec::validate() const {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (algorithms.empty()) throw std::invalid_argument("no algorithms requested");
  if (slice_counts.empty()) throw std::invalid_argument("no slice counts requested");
  if (latency_samples_per_slice < 1)
    throw std::invalid_argument("latency_samples_per_slice must be at least 1");
}

std::uint64_t trial_scenario_seed(std::uint64_t base_seed, int slice_count, int trial) {
  return mix_seed(base_seed, 0x5CE7A210ULL + static_cast<std::uint64_t>(slice_count),
                  static_cast<std::uint64_t>(trial));
}

namespace {

// Chain hops of a request in chain order: (infra of v_i, infra of v_i+1)
// pairs are resolved against a placement later; here we only need the VNF
// indices and the chain tail.
std::vector<int> user_chain(const SliceRequest& req) {
  std::vector<int> chain;
  for (int ci = 0;; ++ci) {
    int found = -1;
    for (std::size_t v = 0; v < req.vnfs.size(); ++v)
      if (req.vnfs[v].plane == Plane::user && req.vnfs[v].chain_index == ci)
        found = static_cast<int>(v);
    if (found < 0) break;
    chain.push_back(found);
  }
  return chain;
}

struct TrialDraws {
  // z[slice][sample][hop]
  std::vector<std::vector<std::vector<double>>> z;
};

TrialDraws draw_trial_noise(const Scenario& scenario, int samples, Rng& rng) {
  TrialDraws d;
  d.z.resize(scenario.requests.size());
  for (std::size_t r = 0; r < scenario.requests.size(); ++r) {
    const auto chain = user_chain(scenario.requests[r]);
    const std::size_t hops = chain.empty() ? 0 : chain.size() - 1;
    d.z[r].resize(static_cast<std::size_t>(samples));
    for (int s = 0; s < samples; ++s) {
      d.z[r][s].resize(hops);
      for (std::size_t h = 0; h < hops; ++h) d.z[r][s][h] = rng.gaussian();
    }
  }
  return d;
}

MetricsRow make_row(Algorithm algo, int slice_count, int trial, const Scenario& scenario,
                    const SolveResult& result, double decision_parallel_s,
                    const TrialDraws& draws, int samples) {
  MetricsRow row;
  row.algorithm = algo;
  row.slice_count = slice_count;
  row.trial = trial;
  row.decision_time_s = result.wall_time_s;
  row.decision_time_parallel_s = decision_parallel_s;

  const int n_infras = static_cast<int>(scenario.infrastructures.size());
  row.cpu_util_pct.assign(n_infras, 0.0);
  row.mem_util_pct.assign(n_infras, 0.0);

  if (!result.placement) {
    row.rejected_slices = static_cast<int>(scenario.requests.size());
    return row;
  }
  const Placement& p = *result.placement;
  row.cost_per_hour = result.cost;
  row.rejected_slices = static_cast<int>(result.rejected_slices.size());

  // canonical per-infrastructure sums; the conservation and capacity
  // properties are hard invariants of every row
  std::vector<double> used_cpu(n_infras, 0.0), used_mem(n_infras, 0.0);
  int placed_slices = 0, violations = 0;
  for (std::size_t r = 0; r < scenario.requests.size(); ++r) {
    const auto& req = scenario.requests[r];
    bool all = true;
    for (std::size_t v = 0; v < req.vnfs.size(); ++v) {
      auto m = p.infra_of(req.id, static_cast<int>(v));
      if (!m) {
        all = false;
        continue;
      }
      used_cpu[*m] += req.vnfs[v].cpu_demand;
      used_mem[*m] += req.vnfs[v].mem_demand;
    }
    if (!all) continue;
    ++placed_slices;

    const auto chain = user_chain(req);
    if (chain.empty()) continue;
    for (int s = 0; s < samples; ++s) {
      double lat = 0.0;
      for (std::size_t h = 0; h + 1 < chain.size(); ++h) {
        const int a = *p.infra_of(req.id, chain[h]);
        const int b = *p.infra_of(req.id, chain[h + 1]);
        const double mu = scenario.latency_model.mean(a, b);
        const double sigma = scenario.latency_model.stddev(a, b);
        lat += std::max(mu + sigma * draws.z[r][s][h], 0.0);
      }
      const int tail = *p.infra_of(req.id, chain.back());
      lat += scenario.infrastructures[tail].dn_latency_ms;
      if (!(lat < req.latency_budget_ms)) ++violations;
    }
  }
  for (int m = 0; m < n_infras; ++m) {
    const auto& infra = scenario.infrastructures[m];
    if (used_cpu[m] > infra.cpu_capacity || used_mem[m] > infra.mem_capacity)
      throw std::logic_error("placement exceeds capacity on infrastructure " + std::to_string(m));
    row.cpu_util_pct[m] = 100.0 * used_cpu[m] / infra.cpu_capacity;
    row.mem_util_pct[m] = 100.0 * used_mem[m] / infra.mem_capacity;
  }
  if (placed_slices > 0)
    row.sla_violation_pct = 100.0 * violations / (static_cast<double>(placed_slices) * samples);
  return row;
}

}  // namespace

SolveResult run_algorithm(Algorithm algo, const Scenario& scenario, const SchedulerBundle* bundle,
                          double exact_budget_s, PlacementTiming* timing) {
  SolveResult result;
  PlacementTiming local;
  switch (algo) {
    case Algorithm::exact:
      result = solve_exact(scenario, exact_budget_s);
      break;
    case Algorithm::cost_aware:
      result = place_cost_aware(scenario);
      break;
    case Algorithm::performance_aware:
      result = place_performance_aware(scenario);
      break;
    case Algorithm::random_placement: {
      Rng rng(mix_seed(scenario.rng_seed, 0x7A2D0011ULL));
      result = place_random(scenario, rng);
      break;
    }
    case Algorithm::load_balance:
      result = place_load_balance(scenario);
      break;
    case Algorithm::marl:
      result = place_slices(*bundle, scenario, SchedulerMode::disaggregated, &local);
      break;
    case Algorithm::monolithic:
      result = place_slices(*bundle, scenario, SchedulerMode::monolithic, &local);
      break;
  }
  if (algo != Algorithm::marl && algo != Algorithm::monolithic) {
    local.sequential_s = result.wall_time_s;
    local.per_type_parallel_s = result.wall_time_s;
  }
  if (timing != nullptr) *timing = local;
  return result;
}

std::vector<MetricsRow> run_experiment(const ExperimentSpec& spec, const SchedulerBundle* bundle,
                                       std::vector<SolveResult>* raw_results) {
  spec.validate();
  const bool wants_marl =
      std::find(spec.algorithms.begin(), spec.algorithms.end(), Algorithm::marl) !=
      spec.algorithms.end();
  const bool wants_mono =
      std::find(spec.algorithms.begin(), spec.algorithms.end(), Algorithm::monolithic) !=
      spec.algorithms.end();
  if (wants_marl && (bundle == nullptr || bundle->agents.size() < 3))
    throw std::runtime_error("marl requested but per-type checkpoints are not loaded");
  if (wants_mono && (bundle == nullptr || !bundle->monolithic))
    throw std::runtime_error("monolithic requested but its checkpoint is not loaded");

  const int n_counts = static_cast<int>(spec.slice_counts.size());
  const int n_algos = static_cast<int>(spec.algorithms.size());
  const std::size_t cell_rows = static_cast<std::size_t>(n_counts) * spec.trials;
  std::vector<MetricsRow> rows(static_cast<std::size_t>(n_algos) * cell_rows);
  if (raw_results != nullptr) raw_results->assign(rows.size(), SolveResult{});

#pragma omp parallel for collapse(2) schedule(dynamic)
  for (int ci = 0; ci < n_counts; ++ci) {
    for (int trial = 0; trial < spec.trials; ++trial) {
      const int count = spec.slice_counts[ci];
      const Scenario scenario = generate_scenario(count, trial_scenario_seed(spec.base_seed, count, trial));
      Rng noise_rng(mix_seed(spec.base_seed, 0x10A7E9C1ULL, mix_seed(count, trial)));
      const TrialDraws draws =
          draw_trial_noise(scenario, spec.latency_samples_per_slice, noise_rng);

      for (int ai = 0; ai < n_algos; ++ai) {
        const Algorithm algo = spec.algorithms[ai];
        PlacementTiming timing;
        SolveResult result =
            run_algorithm(algo, scenario, bundle, spec.exact_time_budget_s, &timing);
        const std::size_t idx = static_cast<std::size_t>(ai) * cell_rows +
                                static_cast<std::size_t>(ci) * spec.trials +
                                static_cast<std::size_t>(trial);
        rows[idx] = make_row(algo, count, trial, scenario, result, timing.per_type_parallel_s,
                             draws, spec.latency_samples_per_slice);
        if (raw_results != nullptr) (*raw_results)[idx] = std::move(result);
      }
    }
  }
  return rows;
}

std::vector<SpeedupRow> speedup_table(const std::vector<MetricsRow>& rows) {
  constexpr double kTimerResolution = 1e-7;  // seconds; below this, means are untrustworthy

  std::map<std::pair<int, int>, std::pair<double, int>> agg;  // (algo, count) -> (sum, n)
  for (const auto& r : rows)
    agg[{static_cast<int>(r.algorithm), r.slice_count}].first += r.decision_time_s,
        agg[{static_cast<int>(r.algorithm), r.slice_count}].second += 1;

  std::map<int, double> exact_mean;
  for (const auto& [key, val] : agg)
    if (key.first == static_cast<int>(Algorithm::exact)) exact_mean[key.second] = val.first / val.second;
  if (exact_mean.empty()) throw std::invalid_argument("speedup table needs exact rows");

  std::vector<SpeedupRow> out;
  for (const auto& [key, val] : agg) {
    auto it = exact_mean.find(key.second);
    if (it == exact_mean.end()) continue;
    SpeedupRow s;
    s.algorithm = static_cast<Algorithm>(key.first);
    s.slice_count = key.second;
    double mean = val.first / val.second;
    if (mean < kTimerResolution) {
      mean = kTimerResolution;
      s.lower_bound = true;
    }
    s.speedup = it->second / mean;
    out.push_back(s);
  }
  return out;
}

std::string metrics_csv_header(int n_infras) {
  std::ostringstream os;
  os << "algorithm,slice_count,trial,cost_per_hour,decision_time_s,decision_time_parallel_s,"
        "sla_violation_pct";
  for (int m = 0; m < n_infras; ++m) os << ",cpu_util_pct_" << m;
  for (int m = 0; m < n_infras; ++m) os << ",mem_util_pct_" << m;
  os << ",rejected_slices";
  return os.str();
}

std::string metrics_csv_line(const MetricsRow& row) {
  std::ostringstream os;
  os << to_string(row.algorithm) << "," << row.slice_count << "," << row.trial << ","
     << format_double(row.cost_per_hour) << "," << format_double(row.decision_time_s) << ","
     << format_double(row.decision_time_parallel_s) << ","
     << format_double(row.sla_violation_pct);
  for (double v : row.cpu_util_pct) os << "," << format_double(v);
  for (double v : row.mem_util_pct) os << "," << format_double(v);
  os << "," << row.rejected_slices;
  return os.str();
}

void emit_report(const std::vector<MetricsRow>& rows, const std::string& csv_path,
                 const std::string& summary_path) {
  if (rows.empty()) throw std::invalid_argument("no rows to report");
  const int n_infras = static_cast<int>(rows.front().cpu_util_pct.size());

  std::ofstream csv(csv_path, std::ios::trunc);
  if (!csv) throw std::runtime_error("cannot write " + csv_path);
  csv << metrics_csv_header(n_infras) << "\n";
  for (const auto& row : rows) csv << metrics_csv_line(row) << "\n";
  if (!csv) throw std::runtime_error("short write: " + csv_path);

  // per-(algorithm, slice count) means, grouped the way the figures read
  struct Acc {
    double cost = 0, time = 0, ptime = 0, viol = 0, rej = 0;
    std::vector<double> cpu, mem;
    int n = 0;
  };
  std::map<std::pair<int, int>, Acc> cells;
  for (const auto& row : rows) {
    auto& a = cells[{static_cast<int>(row.algorithm), row.slice_count}];
    if (a.n == 0) {
      a.cpu.assign(row.cpu_util_pct.size(), 0.0);
      a.mem.assign(row.mem_util_pct.size(), 0.0);
    }
    a.cost += row.cost_per_hour;
    a.time += row.decision_time_s;
    a.ptime += row.decision_time_parallel_s;
    a.viol += row.sla_violation_pct;
    a.rej += row.rejected_slices;
    for (std::size_t m = 0; m < row.cpu_util_pct.size(); ++m) {
      a.cpu[m] += row.cpu_util_pct[m];
      a.mem[m] += row.mem_util_pct[m];
    }
    ++a.n;
  }

  std::ofstream sum(summary_path, std::ios::trunc);
  if (!sum) throw std::runtime_error("cannot write " + summary_path);
  sum << "algorithm slices trials mean_cost_per_hour mean_decision_s mean_decision_parallel_s "
         "mean_sla_violation_pct mean_rejected";
  for (int m = 0; m < n_infras; ++m) sum << " cpu_util_" << m;
  for (int m = 0; m < n_infras; ++m) sum << " mem_util_" << m;
  sum << "\n";
  for (const auto& [key, a] : cells) {
    sum << to_string(static_cast<Algorithm>(key.first)) << " " << key.second << " " << a.n << " "
        << format_double(a.cost / a.n) << " " << format_double(a.time / a.n) << " "
        << format_double(a.ptime / a.n) << " " << format_double(a.viol / a.n) << " "
        << format_double(a.rej / a.n);
    for (double v : a.cpu) sum << " " << format_double(v / a.n);
    for (double v : a.mem) sum << " " << format_double(v / a.n);
    sum << "\n";
  }
  if (!sum) throw std::runtime_error("short write: " + summary_path);
}

}  // namespace slicesim
