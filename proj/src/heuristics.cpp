#include "slicesim/heuristics.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <limits>

namespace slicesim {

namespace {

using Clock = std::chrono::steady_clock;

// Runs the shared greedy loop; `pick` returns the chosen infrastructure
// among those with room, or -1 to fail the whole placement.
SolveResult greedy_place(const Scenario& scenario,
                         const std::function<int(const CapacityTracker&, const VnfSpec&)>& pick) {
  const auto t0 = Clock::now();
  SolveResult res;
  CapacityTracker used(scenario);
  Placement p;
  for (const auto& req : scenario.requests) {
    for (std::size_t v = 0; v < req.vnfs.size(); ++v) {
      const int m = pick(used, req.vnfs[v]);
      ++res.nodes_explored;
      if (m < 0) {
        res.wall_time_s = std::chrono::duration<double>(Clock::now() - t0).count();
        res.placement.reset();
        return res;
      }
      used.add(m, req.vnfs[v].cpu_demand, req.vnfs[v].mem_demand);
      p.assign(req.id, static_cast<int>(v), m);
    }
  }
  res.cost = deployed_cost(p, scenario);
  res.placement = std::move(p);
  res.wall_time_s = std::chrono::duration<double>(Clock::now() - t0).count();
  return res;
}

std::vector<int> order_by_cost(const Scenario& scenario) {
  std::vector<int> order(scenario.infrastructures.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& ia = scenario.infrastructures[a];
    const auto& ib = scenario.infrastructures[b];
    if (ia.unit_cost != ib.unit_cost) return ia.unit_cost < ib.unit_cost;
    return a < b;
  });
  return order;
}

std::vector<int> order_by_tier(const Scenario& scenario) {
  std::vector<int> order(scenario.infrastructures.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& ia = scenario.infrastructures[a];
    const auto& ib = scenario.infrastructures[b];
    if (ia.tier != ib.tier) return ia.tier < ib.tier;
    return a < b;
  });
  return order;
}

}  // namespace

SolveResult place_cost_aware(const Scenario& scenario) {
  const auto order = order_by_cost(scenario);
  return greedy_place(scenario, [&](const CapacityTracker& used, const VnfSpec& v) {
    for (int m : order)
      if (used.fits(m, v.cpu_demand, v.mem_demand)) return m;
    return -1;
  });
}

SolveResult place_performance_aware(const Scenario& scenario) {
  const auto order = order_by_tier(scenario);
  return greedy_place(scenario, [&](const CapacityTracker& used, const VnfSpec& v) {
    for (int m : order)
      if (used.fits(m, v.cpu_demand, v.mem_demand)) return m;
    return -1;
  });
}

SolveResult place_random(const Scenario& scenario, Rng& rng) {
  std::vector<int> candidates;
  return greedy_place(scenario, [&](const CapacityTracker& used, const VnfSpec& v) {
    candidates.clear();
    for (int m = 0; m < used.size(); ++m)
      if (used.fits(m, v.cpu_demand, v.mem_demand)) candidates.push_back(m);
    if (candidates.empty()) return -1;
    return candidates[rng.uniform_int(static_cast<int>(candidates.size()))];
  });
}

SolveResult place_load_balance(const Scenario& scenario) {
  return greedy_place(scenario, [&](const CapacityTracker& used, const VnfSpec& v) {
    int best = -1;
    double best_score = std::numeric_limits<double>::infinity();
    for (int m = 0; m < used.size(); ++m) {
      if (!used.fits(m, v.cpu_demand, v.mem_demand)) continue;
      const auto& infra = scenario.infrastructures[m];
      const double cpu_share = (used.used_cpu(m) + v.cpu_demand) / infra.cpu_capacity;
      const double mem_share = (used.used_mem(m) + v.mem_demand) / infra.mem_capacity;
      const double score = std::max(cpu_share, mem_share);
      if (score < best_score) {
        best_score = score;
        best = m;
      }
    }
    return best;
  });
}

}  // namespace slicesim
