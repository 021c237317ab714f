#pragma once

#include "slicesim/rng.hpp"
#include "slicesim/solve_result.hpp"

namespace slicesim {

// Greedy baselines. All of them respect capacity (a VNF is never placed on
// an infrastructure it does not fit) and none of them consult latency or
// consolidation constraints. Slices are processed in arrival order, VNFs in
// catalog order, and spilling happens per VNF, so a slice may straddle
// tiers once one fills up.

// cheapest rate first
SolveResult place_cost_aware(const Scenario& scenario);

// edge -> distributed -> central
SolveResult place_performance_aware(const Scenario& scenario);

// uniform among the infrastructures with room; deterministic given rng
SolveResult place_random(const Scenario& scenario, Rng& rng);

// lowest post-placement utilization, score = max(cpu share, mem share),
// ties to the lower index
SolveResult place_load_balance(const Scenario& scenario);

}  // namespace slicesim
