#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "slicesim/solve_result.hpp"

namespace slicesim {

// Minimum-cost feasible placement by depth-first branch and bound over the
// full assignment space. Deterministic: slices in arrival order, VNFs in
// catalog order, infrastructures tried in ascending (unit_cost, id); the
// first optimum reached in that order is kept, so cost ties resolve toward
// cheaper-then-lower-index assignments. Requests with the consolidation
// flag branch once per slice instead of once per VNF.
//
// With a finite time budget the incumbent found so far is returned and
// `optimal` is left false.
SolveResult solve_exact(const Scenario& scenario,
                        double time_budget_s = std::numeric_limits<double>::infinity());

// Complete enumeration of M^(|V| * n) assignments, kept compact: each entry
// carries a base-M code instead of a materialized Placement. Slot k is VNF
// k of the flattened (arrival order, VNF order) list and occupies digit k,
// least significant first. Test oracle for solve_exact on small instances.
struct EnumEntry {
  std::uint64_t code = 0;
  double cost = 0.0;
  bool feasible = false;
};

// Throws std::invalid_argument when the space exceeds `limit` entries.
std::vector<EnumEntry> enumerate_all(const Scenario& scenario, std::uint64_t limit);

Placement placement_from_code(const Scenario& scenario, std::uint64_t code);

}  // namespace slicesim
