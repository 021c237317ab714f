#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "slicesim/constraints.hpp"

namespace slicesim {

struct SolveResult {
  std::optional<Placement> placement;  // absent when no feasible placement was produced
  double cost = 0.0;
  std::uint64_t nodes_explored = 0;
  double wall_time_s = 0.0;
  bool optimal = false;           // true only when an exact search ran to completion
  std::vector<int> rejected_slices;  // slices a policy declined to place
};

}  // namespace slicesim
