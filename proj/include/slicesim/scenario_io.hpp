#pragma once

#include <string>

#include "slicesim/eval.hpp"

namespace slicesim {

// JSON scenario file. Every section is optional: omitted infrastructures,
// VNF catalog or latency pairs fall back to the built-in defaults, and
// omitted requests are generated from (n_slices, seed). Explicit latency
// pairs override the composed edge<->central default.
Scenario load_scenario_file(const std::string& path);
Scenario scenario_from_json_text(const std::string& text);

ExperimentSpec load_experiment_spec(const std::string& path);

}  // namespace slicesim
