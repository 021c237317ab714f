#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>

#include "slicesim/dqn_agent.hpp"
#include "slicesim/solve_result.hpp"

namespace slicesim {

enum class SchedulerMode { disaggregated, monolithic };

constexpr int kQMax = 16;

// Per-type defaults: hidden width 128 (256 for mMTC), learning rate 0.05 /
// 0.01 / 0.005 and completion bonus 15 / 20 / 10 for eMBB / URLLC / mMTC.
AgentConfig default_agent_config(SliceType t);

// Single-agent baseline: 3 hidden layers of 128, learning rate 0.05,
// type one-hot appended to the state.
AgentConfig default_monolithic_config();

EncodingOptions encoding_for(SchedulerMode mode);
int state_width_for(SchedulerMode mode, int n_infras);

struct SchedulerBundle {
  std::map<SliceType, DqnAgent> agents;
  std::optional<DqnAgent> monolithic;
};

struct EpisodeLog {
  double reward = 0.0;
  double loss = 0.0;  // mean over the episode's gradient steps
};

struct TrainingReport {
  std::vector<EpisodeLog> episodes;
  std::uint64_t env_steps = 0;
};

struct TrainOptions {
  int episodes = 10000;
  std::uint64_t master_seed = 1;  // per-episode workload seeds derive from this
  std::string checkpoint_dir;     // empty disables periodic checkpoints
  std::string name;               // checkpoint file stem
  int checkpoint_every = 5000;
};

// Trains one agent on freshly generated queues of 1..kQMax slices per
// episode: homogeneous queues of `type` for a disaggregated agent, mixed
// multinomial queues when `type` is empty (monolithic). Aborts with a
// diagnostic if the loss stays above 1e6 for 100 consecutive steps.
TrainingReport train_agent(DqnAgent& agent, const Catalog& catalog,
                           std::optional<SliceType> type, const TrainOptions& opts);

struct PlacementTiming {
  double sequential_s = 0.0;
  double per_type_parallel_s = 0.0;  // critical path if each agent ran its own queue
  std::array<double, 3> per_type_s{};
};

// Greedy (epsilon = 0) placement of the scenario's requests in arrival
// order against shared infrastructure bookkeeping. If the argmax action
// does not fit, the best-valued fitting action is used instead; if nothing
// fits, the slice is rejected and its partial placement rolled back.
// Timing covers the network evaluations and action selection only.
SolveResult place_slices(const SchedulerBundle& bundle, const Scenario& scenario,
                         SchedulerMode mode, PlacementTiming* timing = nullptr);

const DqnAgent& dispatch(const SchedulerBundle& bundle, const SliceRequest& request);

void save_bundle(const SchedulerBundle& bundle, const std::string& dir);

// Loads <dir>/{embb,urllc,mmtc}.ckpt and, if wanted, <dir>/monolithic.ckpt.
// Throws when a required checkpoint is missing.
SchedulerBundle load_bundle(const std::string& dir, bool want_disaggregated, bool want_monolithic);

}  // namespace slicesim
