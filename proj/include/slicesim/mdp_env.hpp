#pragma once

#include <array>
#include <optional>
#include <vector>

#include "slicesim/constraints.hpp"
#include "slicesim/env_model.hpp"

namespace slicesim {

struct RewardParams {
  double delta1 = -100.0;                  // resource-violation penalty, negative
  std::vector<double> delta2 = {1, 2, 4};  // per-infrastructure placement reward
  double delta3 = 15.0;                    // SLA bonus on slice completion, positive

  void validate(int n_infras) const;
};

double default_delta3(SliceType t);  // 15 eMBB, 20 URLLC, 10 mMTC

struct EncodingOptions {
  int q_max = 16;
  bool include_current_vnf = true;   // demand of the VNF being placed
  bool include_type_onehot = false;  // monolithic variant
};

int encoded_width(const EncodingOptions& opts, int n_infras);

// Fixed-width observation: per-infrastructure available resources
// (normalized to [0,1] by each capacity), the queued-slice count, the
// aggregate demand of queued slices, and the zero-padded latency budgets
// of queued slices. `encoded` is the normalized network input.
struct MdpState {
  std::vector<double> available;           // 2M, free/capacity per infrastructure
  double queued_count = 0.0;               // raw
  std::array<double, 2> total_demand{};    // raw cpu cores / GiB
  std::vector<double> sla_params;          // q_max entries, raw ms, zero padded
  std::array<double, 2> current_vnf{};     // raw demand of the VNF being placed
  std::array<double, 3> type_onehot{};     // set in monolithic mode
  std::vector<double> encoded;
};

struct Transition {
  MdpState state;
  int action = 0;
  double reward = 0.0;
  MdpState next_state;
  bool done = false;
};

struct MdpEnvOptions {
  EncodingOptions encoding;
  RewardParams reward;                       // delta3 used for every type unless overridden
  std::array<double, 3> delta3_by_type = {0, 0, 0};  // 0 entries fall back to reward.delta3
  int retry_cap_factor = 3;                  // per-VNF retries before the slice is rejected
  bool use_default_delta3_by_type = false;   // 15/20/10 per type
};

// Sequential placement over a queue of slice requests: one VNF per step,
// action = target infrastructure. A capacity-violating action leaves the
// VNF unplaced (penalty delta1) and the same VNF is retried next step; a
// VNF that fails retry_cap_factor * M times aborts its slice as rejected.
// Resources only ever decrease within an episode.
class MdpEnv {
 public:
  MdpEnv(const Scenario& scenario, std::optional<SliceType> type_filter,
         const MdpEnvOptions& opts);

  void reset();
  void reset(const Scenario& scenario, std::optional<SliceType> type_filter);

  MdpState encode_state() const;
  Transition step(int action);
  bool done() const { return done_; }

  // bookkeeping accessors
  double available_cpu(int infra) const { return used_.free_cpu(infra); }
  double available_mem(int infra) const { return used_.free_mem(infra); }
  const Placement& placement() const { return placement_; }
  const std::vector<int>& rejected_slices() const { return rejected_; }
  int fully_placed_slices() const { return fully_placed_; }
  const Scenario& scenario() const { return scenario_; }
  const SliceRequest* current_request() const;
  int queue_size() const { return static_cast<int>(queue_.size()) - queue_pos_; }

 private:
  void validate_queue() const;
  void advance_slice();
  double delta3_for(SliceType t) const;

  Scenario scenario_;
  MdpEnvOptions opts_;
  std::optional<SliceType> filter_;
  std::vector<int> queue_;  // request indices into scenario_.requests, arrival order
  int queue_pos_ = 0;
  int vnf_pos_ = 0;
  int retries_ = 0;
  bool done_ = false;
  CapacityTracker used_;
  Placement placement_;
  std::vector<int> rejected_;
  int fully_placed_ = 0;
};

// Shared encoder, also used by the inference path so agents see the exact
// training-time representation.
MdpState encode_state_vector(const Scenario& scenario, const CapacityTracker& used,
                             const std::vector<const SliceRequest*>& queued,
                             const VnfSpec* current_vnf, std::optional<SliceType> onehot_type,
                             const EncodingOptions& opts);

}  // namespace slicesim
