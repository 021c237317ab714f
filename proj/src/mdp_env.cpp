#include "slicesim/mdp_env.hpp"

#include <stdexcept>

namespace slicesim {

void RewardParams::validate(int n_infras) const {
  if (delta1 >= 0.0) throw std::invalid_argument("delta1 must be negative");
  if (delta3 <= 0.0) throw std::invalid_argument("delta3 must be positive");
  if (static_cast<int>(delta2.size()) != n_infras)
    throw std::invalid_argument("delta2 must have one entry per infrastructure");
}

double default_delta3(SliceType t) {
  switch (t) {
    case SliceType::embb: return 15.0;
    case SliceType::urllc: return 20.0;
    case SliceType::mmtc: return 10.0;
  }
  throw std::logic_error("bad SliceType");
}

int encoded_width(const EncodingOptions& opts, int n_infras) {
  int w = 2 * n_infras + 1 + 2 + opts.q_max;
  if (opts.include_current_vnf) w += 2;
  if (opts.include_type_onehot) w += 3;
  return w;
}

MdpState encode_state_vector(const Scenario& scenario, const CapacityTracker& used,
                             const std::vector<const SliceRequest*>& queued,
                             const VnfSpec* current_vnf, std::optional<SliceType> onehot_type,
                             const EncodingOptions& opts) {
  if (static_cast<int>(queued.size()) > opts.q_max)
    throw std::invalid_argument("queue of " + std::to_string(queued.size()) +
                                " slices exceeds the encoder width Q_max=" +
                                std::to_string(opts.q_max));
  const int m = static_cast<int>(scenario.infrastructures.size());
  MdpState s;
  s.available.resize(2 * static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    s.available[2 * i] = used.free_cpu(i) / scenario.infrastructures[i].cpu_capacity;
    s.available[2 * i + 1] = used.free_mem(i) / scenario.infrastructures[i].mem_capacity;
  }
  s.queued_count = static_cast<double>(queued.size());
  s.sla_params.assign(static_cast<std::size_t>(opts.q_max), 0.0);
  for (std::size_t q = 0; q < queued.size(); ++q) {
    const auto d = slice_total_demand(*queued[q]);
    s.total_demand[0] += d.cpu;
    s.total_demand[1] += d.mem;
    s.sla_params[q] = queued[q]->latency_budget_ms;
  }
  if (current_vnf != nullptr) {
    s.current_vnf[0] = current_vnf->cpu_demand;
    s.current_vnf[1] = current_vnf->mem_demand;
  }
  if (onehot_type) s.type_onehot[static_cast<int>(*onehot_type)] = 1.0;

  // network input: resource shares as-is, count by q_max, demands by the
  // aggregate capacity, budgets by 100 ms
  const double agg_cpu = scenario.total_cpu_capacity();
  const double agg_mem = scenario.total_mem_capacity();
  s.encoded.reserve(static_cast<std::size_t>(encoded_width(opts, m)));
  s.encoded.insert(s.encoded.end(), s.available.begin(), s.available.end());
  s.encoded.push_back(s.queued_count / opts.q_max);
  s.encoded.push_back(s.total_demand[0] / agg_cpu);
  s.encoded.push_back(s.total_demand[1] / agg_mem);
  for (double b : s.sla_params) s.encoded.push_back(b / 100.0);
  if (opts.include_current_vnf) {
    s.encoded.push_back(s.current_vnf[0] / agg_cpu);
    s.encoded.push_back(s.current_vnf[1] / agg_mem);
  }
  if (opts.include_type_onehot)
    s.encoded.insert(s.encoded.end(), s.type_onehot.begin(), s.type_onehot.end());
  return s;
}

MdpEnv::MdpEnv(const Scenario& scenario, std::optional<SliceType> type_filter,
               const MdpEnvOptions& opts)
    : scenario_(scenario), opts_(opts), filter_(type_filter), used_(scenario) {
  opts_.reward.validate(static_cast<int>(scenario_.infrastructures.size()));
  reset();
}

void MdpEnv::reset() {
  queue_.clear();
  for (std::size_t r = 0; r < scenario_.requests.size(); ++r)
    if (!filter_ || scenario_.requests[r].slice_type == *filter_)
      queue_.push_back(static_cast<int>(r));
  validate_queue();
  queue_pos_ = 0;
  vnf_pos_ = 0;
  retries_ = 0;
  used_ = CapacityTracker(scenario_);
  placement_ = Placement{};
  rejected_.clear();
  fully_placed_ = 0;
  done_ = queue_.empty();
}

void MdpEnv::reset(const Scenario& scenario, std::optional<SliceType> type_filter) {
  scenario_ = scenario;
  filter_ = type_filter;
  opts_.reward.validate(static_cast<int>(scenario_.infrastructures.size()));
  reset();
}

void MdpEnv::validate_queue() const {
  if (static_cast<int>(queue_.size()) > opts_.encoding.q_max)
    throw std::invalid_argument("scenario queues " + std::to_string(queue_.size()) +
                                " slices of one type; the encoder supports at most Q_max=" +
                                std::to_string(opts_.encoding.q_max));
}

const SliceRequest* MdpEnv::current_request() const {
  if (done_) return nullptr;
  return &scenario_.requests[queue_[queue_pos_]];
}

double MdpEnv::delta3_for(SliceType t) const {
  if (opts_.use_default_delta3_by_type) return default_delta3(t);
  const double v = opts_.delta3_by_type[static_cast<int>(t)];
  return v != 0.0 ? v : opts_.reward.delta3;
}

MdpState MdpEnv::encode_state() const {
  std::vector<const SliceRequest*> queued;
  for (int q = queue_pos_; q < static_cast<int>(queue_.size()); ++q)
    queued.push_back(&scenario_.requests[queue_[q]]);
  const VnfSpec* current = nullptr;
  if (!done_ && opts_.encoding.include_current_vnf)
    current = &current_request()->vnfs[vnf_pos_];
  std::optional<SliceType> onehot;
  if (opts_.encoding.include_type_onehot && !done_) onehot = current_request()->slice_type;
  return encode_state_vector(scenario_, used_, queued, current, onehot, opts_.encoding);
}

void MdpEnv::advance_slice() {
  ++queue_pos_;
  vnf_pos_ = 0;
  retries_ = 0;
  if (queue_pos_ >= static_cast<int>(queue_.size())) done_ = true;
}

Transition MdpEnv::step(int action) {
  if (done_) throw std::logic_error("step on a finished episode");
  const int n_infras = static_cast<int>(scenario_.infrastructures.size());
  if (action < 0 || action >= n_infras) throw std::invalid_argument("action out of range");

  Transition t;
  t.state = encode_state();
  t.action = action;

  const SliceRequest& req = *current_request();
  const VnfSpec& vnf = req.vnfs[vnf_pos_];

  double r1 = 0.0, r2 = 0.0, r3 = 0.0;
  if (!used_.fits(action, vnf.cpu_demand, vnf.mem_demand)) {
    r1 = opts_.reward.delta1;
    ++retries_;
    if (retries_ >= opts_.retry_cap_factor * n_infras) {
      rejected_.push_back(req.id);
      advance_slice();
    }
  } else {
    used_.add(action, vnf.cpu_demand, vnf.mem_demand);
    placement_.assign(req.id, vnf_pos_, action);
    r2 = opts_.reward.delta2[action];
    retries_ = 0;
    if (vnf_pos_ + 1 == static_cast<int>(req.vnfs.size())) {
      ++fully_placed_;
      const bool sla_ok =
          check_latency(placement_, req, scenario_) && check_consolidation(placement_, req);
      if (sla_ok) r3 = delta3_for(req.slice_type);
      advance_slice();
    } else {
      ++vnf_pos_;
    }
  }

  t.reward = r1 + r2 + r3;
  t.next_state = encode_state();
  t.done = done_;
  return t;
}

}  // namespace slicesim
