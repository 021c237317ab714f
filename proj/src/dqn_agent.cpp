#include "slicesim/dqn_agent.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "slicesim/util.hpp"

namespace slicesim {

void AgentConfig::validate() const {
  if (discount <= 0.0 || discount > 1.0) throw std::invalid_argument("discount must be in (0,1]");
  if (batch_size <= 0 || batch_size > buffer_capacity)
    throw std::invalid_argument("batch size must be positive and at most the buffer capacity");
  if (epsilon_start < 0 || epsilon_start > 1 || epsilon_end < 0 || epsilon_end > 1)
    throw std::invalid_argument("epsilon endpoints must lie in [0,1]");
  if (learning_rate <= 0) throw std::invalid_argument("learning rate must be positive");
  if (hidden_width <= 0 || hidden_layers <= 0) throw std::invalid_argument("bad architecture");
}

// Everything that defines the network and its training semantics; the rng
// seed identifies a run, not a configuration, so it stays out of the hash
// and checkpoints trained under any seed remain loadable.
std::string AgentConfig::canonical_string() const {
  std::ostringstream os;
  os << "B=" << batch_size << ";N=" << buffer_capacity << ";C=" << sync_interval
     << ";eps_decay=" << format_double(epsilon_decay) << ";eps0=" << format_double(epsilon_start)
     << ";eps1=" << format_double(epsilon_end) << ";alpha=" << format_double(learning_rate)
     << ";gamma=" << format_double(discount) << ";d1=" << format_double(reward.delta1) << ";d2=";
  for (double d : reward.delta2) os << format_double(d) << ",";
  os << ";d3=" << format_double(reward.delta3) << ";hw=" << hidden_width
     << ";hl=" << hidden_layers << ";opt=" << (optimizer == Optimizer::sgd ? "sgd" : "adam");
  return os.str();
}

std::uint64_t AgentConfig::hash() const { return fnv1a64(canonical_string()); }

EncodedTransition encode_transition(const Transition& t) {
  return {t.state.encoded, t.next_state.encoded, t.action, t.reward, t.done};
}

ReplayBuffer::ReplayBuffer(int capacity) : capacity_(capacity) {
  if (capacity <= 0) throw std::invalid_argument("buffer capacity must be positive");
  storage_.reserve(static_cast<std::size_t>(capacity));
}

void ReplayBuffer::push(EncodedTransition t) {
  if (size_ < static_cast<std::size_t>(capacity_)) {
    storage_.push_back(std::move(t));
    ++size_;
  } else {
    storage_[cursor_] = std::move(t);
  }
  cursor_ = (cursor_ + 1) % static_cast<std::size_t>(capacity_);
}

void ReplayBuffer::sample(int batch, Rng& rng, std::vector<const EncodedTransition*>& out) const {
  const int n = size();
  if (batch > n) throw std::invalid_argument("batch larger than buffer contents");
  out.clear();
  out.reserve(static_cast<std::size_t>(batch));
  // Floyd: uniform k-subset, emitted in insertion order
  std::vector<int> picked;
  picked.reserve(static_cast<std::size_t>(batch));
  for (int i = n - batch; i < n; ++i) {
    const int j = rng.uniform_int(i + 1);
    bool seen = false;
    for (int p : picked)
      if (p == j) {
        seen = true;
        break;
      }
    picked.push_back(seen ? i : j);
  }
  for (int p : picked) out.push_back(&storage_[p]);
}

double epsilon_at(std::uint64_t step, const AgentConfig& config) {
  return config.epsilon_end + (config.epsilon_start - config.epsilon_end) *
                                  std::exp(-static_cast<double>(step) / config.epsilon_decay);
}

int argmax_action(std::span<const double> q) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(q.size()); ++i)
    if (q[i] > q[best]) best = i;
  return best;
}

int act_epsilon_greedy(const QNetwork& net, std::span<const double> state, double epsilon,
                       Rng& rng) {
  if (epsilon < 0.0 || epsilon > 1.0) throw std::invalid_argument("epsilon outside [0,1]");
  if (rng.uniform() < epsilon) return rng.uniform_int(net.output_width());
  return argmax_action(net.forward(state));
}

double compute_target(const QNetwork& online, const QNetwork& target, const EncodedTransition& t,
                      double gamma) {
  if (t.done) return t.reward;
  const auto online_next = online.forward(t.x_next);
  const int a_star = argmax_action(online_next);
  const auto target_next = target.forward(t.x_next);
  return t.reward + gamma * target_next[a_star];
}

DqnAgent::DqnAgent(const AgentConfig& config, int state_width, int n_actions)
    : config_(config),
      online_(),
      target_(),
      buffer_(config.buffer_capacity),
      rng_(mix_seed(config.rng_seed, 0xA9E47u)) {
  config_.validate();
  config_.reward.validate(n_actions);
  std::vector<int> sizes;
  sizes.push_back(state_width);
  for (int i = 0; i < config_.hidden_layers; ++i) sizes.push_back(config_.hidden_width);
  sizes.push_back(n_actions);
  online_ = QNetwork::make(sizes, rng_);
  target_ = online_;
}

void DqnAgent::sync_target() {
  target_ = online_;
  ++sync_count_;
}

double DqnAgent::train_step(std::span<const EncodedTransition* const> batch) {
  const int b = static_cast<int>(batch.size());
  if (b == 0) throw std::invalid_argument("empty batch");
  const int in_w = online_.input_width();
  const int out_w = online_.output_width();
  const Parallel mode = config_.kernels;

  ws_main_.prepare(online_, b);
  ws_aux_.prepare(online_, b);
  grads_.prepare(online_);
  targets_.assign(static_cast<std::size_t>(b), 0.0);

  // targets: online argmax at the next state, target network value there
  for (int k = 0; k < b; ++k) {
    const auto& t = *batch[k];
    double* row = ws_aux_.acts[0].row(k);
    const auto& src = t.done ? t.x : t.x_next;  // placeholder rows for done entries
    for (int j = 0; j < in_w; ++j) row[j] = src[j];
  }
  forward_batch(online_, ws_aux_, b, mode);
  std::vector<int> a_star(static_cast<std::size_t>(b), 0);
  for (int k = 0; k < b; ++k) {
    const double* q = ws_aux_.acts.back().row(k);
    a_star[k] = argmax_action(std::span<const double>(q, static_cast<std::size_t>(out_w)));
  }
  forward_batch(target_, ws_aux_, b, mode);
  for (int k = 0; k < b; ++k) {
    const auto& t = *batch[k];
    targets_[k] =
        t.done ? t.reward : t.reward + config_.discount * ws_aux_.acts.back().at(k, a_star[k]);
  }

  // prediction pass, loss, and the output gradient restricted to the
  // taken actions (the target is a constant)
  for (int k = 0; k < b; ++k) {
    double* row = ws_main_.acts[0].row(k);
    const auto& x = batch[k]->x;
    for (int j = 0; j < in_w; ++j) row[j] = x[j];
  }
  forward_batch(online_, ws_main_, b, mode);

  if (dout_.rows != b || dout_.cols != out_w) dout_.resize(b, out_w);
  std::fill(dout_.data.begin(), dout_.data.end(), 0.0);
  double loss = 0.0;
  for (int k = 0; k < b; ++k) {
    const double q = ws_main_.acts.back().at(k, batch[k]->action);
    const double err = q - targets_[k];
    loss += err * err;
    dout_.at(k, batch[k]->action) = 2.0 * err / b;
  }
  loss /= b;

  backward_batch(online_, ws_main_, dout_, grads_, b, mode);
  apply_gradients();
  return loss;
}

void DqnAgent::apply_gradients() {
  const double alpha = config_.learning_rate;
  if (config_.optimizer == Optimizer::sgd) {
    for (std::size_t l = 0; l < online_.layers.size(); ++l) {
      auto& layer = online_.layers[l];
      const auto& dw = grads_.dw[l];
      for (std::size_t i = 0; i < layer.w.data.size(); ++i)
        layer.w.data[i] -= alpha * dw.data[i];
      for (std::size_t i = 0; i < layer.b.size(); ++i) layer.b[i] -= alpha * grads_.db[l][i];
    }
    return;
  }

  // adam
  constexpr double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
  if (adam_m_.dw.empty()) {
    adam_m_.prepare(online_);
    adam_v_.prepare(online_);
  }
  ++adam_t_;
  const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(adam_t_));
  const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(adam_t_));
  auto update = [&](double& w, double g, double& m, double& v) {
    m = beta1 * m + (1.0 - beta1) * g;
    v = beta2 * v + (1.0 - beta2) * g * g;
    w -= alpha * (m / bc1) / (std::sqrt(v / bc2) + eps);
  };
  for (std::size_t l = 0; l < online_.layers.size(); ++l) {
    auto& layer = online_.layers[l];
    for (std::size_t i = 0; i < layer.w.data.size(); ++i)
      update(layer.w.data[i], grads_.dw[l].data[i], adam_m_.dw[l].data[i], adam_v_.dw[l].data[i]);
    for (std::size_t i = 0; i < layer.b.size(); ++i)
      update(layer.b[i], grads_.db[l][i], adam_m_.db[l][i], adam_v_.db[l][i]);
  }
}

void DqnAgent::save(const std::string& path) const {
  save_checkpoint(online_, config_.hash(), path);
}

void DqnAgent::load(const std::string& path) {
  auto loaded = load_checkpoint(path);
  // the weights define the policy; training-time knobs like the epsilon
  // schedule may differ, but the architecture must line up
  if (loaded.net.layer_sizes != online_.layer_sizes)
    throw std::runtime_error("checkpoint " + path + " has a different architecture");
  online_ = std::move(loaded.net);
  target_ = online_;
}

double train_step(DqnAgent& agent, std::span<const EncodedTransition* const> batch) {
  return agent.train_step(batch);
}

void sync_target(DqnAgent& agent) { agent.sync_target(); }

}  // namespace slicesim
