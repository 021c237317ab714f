#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "slicesim/mdp_env.hpp"
#include "slicesim/nn.hpp"
#include "slicesim/nn_kernels.hpp"

namespace slicesim {

enum class Optimizer { sgd, adam };

struct AgentConfig {
  int batch_size = 32;
  int buffer_capacity = 20000;
  int episodes = 50000;
  int sync_interval = 1000;       // environment steps between target copies
  double epsilon_decay = 25000.0; // lambda_eps, environment steps
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;
  double learning_rate = 0.05;
  double discount = 0.01;         // gamma in (0, 1]
  RewardParams reward;
  int hidden_width = 128;
  int hidden_layers = 3;
  std::uint64_t rng_seed = 1;
  Optimizer optimizer = Optimizer::sgd;
  Parallel kernels = Parallel::openmp;

  void validate() const;
  std::string canonical_string() const;
  std::uint64_t hash() const;
};

// Transition with states already encoded as network inputs.
struct EncodedTransition {
  std::vector<double> x;
  std::vector<double> x_next;
  int action = 0;
  double reward = 0.0;
  bool done = false;
};

EncodedTransition encode_transition(const Transition& t);

// Bounded FIFO ring; oldest transitions evicted first.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(int capacity);

  void push(EncodedTransition t);
  int size() const { return static_cast<int>(size_); }
  int capacity() const { return capacity_; }
  const EncodedTransition& at(int i) const { return storage_[i]; }

  // Uniform batch without replacement (Floyd's sampling), deterministic
  // given the rng state. Reuses `out`.
  void sample(int batch, Rng& rng, std::vector<const EncodedTransition*>& out) const;

 private:
  int capacity_;
  std::size_t size_ = 0;
  std::size_t cursor_ = 0;
  std::vector<EncodedTransition> storage_;
};

double epsilon_at(std::uint64_t step, const AgentConfig& config);

// argmax with ties to the lowest index
int argmax_action(std::span<const double> q);

int act_epsilon_greedy(const QNetwork& net, std::span<const double> state, double epsilon,
                       Rng& rng);

// Double-Q target: action picked by the online network, value read from
// the target network; terminal transitions use the raw reward.
double compute_target(const QNetwork& online, const QNetwork& target, const EncodedTransition& t,
                      double gamma);

class DqnAgent {
 public:
  DqnAgent(const AgentConfig& config, int state_width, int n_actions);

  const AgentConfig& config() const { return config_; }
  QNetwork& online() { return online_; }
  const QNetwork& online() const { return online_; }
  const QNetwork& target() const { return target_; }
  ReplayBuffer& buffer() { return buffer_; }
  Rng& rng() { return rng_; }

  void sync_target();  // bit-exact copy of the online weights
  std::uint64_t sync_count() const { return sync_count_; }

  // One gradient step on the given batch; returns the pre-update loss.
  double train_step(std::span<const EncodedTransition* const> batch);

  void save(const std::string& path) const;
  void load(const std::string& path);  // verifies the config hash

 private:
  void apply_gradients();

  AgentConfig config_;
  QNetwork online_;
  QNetwork target_;
  ReplayBuffer buffer_;
  Rng rng_;
  std::uint64_t sync_count_ = 0;

  BatchWorkspace ws_main_, ws_aux_;
  Matrix dout_;
  Gradients grads_;
  std::vector<double> targets_;
  // adam state, allocated on first use
  Gradients adam_m_, adam_v_;
  std::uint64_t adam_t_ = 0;
};

double train_step(DqnAgent& agent, std::span<const EncodedTransition* const> batch);
void sync_target(DqnAgent& agent);

}  // namespace slicesim
