#pragma once

#include <atomic>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "slicesim/rng.hpp"

namespace slicesim {

namespace detail {

// Dot product with eight independent accumulators combined in a fixed
// order: vectorizes without any reassociation by the compiler, so results
// are identical no matter which kernel or thread count computed them.
inline double dot_bias(const double* w, const double* x, int n, double bias) {
  double acc0 = 0, acc1 = 0, acc2 = 0, acc3 = 0, acc4 = 0, acc5 = 0, acc6 = 0, acc7 = 0;
  int j = 0;
  for (; j + 8 <= n; j += 8) {
    acc0 += w[j] * x[j];
    acc1 += w[j + 1] * x[j + 1];
    acc2 += w[j + 2] * x[j + 2];
    acc3 += w[j + 3] * x[j + 3];
    acc4 += w[j + 4] * x[j + 4];
    acc5 += w[j + 5] * x[j + 5];
    acc6 += w[j + 6] * x[j + 6];
    acc7 += w[j + 7] * x[j + 7];
  }
  double tail = 0.0;
  for (; j < n; ++j) tail += w[j] * x[j];
  return bias + (((acc0 + acc1) + (acc2 + acc3)) + ((acc4 + acc5) + (acc6 + acc7))) + tail;
}

}  // namespace detail

// Row-major dense matrix of doubles.
struct Matrix {
  int rows = 0, cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}

  void resize(int r, int c) {
    rows = r;
    cols = c;
    data.assign(static_cast<std::size_t>(r) * c, 0.0);
  }

  double* row(int r) { return data.data() + static_cast<std::size_t>(r) * cols; }
  const double* row(int r) const { return data.data() + static_cast<std::size_t>(r) * cols; }
  double& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
};

// Dense feed-forward value network: rectified-linear hidden layers,
// identity output, one Q-value per action.
struct QNetwork {
  struct Layer {
    Matrix w;                // out x in
    std::vector<double> b;   // out
  };

  std::vector<int> layer_sizes;  // input, hidden..., output
  std::vector<Layer> layers;
  // per-state evaluation count; atomic so concurrent inference stays clean
  mutable std::atomic<std::uint64_t> forward_calls{0};

  QNetwork() = default;
  QNetwork(const QNetwork& o)
      : layer_sizes(o.layer_sizes), layers(o.layers), forward_calls(o.forward_calls.load()) {}
  QNetwork(QNetwork&& o) noexcept
      : layer_sizes(std::move(o.layer_sizes)),
        layers(std::move(o.layers)),
        forward_calls(o.forward_calls.load()) {}
  QNetwork& operator=(const QNetwork& o) {
    layer_sizes = o.layer_sizes;
    layers = o.layers;
    forward_calls.store(o.forward_calls.load());
    return *this;
  }
  QNetwork& operator=(QNetwork&& o) noexcept {
    layer_sizes = std::move(o.layer_sizes);
    layers = std::move(o.layers);
    forward_calls.store(o.forward_calls.load());
    return *this;
  }

  int input_width() const { return layer_sizes.front(); }
  int output_width() const { return layer_sizes.back(); }

  // Xavier-uniform weights (+-sqrt(6/(fan_in+fan_out))), zero biases.
  static QNetwork make(const std::vector<int>& sizes, Rng& rng);

  // Single-state evaluation. Identical arithmetic order to the batch
  // kernels, so values agree bit for bit with a batch row.
  std::vector<double> forward(std::span<const double> x) const;
};

std::size_t parameter_count(const QNetwork& net);

// Versioned binary checkpoint: layer sizes, row-major weights, config hash.
// Round-trips bit-exactly on one machine.
void save_checkpoint(const QNetwork& net, std::uint64_t config_hash, const std::string& path);

struct LoadedCheckpoint {
  QNetwork net;
  std::uint64_t config_hash = 0;
};
LoadedCheckpoint load_checkpoint(const std::string& path);

}  // namespace slicesim
