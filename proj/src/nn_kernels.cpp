#include "slicesim/nn_kernels.hpp"

#include <algorithm>

namespace slicesim {

void BatchWorkspace::prepare(const QNetwork& net, int batch) {
  const std::size_t n_layers = net.layers.size();
  acts.resize(n_layers + 1);
  int max_width = 0;
  for (std::size_t l = 0; l <= n_layers; ++l) {
    const int w = net.layer_sizes[l];
    max_width = std::max(max_width, w);
    if (acts[l].rows != batch || acts[l].cols != w) acts[l].resize(batch, w);
  }
  if (delta_a.rows != batch || delta_a.cols != max_width) delta_a.resize(batch, max_width);
  if (delta_b.rows != batch || delta_b.cols != max_width) delta_b.resize(batch, max_width);
}

void Gradients::prepare(const QNetwork& net) {
  dw.resize(net.layers.size());
  db.resize(net.layers.size());
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    if (dw[l].rows != net.layers[l].w.rows || dw[l].cols != net.layers[l].w.cols)
      dw[l].resize(net.layers[l].w.rows, net.layers[l].w.cols);
    db[l].assign(net.layers[l].b.size(), 0.0);
  }
}

void Gradients::zero() {
  for (auto& m : dw) std::fill(m.data.begin(), m.data.end(), 0.0);
  for (auto& v : db) std::fill(v.begin(), v.end(), 0.0);
}

namespace {

inline void forward_row(const QNetwork::Layer& layer, const double* in, double* out, int n_in,
                        int n_out, bool relu) {
  for (int i = 0; i < n_out; ++i) {
    const double acc = detail::dot_bias(layer.w.row(i), in, n_in, layer.b[i]);
    out[i] = relu && acc < 0.0 ? 0.0 : acc;
  }
}

}  // namespace

void forward_batch_serial(const QNetwork& net, BatchWorkspace& ws, int batch) {
  const int n_layers = static_cast<int>(net.layers.size());
  for (int l = 0; l < n_layers; ++l) {
    const bool relu = l + 1 < n_layers;
    const int n_in = net.layer_sizes[l];
    const int n_out = net.layer_sizes[l + 1];
    for (int k = 0; k < batch; ++k)
      forward_row(net.layers[l], ws.acts[l].row(k), ws.acts[l + 1].row(k), n_in, n_out, relu);
  }
  net.forward_calls.fetch_add(static_cast<std::uint64_t>(batch), std::memory_order_relaxed);
}

void forward_batch_omp(const QNetwork& net, BatchWorkspace& ws, int batch) {
  const int n_layers = static_cast<int>(net.layers.size());
  for (int l = 0; l < n_layers; ++l) {
    const bool relu = l + 1 < n_layers;
    const int n_in = net.layer_sizes[l];
    const int n_out = net.layer_sizes[l + 1];
#pragma omp parallel for schedule(static)
    for (int k = 0; k < batch; ++k)
      forward_row(net.layers[l], ws.acts[l].row(k), ws.acts[l + 1].row(k), n_in, n_out, relu);
  }
  net.forward_calls.fetch_add(static_cast<std::uint64_t>(batch), std::memory_order_relaxed);
}

void forward_batch(const QNetwork& net, BatchWorkspace& ws, int batch, Parallel mode) {
  if (mode == Parallel::openmp)
    forward_batch_omp(net, ws, batch);
  else
    forward_batch_serial(net, ws, batch);
}

namespace {

// dW[i][j] = sum_k delta[k][i] * act[k][j]; db[i] = sum_k delta[k][i].
// The k-loop is innermost and sequential so the reduction order never
// depends on the thread count.
inline void grad_rows(const Matrix& delta, const Matrix& act, Matrix& dw, std::vector<double>& db,
                      int batch, int n_out, int n_in, int i) {
  double* dwr = dw.row(i);
  double bsum = 0.0;
  for (int j = 0; j < n_in; ++j) dwr[j] = 0.0;
  for (int k = 0; k < batch; ++k) {
    const double d = delta.at(k, i);
    bsum += d;
    const double* a = act.row(k);
    for (int j = 0; j < n_in; ++j) dwr[j] += d * a[j];
  }
  db[i] = bsum;
  (void)n_out;
}

// delta_prev[k][j] = (sum_i delta[k][i] * W[i][j]) masked by the ReLU
// activation recorded in act_prev.
inline void delta_row(const QNetwork::Layer& layer, const double* delta, const double* act_prev,
                      double* out, int n_out, int n_in) {
  for (int j = 0; j < n_in; ++j) out[j] = 0.0;
  for (int i = 0; i < n_out; ++i) {
    const double d = delta[i];
    const double* w = layer.w.row(i);
    for (int j = 0; j < n_in; ++j) out[j] += d * w[j];
  }
  for (int j = 0; j < n_in; ++j)
    if (act_prev[j] <= 0.0) out[j] = 0.0;
}

template <bool UseOmp>
void backward_batch_impl(const QNetwork& net, BatchWorkspace& ws, const Matrix& dout,
                         Gradients& grads, int batch) {
  const int n_layers = static_cast<int>(net.layers.size());
  Matrix* delta = &ws.delta_a;
  Matrix* delta_next = &ws.delta_b;

  // seed with dLoss/dOutput
  {
    const int n_out = net.layer_sizes[n_layers];
    for (int k = 0; k < batch; ++k) {
      const double* src = dout.row(k);
      double* dst = delta->row(k);
      for (int i = 0; i < n_out; ++i) dst[i] = src[i];
    }
  }

  for (int l = n_layers - 1; l >= 0; --l) {
    const int n_in = net.layer_sizes[l];
    const int n_out = net.layer_sizes[l + 1];
    const Matrix& act_in = ws.acts[l];

    // delta rows are (batch x width of this layer); delta matrices are
    // wider scratch buffers, only the first n_out columns are live
#pragma omp parallel for schedule(static) if (UseOmp)
    for (int i = 0; i < n_out; ++i)
      grad_rows(*delta, act_in, grads.dw[l], grads.db[l], batch, n_out, n_in, i);

    if (l > 0) {
#pragma omp parallel for schedule(static) if (UseOmp)
      for (int k = 0; k < batch; ++k)
        delta_row(net.layers[l], delta->row(k), act_in.row(k), delta_next->row(k), n_out, n_in);
      std::swap(delta, delta_next);
    }
  }
}

}  // namespace

void backward_batch_serial(const QNetwork& net, BatchWorkspace& ws, const Matrix& dout,
                           Gradients& grads, int batch) {
  backward_batch_impl<false>(net, ws, dout, grads, batch);
}

void backward_batch_omp(const QNetwork& net, BatchWorkspace& ws, const Matrix& dout,
                        Gradients& grads, int batch) {
  backward_batch_impl<true>(net, ws, dout, grads, batch);
}

void backward_batch(const QNetwork& net, BatchWorkspace& ws, const Matrix& dout, Gradients& grads,
                    int batch, Parallel mode) {
  if (mode == Parallel::openmp)
    backward_batch_omp(net, ws, dout, grads, batch);
  else
    backward_batch_serial(net, ws, dout, grads, batch);
}

}  // namespace slicesim
