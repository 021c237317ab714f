#pragma once

#include "slicesim/nn.hpp"

namespace slicesim {

enum class Parallel { serial, openmp };

// Per-layer activations for a batch pass. acts[0] holds the inputs
// (batch x in); acts[l+1] the outputs of layer l. Reused across steps to
// keep the training loop allocation-free.
struct BatchWorkspace {
  std::vector<Matrix> acts;
  Matrix delta_a, delta_b;  // alternating backprop buffers

  void prepare(const QNetwork& net, int batch);
};

struct Gradients {
  std::vector<Matrix> dw;
  std::vector<std::vector<double>> db;

  void prepare(const QNetwork& net);
  void zero();
};

// Batch forward pass; inputs are ws.acts[0] (batch x input_width), outputs
// land in ws.acts.back(). The OpenMP kernel splits work so that every
// output entry is accumulated in the same order as the serial kernel, so
// the two produce bit-identical results for any thread count. The serial
// version is the reference the tests compare against.
void forward_batch_serial(const QNetwork& net, BatchWorkspace& ws, int batch);
void forward_batch_omp(const QNetwork& net, BatchWorkspace& ws, int batch);
void forward_batch(const QNetwork& net, BatchWorkspace& ws, int batch, Parallel mode);

// Backpropagation from dLoss/dOutput (batch x output_width, caller-owned in
// `dout`) through the activations recorded by the forward pass. Gradients
// are summed over the batch in fixed element order.
void backward_batch_serial(const QNetwork& net, BatchWorkspace& ws, const Matrix& dout,
                           Gradients& grads, int batch);
void backward_batch_omp(const QNetwork& net, BatchWorkspace& ws, const Matrix& dout,
                        Gradients& grads, int batch);
void backward_batch(const QNetwork& net, BatchWorkspace& ws, const Matrix& dout, Gradients& grads,
                    int batch, Parallel mode);

}  // namespace slicesim
