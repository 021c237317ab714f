// Compares the serial and OpenMP batch kernels on the network shapes the
// agents actually use, and checks the outputs agree bit for bit.
#include <chrono>
#include <cstdio>
#include <vector>

#include "slicesim/nn_kernels.hpp"

using namespace slicesim;
using Clock = std::chrono::steady_clock;

namespace {

double time_pass(const QNetwork& net, BatchWorkspace& ws, Matrix& dout, Gradients& grads,
                 int batch, Parallel mode, int iters) {
  const auto t0 = Clock::now();
  for (int it = 0; it < iters; ++it) {
    forward_batch(net, ws, batch, mode);
    backward_batch(net, ws, dout, grads, batch, mode);
  }
  return std::chrono::duration<double>(Clock::now() - t0).count() / iters;
}

}  // namespace

int main() {
  constexpr int kBatch = 32;
  constexpr int kIters = 200;
  const std::vector<std::vector<int>> shapes = {
      {27, 128, 128, 128, 3},
      {30, 128, 128, 128, 3},
      {27, 256, 256, 256, 3},
  };

  std::printf("%-24s %12s %12s %8s %s\n", "shape", "serial_us", "openmp_us", "speedup",
              "bit_equal");
  for (const auto& shape : shapes) {
    Rng rng(42);
    QNetwork net = QNetwork::make(shape, rng);
    BatchWorkspace ws;
    ws.prepare(net, kBatch);
    for (double& v : ws.acts[0].data) v = rng.uniform();
    Matrix dout(kBatch, shape.back());
    for (double& v : dout.data) v = rng.uniform() - 0.5;
    Gradients grads_serial, grads_omp;
    grads_serial.prepare(net);
    grads_omp.prepare(net);

    // warm up and correctness check
    forward_batch(net, ws, kBatch, Parallel::serial);
    backward_batch(net, ws, dout, grads_serial, kBatch, Parallel::serial);
    const Matrix out_serial = ws.acts.back();
    forward_batch(net, ws, kBatch, Parallel::openmp);
    backward_batch(net, ws, dout, grads_omp, kBatch, Parallel::openmp);
    bool equal = out_serial.data == ws.acts.back().data;
    for (std::size_t l = 0; l < grads_serial.dw.size() && equal; ++l)
      equal = grads_serial.dw[l].data == grads_omp.dw[l].data &&
              grads_serial.db[l] == grads_omp.db[l];

    const double t_serial = time_pass(net, ws, dout, grads_serial, kBatch, Parallel::serial, kIters);
    const double t_omp = time_pass(net, ws, dout, grads_omp, kBatch, Parallel::openmp, kIters);

    char label[64];
    std::snprintf(label, sizeof(label), "%d-%d-%d-%d-%d", shape[0], shape[1], shape[2], shape[3],
                  shape[4]);
    std::printf("%-24s %12.1f %12.1f %8.2f %s\n", label, t_serial * 1e6, t_omp * 1e6,
                t_serial / t_omp, equal ? "yes" : "NO");
  }
  return 0;
}
