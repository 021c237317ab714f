#include "slicesim/nn.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace slicesim {

QNetwork QNetwork::make(const std::vector<int>& sizes, Rng& rng) {
  if (sizes.size() < 2) throw std::invalid_argument("network needs input and output widths");
  QNetwork net;
  net.layer_sizes = sizes;
  net.layers.resize(sizes.size() - 1);
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    const int n_in = sizes[l];
    const int n_out = sizes[l + 1];
    auto& layer = net.layers[l];
    layer.w.resize(n_out, n_in);
    layer.b.assign(static_cast<std::size_t>(n_out), 0.0);
    const double bound = std::sqrt(6.0 / (n_in + n_out));
    for (double& w : layer.w.data) w = (2.0 * rng.uniform() - 1.0) * bound;
  }
  return net;
}

std::vector<double> QNetwork::forward(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != input_width())
    throw std::invalid_argument("state width " + std::to_string(x.size()) +
                                " does not match network input " + std::to_string(input_width()));
  std::vector<double> cur(x.begin(), x.end());
  std::vector<double> next;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const bool relu = l + 1 < layers.size();
    const int n_in = layer_sizes[l];
    const int n_out = layer_sizes[l + 1];
    next.assign(static_cast<std::size_t>(n_out), 0.0);
    for (int i = 0; i < n_out; ++i) {
      const double acc = detail::dot_bias(layers[l].w.row(i), cur.data(), n_in, layers[l].b[i]);
      next[i] = relu && acc < 0.0 ? 0.0 : acc;
    }
    cur.swap(next);
  }
  forward_calls.fetch_add(1, std::memory_order_relaxed);
  return cur;
}

std::size_t parameter_count(const QNetwork& net) {
  std::size_t n = 0;
  for (const auto& layer : net.layers) n += layer.w.data.size() + layer.b.size();
  return n;
}

namespace {
constexpr char kMagic[4] = {'S', 'L', 'Q', 'N'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void write_pod(std::ofstream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
void read_pod(std::ifstream& is, T& v) {
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
}
}  // namespace

void save_checkpoint(const QNetwork& net, std::uint64_t config_hash, const std::string& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write checkpoint: " + path);
  os.write(kMagic, sizeof(kMagic));
  write_pod(os, kVersion);
  write_pod(os, config_hash);
  write_pod(os, static_cast<std::uint32_t>(net.layer_sizes.size()));
  for (int s : net.layer_sizes) write_pod(os, static_cast<std::uint32_t>(s));
  for (const auto& layer : net.layers) {
    os.write(reinterpret_cast<const char*>(layer.w.data.data()),
             static_cast<std::streamsize>(layer.w.data.size() * sizeof(double)));
    os.write(reinterpret_cast<const char*>(layer.b.data()),
             static_cast<std::streamsize>(layer.b.size() * sizeof(double)));
  }
  if (!os) throw std::runtime_error("short write on checkpoint: " + path);
}

LoadedCheckpoint load_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read checkpoint: " + path);
  char magic[4];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error("not a checkpoint file: " + path);
  std::uint32_t version = 0;
  read_pod(is, version);
  if (version != kVersion)
    throw std::runtime_error("unsupported checkpoint version " + std::to_string(version));

  LoadedCheckpoint out;
  read_pod(is, out.config_hash);
  std::uint32_t n_sizes = 0;
  read_pod(is, n_sizes);
  if (n_sizes < 2 || n_sizes > 64) throw std::runtime_error("corrupt checkpoint: " + path);
  out.net.layer_sizes.resize(n_sizes);
  for (auto& s : out.net.layer_sizes) {
    std::uint32_t v = 0;
    read_pod(is, v);
    s = static_cast<int>(v);
  }
  out.net.layers.resize(n_sizes - 1);
  for (std::size_t l = 0; l + 1 < n_sizes; ++l) {
    auto& layer = out.net.layers[l];
    layer.w.resize(out.net.layer_sizes[l + 1], out.net.layer_sizes[l]);
    layer.b.assign(static_cast<std::size_t>(out.net.layer_sizes[l + 1]), 0.0);
    is.read(reinterpret_cast<char*>(layer.w.data.data()),
            static_cast<std::streamsize>(layer.w.data.size() * sizeof(double)));
    is.read(reinterpret_cast<char*>(layer.b.data()),
            static_cast<std::streamsize>(layer.b.size() * sizeof(double)));
  }
  if (!is) throw std::runtime_error("truncated checkpoint: " + path);
  return out;
}

}  // namespace slicesim
