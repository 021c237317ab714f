#include "slicesim/env_model.hpp"

#include <algorithm>
#include <cmath>

namespace slicesim {

std::string to_string(SliceType t) {
  switch (t) {
    case SliceType::urllc: return "urllc";
    case SliceType::embb: return "embb";
    case SliceType::mmtc: return "mmtc";
  }
  throw std::logic_error("bad SliceType");
}

SliceType slice_type_from_string(const std::string& s) {
  if (s == "urllc" || s == "URLLC") return SliceType::urllc;
  if (s == "embb" || s == "eMBB") return SliceType::embb;
  if (s == "mmtc" || s == "mMTC") return SliceType::mmtc;
  throw std::invalid_argument("unknown slice type: " + s);
}

std::string to_string(Tier t) {
  switch (t) {
    case Tier::edge: return "edge";
    case Tier::distributed: return "distributed";
    case Tier::central: return "central";
  }
  throw std::logic_error("bad Tier");
}

LatencyModel::LatencyModel(int n_infras) : n_(n_infras) {
  mean_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
  stddev_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
}

void LatencyModel::check_pair(int a, int b) const {
  if (a < 0 || b < 0 || a >= n_ || b >= n_)
    throw std::out_of_range("latency pair (" + std::to_string(a) + "," + std::to_string(b) +
                            ") outside model of size " + std::to_string(n_));
}

void LatencyModel::set_pair(int a, int b, double mean_ms, double stddev_ms) {
  check_pair(a, b);
  if (mean_ms < 0.0 || stddev_ms < 0.0) throw std::invalid_argument("negative latency parameter");
  if (a == b && (mean_ms != 0.0 || stddev_ms != 0.0))
    throw std::invalid_argument("diagonal latency entries must be (0, 0)");
  mean_[static_cast<std::size_t>(a) * n_ + b] = mean_ms;
  mean_[static_cast<std::size_t>(b) * n_ + a] = mean_ms;
  stddev_[static_cast<std::size_t>(a) * n_ + b] = stddev_ms;
  stddev_[static_cast<std::size_t>(b) * n_ + a] = stddev_ms;
}

double LatencyModel::mean(int a, int b) const {
  check_pair(a, b);
  return mean_[static_cast<std::size_t>(a) * n_ + b];
}

double LatencyModel::stddev(int a, int b) const {
  check_pair(a, b);
  return stddev_[static_cast<std::size_t>(a) * n_ + b];
}

void LatencyModel::validate() const {
  for (int a = 0; a < n_; ++a) {
    if (mean(a, a) != 0.0 || stddev(a, a) != 0.0)
      throw std::invalid_argument("latency model diagonal not zero");
    for (int b = 0; b < n_; ++b) {
      if (mean(a, b) < 0.0 || stddev(a, b) < 0.0)
        throw std::invalid_argument("negative latency parameter");
      if (mean(a, b) != mean(b, a) || stddev(a, b) != stddev(b, a))
        throw std::invalid_argument("latency model not symmetric");
    }
  }
}

double Scenario::total_cpu_capacity() const {
  double s = 0.0;
  for (const auto& m : infrastructures) s += m.cpu_capacity;
  return s;
}

double Scenario::total_mem_capacity() const {
  double s = 0.0;
  for (const auto& m : infrastructures) s += m.mem_capacity;
  return s;
}

Catalog default_catalog() {
  Catalog c;
  c.infrastructures = {
      {0, Tier::edge, 16.0, 16.0, 0.010, 5.0},
      {1, Tier::distributed, 32.0, 32.0, 0.005, 7.5},
      {2, Tier::central, 64.0, 64.0, 0.001, 10.0},
  };
  c.vnfs = {
      {"NRF", Plane::control, 0.15, 0.128, std::nullopt},
      {"UDR/UDM/AUSF", Plane::control, 0.65, 0.896, std::nullopt},
      {"AMF", Plane::control, 0.25, 0.256, std::nullopt},
      {"SMF", Plane::control, 0.25, 0.256, std::nullopt},
      {"UPF", Plane::user, 0.5, 0.512, 2},
      {"CU", Plane::user, 0.5, 0.512, 1},
      {"DU", Plane::user, 3.0, 2.0, 0},
  };
  c.latency_model = LatencyModel(3);
  c.latency_model.set_pair(0, 1, 0.5, 0.1);
  c.latency_model.set_pair(1, 2, 20.0, 1.0);
  // edge<->central composed as the sum of the two measured legs
  c.latency_model.set_pair(0, 2, 20.5, std::sqrt(0.1 * 0.1 + 1.0 * 1.0));
  return c;
}

double latency_budget_for(SliceType t) {
  switch (t) {
    case SliceType::urllc: return 10.0;
    case SliceType::embb: return 20.0;
    case SliceType::mmtc: return 50.0;
  }
  throw std::logic_error("bad SliceType");
}

bool default_consolidation_for(SliceType t) { return t == SliceType::mmtc; }

SliceRequest make_request(int id, SliceType type, const std::vector<VnfSpec>& catalog_vnfs,
                          int arrival_index) {
  SliceRequest r;
  r.id = id;
  r.slice_type = type;
  r.vnfs = catalog_vnfs;
  r.latency_budget_ms = latency_budget_for(type);
  r.consolidation_required = default_consolidation_for(type);
  r.arrival_index = arrival_index;
  return r;
}

SliceDemand slice_total_demand(const SliceRequest& request) {
  SliceDemand d;
  for (const auto& v : request.vnfs) {
    d.cpu += v.cpu_demand;
    d.mem += v.mem_demand;
  }
  return d;
}

double sample_link_latency(const LatencyModel& model, int a, int b, Rng& rng) {
  const double mu = model.mean(a, b);
  const double sigma = model.stddev(a, b);
  if (sigma == 0.0) return std::max(mu, 0.0);
  return std::max(mu + sigma * rng.gaussian(), 0.0);
}

Scenario generate_scenario(int n_slices, std::uint64_t seed) {
  return generate_scenario(n_slices, seed, default_catalog());
}

Scenario generate_scenario(int n_slices, std::uint64_t seed, const Catalog& catalog) {
  if (n_slices <= 0) throw std::invalid_argument("n_slices must be positive");
  Scenario s;
  s.infrastructures = catalog.infrastructures;
  s.latency_model = catalog.latency_model;
  s.rng_seed = seed;
  Rng rng(mix_seed(seed, 0x5C3Au));
  s.requests.reserve(static_cast<std::size_t>(n_slices));
  for (int i = 0; i < n_slices; ++i) {
    const double u = rng.uniform();
    SliceType t = SliceType::mmtc;
    if (u < 0.2)
      t = SliceType::urllc;
    else if (u < 0.5)
      t = SliceType::embb;
    s.requests.push_back(make_request(i, t, catalog.vnfs, i));
  }
  return s;
}

}  // namespace slicesim
