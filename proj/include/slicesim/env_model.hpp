#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "slicesim/rng.hpp"

namespace slicesim {

enum class SliceType { urllc, embb, mmtc };

constexpr int kNumSliceTypes = 3;

std::string to_string(SliceType t);
SliceType slice_type_from_string(const std::string& s);

enum class Plane { user, control };

struct VnfSpec {
  std::string name;
  Plane plane = Plane::control;
  double cpu_demand = 0.0;  // cores
  double mem_demand = 0.0;  // GiB
  // position in the user-plane chain (DU=0, CU=1, UPF=2); unset for control plane
  std::optional<int> chain_index;
};

enum class Tier { edge, distributed, central };

std::string to_string(Tier t);

struct Infrastructure {
  int id = 0;
  Tier tier = Tier::edge;
  double cpu_capacity = 0.0;
  double mem_capacity = 0.0;
  double unit_cost = 0.0;      // $/h per reserved unit
  double dn_latency_ms = 0.0;  // UPF-to-data-network latency for this tier
};

// Pairwise inter-infrastructure latency distributions. Symmetric, zero on
// the diagonal (collocated VNFs see no link latency).
class LatencyModel {
 public:
  LatencyModel() = default;
  explicit LatencyModel(int n_infras);

  void set_pair(int a, int b, double mean_ms, double stddev_ms);
  double mean(int a, int b) const;
  double stddev(int a, int b) const;
  int size() const { return n_; }

  void validate() const;  // throws on asymmetry, negative params, nonzero diagonal

 private:
  void check_pair(int a, int b) const;
  int n_ = 0;
  std::vector<double> mean_;    // n x n row-major
  std::vector<double> stddev_;  // n x n row-major
};

struct SliceRequest {
  int id = 0;
  SliceType slice_type = SliceType::embb;
  std::vector<VnfSpec> vnfs;
  double latency_budget_ms = 0.0;  // strict upper bound on user-plane latency
  bool consolidation_required = false;
  int arrival_index = 0;
};

enum class CostForm { product, weighted_sum };

struct Scenario {
  std::vector<Infrastructure> infrastructures;
  LatencyModel latency_model;
  std::vector<SliceRequest> requests;  // processed in arrival order
  std::uint64_t rng_seed = 0;
  CostForm cost_form = CostForm::product;

  double total_cpu_capacity() const;
  double total_mem_capacity() const;
};

struct Catalog {
  std::vector<Infrastructure> infrastructures;
  std::vector<VnfSpec> vnfs;
  LatencyModel latency_model;
};

// The built-in three-tier configuration: edge (16,16) at 0.010 $/h,
// distributed (32,32) at 0.005 $/h, central (64,64) at 0.001 $/h, the
// seven-VNF slice template, and the Gaussian inter-cloud latency pairs.
// The edge<->central pair is not measured anywhere; it is composed as the
// sum of the edge<->distributed and distributed<->central legs and can be
// overridden in a scenario file.
Catalog default_catalog();

double latency_budget_for(SliceType t);
bool default_consolidation_for(SliceType t);

// Builds a request carrying the full VNF catalog.
SliceRequest make_request(int id, SliceType type, const std::vector<VnfSpec>& catalog_vnfs,
                          int arrival_index);

struct SliceDemand {
  double cpu = 0.0;
  double mem = 0.0;
};

SliceDemand slice_total_demand(const SliceRequest& request);

// One Gaussian draw for the (a, b) pair, clamped at zero. Zero-stddev pairs
// return the mean without consuming randomness.
double sample_link_latency(const LatencyModel& model, int a, int b, Rng& rng);

// Slice types are drawn i.i.d. with probabilities 0.2 / 0.3 / 0.5 for
// URLLC / eMBB / mMTC; budgets and consolidation flags follow the type
// defaults. Pure function of (n_slices, seed).
Scenario generate_scenario(int n_slices, std::uint64_t seed);

Scenario generate_scenario(int n_slices, std::uint64_t seed, const Catalog& catalog);

}  // namespace slicesim
