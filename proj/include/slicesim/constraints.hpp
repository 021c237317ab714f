#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "slicesim/env_model.hpp"
#include "slicesim/rng.hpp"

namespace slicesim {

// Assignment of (slice id, VNF index) pairs to infrastructure indices.
// May be partial while a solver is constructing it.
class Placement {
 public:
  void assign(int slice_id, int vnf_index, int infra);
  void unassign(int slice_id, int vnf_index);
  std::optional<int> infra_of(int slice_id, int vnf_index) const;
  std::size_t size() const { return slots_.size(); }

  bool operator==(const Placement& other) const { return slots_ == other.slots_; }

 private:
  static std::uint64_t key(int slice_id, int vnf_index) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(slice_id)) << 32) |
           static_cast<std::uint32_t>(vnf_index);
  }
  std::unordered_map<std::uint64_t, int> slots_;
};

enum class ConstraintId {
  completeness,   // every VNF assigned to exactly one infrastructure
  cpu_capacity,   // per-infrastructure CPU demand within capacity
  mem_capacity,   // per-infrastructure memory demand within capacity
  latency,        // user-plane chain latency under the slice budget
  consolidation,  // all VNFs of a flagged slice on one infrastructure
};

struct Violation {
  ConstraintId constraint;
  int subject;  // slice id for latency/consolidation/completeness, infra id for capacity
};

struct FeasibilityReport {
  bool complete = false;
  bool capacity_ok = false;
  bool latency_ok = false;
  bool consolidation_ok = false;
  std::vector<Violation> violated;  // every violation, not just the first

  bool feasible() const { return complete && capacity_ok && latency_ok && consolidation_ok; }
};

bool check_complete(const Placement& p, const Scenario& scenario);

// Requires a complete placement; throws std::invalid_argument otherwise.
bool check_capacity(const Placement& p, const Scenario& scenario);

enum class LatencyMode { mean, sampled };

// Sum of link latencies along the user-plane chain hops plus the
// data-network latency of the UPF's infrastructure. Control-plane
// placement does not contribute. Throws if a user-plane VNF is unassigned.
double user_plane_latency(const Placement& p, const SliceRequest& request,
                          const Scenario& scenario, LatencyMode mode, Rng* rng = nullptr);

// Mean-mode latency strictly below the slice budget.
bool check_latency(const Placement& p, const SliceRequest& request, const Scenario& scenario);

bool check_consolidation(const Placement& p, const SliceRequest& request);

// Sums per-assignment cost terms in ascending value order. Every cost the
// project reports goes through this, so placements that differ only by
// permuting identical slices produce bit-identical totals.
double sum_cost_terms(std::vector<double>& terms);

// Hourly reservation cost of a complete placement. Throws on incomplete
// placements.
double placement_cost(const Placement& p, const Scenario& scenario);

// Cost over whichever slots are assigned; equals placement_cost when the
// placement is complete. Used for metrics when slices were rejected.
double deployed_cost(const Placement& p, const Scenario& scenario);

// Aggregates all five checks over a possibly partial placement. Capacity is
// evaluated over assigned slots; latency only for requests whose user plane
// is fully assigned; consolidation over assigned slots of flagged requests.
FeasibilityReport is_feasible(const Placement& p, const Scenario& scenario);

// Shared capacity bookkeeping. Accumulates "used" from zero in the order
// placements are made, so that a canonical (arrival, VNF) re-summation of
// the final placement reproduces the same doubles bit for bit.
class CapacityTracker {
 public:
  explicit CapacityTracker(const Scenario& scenario);

  bool fits(int infra, double cpu, double mem) const;
  void add(int infra, double cpu, double mem);
  // exact rollback for search backtracking; subtracting the delta instead
  // could drift the accumulated sums
  void restore(int infra, double cpu_used, double mem_used);

  double used_cpu(int infra) const { return used_cpu_[infra]; }
  double used_mem(int infra) const { return used_mem_[infra]; }
  double free_cpu(int infra) const { return cpu_cap_[infra] - used_cpu_[infra]; }
  double free_mem(int infra) const { return mem_cap_[infra] - used_mem_[infra]; }
  int size() const { return static_cast<int>(cpu_cap_.size()); }

 private:
  std::vector<double> cpu_cap_, mem_cap_;
  std::vector<double> used_cpu_, used_mem_;
};

}  // namespace slicesim
