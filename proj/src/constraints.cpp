#include "slicesim/constraints.hpp"

#include <algorithm>
#include <stdexcept>

namespace slicesim {

void Placement::assign(int slice_id, int vnf_index, int infra) {
  slots_[key(slice_id, vnf_index)] = infra;
}

void Placement::unassign(int slice_id, int vnf_index) { slots_.erase(key(slice_id, vnf_index)); }

std::optional<int> Placement::infra_of(int slice_id, int vnf_index) const {
  auto it = slots_.find(key(slice_id, vnf_index));
  if (it == slots_.end()) return std::nullopt;
  return it->second;
}

bool check_complete(const Placement& p, const Scenario& scenario) {
  const int n_infras = static_cast<int>(scenario.infrastructures.size());
  for (const auto& req : scenario.requests) {
    for (std::size_t v = 0; v < req.vnfs.size(); ++v) {
      auto m = p.infra_of(req.id, static_cast<int>(v));
      if (!m || *m < 0 || *m >= n_infras) return false;
    }
  }
  return true;
}

bool check_capacity(const Placement& p, const Scenario& scenario) {
  if (!check_complete(p, scenario)) throw std::invalid_argument("capacity check needs a complete placement");
  CapacityTracker used(scenario);
  for (const auto& req : scenario.requests) {
    for (std::size_t v = 0; v < req.vnfs.size(); ++v) {
      const int m = *p.infra_of(req.id, static_cast<int>(v));
      used.add(m, req.vnfs[v].cpu_demand, req.vnfs[v].mem_demand);
    }
  }
  for (const auto& infra : scenario.infrastructures) {
    if (used.used_cpu(infra.id) > infra.cpu_capacity) return false;
    if (used.used_mem(infra.id) > infra.mem_capacity) return false;
  }
  return true;
}

namespace {

// User-plane VNF indices of a request ordered by chain position.
std::vector<int> chain_order(const SliceRequest& request) {
  std::vector<int> idx;
  for (std::size_t v = 0; v < request.vnfs.size(); ++v)
    if (request.vnfs[v].plane == Plane::user) idx.push_back(static_cast<int>(v));
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return request.vnfs[a].chain_index.value() < request.vnfs[b].chain_index.value();
  });
  return idx;
}

}  // namespace

double user_plane_latency(const Placement& p, const SliceRequest& request,
                          const Scenario& scenario, LatencyMode mode, Rng* rng) {
  const auto chain = chain_order(request);
  if (chain.empty()) return 0.0;
  std::vector<int> at(chain.size());
  for (std::size_t i = 0; i < chain.size(); ++i) {
    auto m = p.infra_of(request.id, chain[i]);
    if (!m)
      throw std::invalid_argument("user-plane VNF unassigned for slice " + std::to_string(request.id));
    at[i] = *m;
  }
  if (mode == LatencyMode::sampled && rng == nullptr)
    throw std::invalid_argument("sampled latency mode needs an rng");

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    if (mode == LatencyMode::mean)
      total += scenario.latency_model.mean(at[i], at[i + 1]);
    else
      total += sample_link_latency(scenario.latency_model, at[i], at[i + 1], *rng);
  }
  total += scenario.infrastructures[at.back()].dn_latency_ms;
  return total;
}

bool check_latency(const Placement& p, const SliceRequest& request, const Scenario& scenario) {
  return user_plane_latency(p, request, scenario, LatencyMode::mean) < request.latency_budget_ms;
}

bool check_consolidation(const Placement& p, const SliceRequest& request) {
  if (!request.consolidation_required) return true;
  std::optional<int> home;
  for (std::size_t v = 0; v < request.vnfs.size(); ++v) {
    auto m = p.infra_of(request.id, static_cast<int>(v));
    if (!m) continue;
    if (!home) home = *m;
    else if (*home != *m) return false;
  }
  return true;
}

namespace {

double unit_weight(const VnfSpec& v, CostForm form) {
  return form == CostForm::product ? v.cpu_demand * v.mem_demand : v.cpu_demand + v.mem_demand;
}

double cost_over_assigned(const Placement& p, const Scenario& scenario, bool require_complete) {
  std::vector<double> terms;
  for (const auto& req : scenario.requests) {
    for (std::size_t v = 0; v < req.vnfs.size(); ++v) {
      auto m = p.infra_of(req.id, static_cast<int>(v));
      if (!m) {
        if (require_complete) throw std::invalid_argument("cost of an incomplete placement");
        continue;
      }
      terms.push_back(scenario.infrastructures[*m].unit_cost *
                      unit_weight(req.vnfs[v], scenario.cost_form));
    }
  }
  return sum_cost_terms(terms);
}

}  // namespace

double sum_cost_terms(std::vector<double>& terms) {
  // insertion sort; term lists are small and this runs in tight loops
  if (terms.size() <= 32) {
    for (std::size_t i = 1; i < terms.size(); ++i) {
      const double x = terms[i];
      std::size_t j = i;
      for (; j > 0 && terms[j - 1] > x; --j) terms[j] = terms[j - 1];
      terms[j] = x;
    }
  } else {
    std::sort(terms.begin(), terms.end());
  }
  double total = 0.0;
  for (double t : terms) total += t;
  return total;
}

double placement_cost(const Placement& p, const Scenario& scenario) {
  return cost_over_assigned(p, scenario, true);
}

double deployed_cost(const Placement& p, const Scenario& scenario) {
  return cost_over_assigned(p, scenario, false);
}

FeasibilityReport is_feasible(const Placement& p, const Scenario& scenario) {
  FeasibilityReport rep;
  rep.complete = true;
  rep.capacity_ok = true;
  rep.latency_ok = true;
  rep.consolidation_ok = true;

  const int n_infras = static_cast<int>(scenario.infrastructures.size());
  CapacityTracker used(scenario);
  for (const auto& req : scenario.requests) {
    bool all_assigned = true;
    bool user_plane_assigned = true;
    for (std::size_t v = 0; v < req.vnfs.size(); ++v) {
      auto m = p.infra_of(req.id, static_cast<int>(v));
      if (!m || *m < 0 || *m >= n_infras) {
        all_assigned = false;
        if (req.vnfs[v].plane == Plane::user) user_plane_assigned = false;
        continue;
      }
      used.add(*m, req.vnfs[v].cpu_demand, req.vnfs[v].mem_demand);
    }
    if (!all_assigned) {
      rep.complete = false;
      rep.violated.push_back({ConstraintId::completeness, req.id});
    }
    if (user_plane_assigned) {
      if (!check_latency(p, req, scenario)) {
        rep.latency_ok = false;
        rep.violated.push_back({ConstraintId::latency, req.id});
      }
    } else {
      rep.latency_ok = false;
    }
    if (!check_consolidation(p, req)) {
      rep.consolidation_ok = false;
      rep.violated.push_back({ConstraintId::consolidation, req.id});
    }
  }
  for (const auto& infra : scenario.infrastructures) {
    if (used.used_cpu(infra.id) > infra.cpu_capacity) {
      rep.capacity_ok = false;
      rep.violated.push_back({ConstraintId::cpu_capacity, infra.id});
    }
    if (used.used_mem(infra.id) > infra.mem_capacity) {
      rep.capacity_ok = false;
      rep.violated.push_back({ConstraintId::mem_capacity, infra.id});
    }
  }
  return rep;
}

CapacityTracker::CapacityTracker(const Scenario& scenario) {
  const std::size_t n = scenario.infrastructures.size();
  cpu_cap_.resize(n);
  mem_cap_.resize(n);
  used_cpu_.assign(n, 0.0);
  used_mem_.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    cpu_cap_[i] = scenario.infrastructures[i].cpu_capacity;
    mem_cap_[i] = scenario.infrastructures[i].mem_capacity;
  }
}

bool CapacityTracker::fits(int infra, double cpu, double mem) const {
  return used_cpu_[infra] + cpu <= cpu_cap_[infra] && used_mem_[infra] + mem <= mem_cap_[infra];
}

void CapacityTracker::add(int infra, double cpu, double mem) {
  used_cpu_[infra] += cpu;
  used_mem_[infra] += mem;
}

void CapacityTracker::restore(int infra, double cpu_used, double mem_used) {
  used_cpu_[infra] = cpu_used;
  used_mem_[infra] = mem_used;
}

}  // namespace slicesim
