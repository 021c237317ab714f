#include "slicesim/exact_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <unordered_map>
#include <map>

#include "slicesim/util.hpp"

namespace slicesim {

namespace {

using Clock = std::chrono::steady_clock;

double unit_weight(const VnfSpec& v, CostForm form) {
  return form == CostForm::product ? v.cpu_demand * v.mem_demand : v.cpu_demand + v.mem_demand;
}

// One latency-feasible assignment of a whole request. Costs of all requests
// sharing a template are identical, so these lists are computed once per
// template and branched in ascending cost; the cheapest prefix of the list
// is what the search dives into first.
struct InfraLoad {
  int m = 0;
  double cpu = 0.0, mem = 0.0;
};

struct RequestConfig {
  std::vector<int> assign;      // vnf index -> infrastructure
  double cost = 0.0;
  std::vector<InfraLoad> load;  // aggregate demand per touched infrastructure
};

struct ConfigList {
  std::vector<RequestConfig> configs;  // ascending (cost, assignment)
  double min_cost = 0.0;
};

std::vector<int> chain_order(const SliceRequest& req) {
  std::vector<int> idx;
  for (std::size_t v = 0; v < req.vnfs.size(); ++v)
    if (req.vnfs[v].plane == Plane::user) idx.push_back(static_cast<int>(v));
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return req.vnfs[a].chain_index.value() < req.vnfs[b].chain_index.value();
  });
  return idx;
}

bool config_latency_ok(const SliceRequest& req, const std::vector<int>& assign,
                       const Scenario& scenario, const std::vector<int>& chain) {
  if (chain.empty()) return true;
  double lat = 0.0;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    lat += scenario.latency_model.mean(assign[chain[i]], assign[chain[i + 1]]);
  lat += scenario.infrastructures[assign[chain.back()]].dn_latency_ms;
  return lat < req.latency_budget_ms;
}

void finalize_config(RequestConfig& c, const SliceRequest& req, const Scenario& scenario) {
  const int n_infras = static_cast<int>(scenario.infrastructures.size());
  std::vector<double> cpu(n_infras, 0.0), mem(n_infras, 0.0);
  for (std::size_t v = 0; v < req.vnfs.size(); ++v) {
    const int m = c.assign[v];
    c.cost += scenario.infrastructures[m].unit_cost * unit_weight(req.vnfs[v], scenario.cost_form);
    cpu[m] += req.vnfs[v].cpu_demand;
    mem[m] += req.vnfs[v].mem_demand;
  }
  for (int m = 0; m < n_infras; ++m)
    if (cpu[m] > 0.0 || mem[m] > 0.0) c.load.push_back({m, cpu[m], mem[m]});
}

ConfigList enumerate_request_configs(const SliceRequest& req, const Scenario& scenario) {
  const int n_infras = static_cast<int>(scenario.infrastructures.size());
  const int n_vnfs = static_cast<int>(req.vnfs.size());
  const auto chain = chain_order(req);

  ConfigList out;
  if (req.consolidation_required) {
    for (int m = 0; m < n_infras; ++m) {
      std::vector<int> assign(static_cast<std::size_t>(n_vnfs), m);
      if (!config_latency_ok(req, assign, scenario, chain)) continue;
      RequestConfig c;
      c.assign = std::move(assign);
      finalize_config(c, req, scenario);
      out.configs.push_back(std::move(c));
    }
  } else {
    double space = 1.0;
    for (int v = 0; v < n_vnfs; ++v) space *= n_infras;
    if (space > 1e6)
      throw std::invalid_argument("request assignment space too large for exact search");
    std::vector<int> assign(static_cast<std::size_t>(n_vnfs), 0);
    const auto total = static_cast<std::uint64_t>(space);
    for (std::uint64_t code = 0; code < total; ++code) {
      if (config_latency_ok(req, assign, scenario, chain)) {
        RequestConfig c;
        c.assign = assign;
        finalize_config(c, req, scenario);
        out.configs.push_back(std::move(c));
      }
      for (int v = 0; v < n_vnfs; ++v) {
        if (++assign[v] < n_infras) break;
        assign[v] = 0;
      }
    }
  }
  std::sort(out.configs.begin(), out.configs.end(),
            [](const RequestConfig& a, const RequestConfig& b) {
              if (a.cost != b.cost) return a.cost < b.cost;
              return a.assign < b.assign;
            });

  // configs with identical cost and per-infrastructure footprint are
  // interchangeable for everything downstream; keep the first of each
  auto same_load = [](const RequestConfig& a, const RequestConfig& b) {
    if (a.cost != b.cost || a.load.size() != b.load.size()) return false;
    for (std::size_t i = 0; i < a.load.size(); ++i)
      if (a.load[i].m != b.load[i].m || a.load[i].cpu != b.load[i].cpu ||
          a.load[i].mem != b.load[i].mem)
        return false;
    return true;
  };
  std::vector<RequestConfig> dedup;
  for (auto& c : out.configs) {
    bool dup = false;
    for (auto it = dedup.rbegin(); it != dedup.rend() && it->cost == c.cost; ++it)
      if (same_load(*it, c)) {
        dup = true;
        break;
      }
    if (!dup) dedup.push_back(std::move(c));
  }
  out.configs = std::move(dedup);
  out.min_cost = out.configs.empty() ? std::numeric_limits<double>::infinity()
                                     : out.configs.front().cost;
  return out;
}

std::uint64_t request_template_key(const SliceRequest& req, CostForm form) {
  std::uint64_t h = fnv1a64(to_string(req.slice_type));
  h = fnv1a64(format_double(req.latency_budget_ms), h);
  h = fnv1a64(req.consolidation_required ? "c1" : "c0", h);
  h = fnv1a64(form == CostForm::product ? "p" : "s", h);
  for (const auto& v : req.vnfs) {
    h = fnv1a64(v.name, h);
    h = fnv1a64(format_double(v.cpu_demand), h);
    h = fnv1a64(format_double(v.mem_demand), h);
    h = fnv1a64(v.plane == Plane::user ? "u" : "c", h);
    h = fnv1a64(v.chain_index ? std::to_string(*v.chain_index) : "-", h);
  }
  return h;
}

struct Searcher {
  const Scenario& scenario;
  std::vector<int> req_order;               // search positions -> request index;
                                            // fewest-configs-first (fail first)
  std::vector<const ConfigList*> lists;     // per search position
  std::vector<double> suffix_static_min;    // sum of per-position minima from r onward
  std::vector<int> prev_same;               // previous position with the same template
  CapacityTracker used;
  std::vector<int> chosen;                  // per request, index into its config list
  std::vector<int> best;
  double cost = 0.0;
  double best_cost = std::numeric_limits<double>::infinity();
  bool have_best = false;
  std::uint64_t nodes = 0;
  Clock::time_point deadline;
  bool has_deadline = false;
  bool timed_out = false;

  // distinct VNF demand classes across all requests, for the fractional bound
  struct VnfClass {
    double cpu = 0.0, mem = 0.0, weight = 0.0;
  };
  std::vector<VnfClass> classes;
  std::vector<std::vector<double>> suffix_class_cpu;  // [r][class] remaining cpu demand
  std::vector<std::vector<double>> suffix_class_mem;
  std::vector<int> cpu_density_order;  // weight per cpu, descending
  std::vector<int> mem_density_order;
  std::vector<int> infra_by_cost;      // ascending unit_cost

  explicit Searcher(const Scenario& s) : scenario(s), used(s) {}

  // Fractional relaxation over the remaining VNFs: capacity of one resource
  // only, latency and integrality ignored, splitting allowed. Densest
  // weight goes to the cheapest infrastructures first, which is the LP
  // optimum, so this never exceeds the true completion cost. Infinity when
  // the remaining demand cannot fit even fractionally.
  double fractional_bound(std::size_t r) const {
    double best_lb = 0.0;
    for (int resource = 0; resource < 2; ++resource) {
      const bool by_cpu = resource == 0;
      const auto& order = by_cpu ? cpu_density_order : mem_density_order;
      const auto& amounts = by_cpu ? suffix_class_cpu[r] : suffix_class_mem[r];
      double total = 0.0;
      for (double a : amounts) total += a;
      double lb = 0.0, allocated = 0.0;
      std::size_t oi = 0;
      double left = oi < order.size() ? amounts[order[oi]] : 0.0;
      for (int m : infra_by_cost) {
        double free = by_cpu ? used.free_cpu(m) : used.free_mem(m);
        const double lambda = scenario.infrastructures[m].unit_cost;
        while (free > 0.0 && oi < order.size()) {
          if (left <= 0.0) {
            if (++oi >= order.size()) break;
            left = amounts[order[oi]];
            continue;
          }
          const VnfClass& c = classes[order[oi]];
          const double density = by_cpu ? c.weight / c.cpu : c.weight / c.mem;
          const double take = std::min(free, left);
          lb += lambda * density * take;
          allocated += take;
          free -= take;
          left -= take;
        }
        if (oi >= order.size()) break;
      }
      if (total - allocated > 1e-9) return std::numeric_limits<double>::infinity();
      best_lb = std::max(best_lb, lb);
    }
    return best_lb;
  }

  bool out_of_time() {
    if (!has_deadline) return false;
    if ((nodes & 0xFFF) == 0 && Clock::now() > deadline) timed_out = true;
    return timed_out;
  }

  // Cheapest config of each remaining request that still fits the current
  // capacities on its own; capacities only shrink deeper in the tree, so
  // the sum is admissible. The fit test carries a small slack so rounding
  // differences against the sequential application can only make the bound
  // lower, never inadmissible. Infinity when some request no longer fits.
  double remaining_bound(std::size_t r) const {
    double lb = 0.0;
    // identical requests share a config list; memoize per list
    std::vector<std::pair<const ConfigList*, double>> memo;
    for (std::size_t j = r; j < lists.size(); ++j) {
      const ConfigList* list = lists[j];
      double cheapest = std::numeric_limits<double>::infinity();
      bool found = false;
      for (const auto& [ml, mv] : memo)
        if (ml == list) {
          cheapest = mv;
          found = true;
          break;
        }
      if (!found) {
        for (const auto& cfg : list->configs) {
          if (config_fits_loose(cfg)) {
            cheapest = cfg.cost;
            break;  // ascending cost
          }
        }
        memo.emplace_back(list, cheapest);
      }
      if (!std::isfinite(cheapest)) return cheapest;
      lb += cheapest;
    }
    return lb;
  }

  bool config_fits_loose(const RequestConfig& cfg) const {
    for (const auto& l : cfg.load) {
      if (used.used_cpu(l.m) + l.cpu > scenario.infrastructures[l.m].cpu_capacity + 1e-9)
        return false;
      if (used.used_mem(l.m) + l.mem > scenario.infrastructures[l.m].mem_capacity + 1e-9)
        return false;
    }
    return true;
  }

  // The completion cost of a node depends only on the position, the
  // remaining capacities and the per-template floors inherited from the
  // prefix, not on how the prefix got there; re-entering a seen state at
  // no lower cost is pointless. Keyed on the exact capacity bytes with a
  // second hash as a collision check, reset when oversized.
  struct StateEntry {
    std::uint64_t check = 0;
    double cost = 0.0;
  };
  std::unordered_map<std::uint64_t, StateEntry> seen_states;

  bool dominated_state(std::size_t r) {
    std::uint64_t h1 = 0xCBF29CE484222325ULL ^ (r * 0x9E3779B97F4A7C15ULL);
    std::uint64_t h2 = 0x84222325CBF29CE4ULL + r;
    auto mix = [&](std::uint64_t v) {
      h1 = (h1 ^ v) * 0x100000001B3ULL;
      h2 = (h2 ^ (v + 0x9E3779B97F4A7C15ULL)) * 0xC2B2AE3D27D4EB4FULL;
    };
    for (int m = 0; m < used.size(); ++m) {
      double uc = used.used_cpu(m), um = used.used_mem(m);
      std::uint64_t bc, bm;
      std::memcpy(&bc, &uc, 8);
      std::memcpy(&bm, &um, 8);
      mix(bc);
      mix(bm);
    }
    // floor of the first not-yet-placed member of each template group
    const ConfigList* seen_lists[8];
    int n_seen = 0;
    for (std::size_t p = r; p < lists.size(); ++p) {
      bool already = false;
      for (int i = 0; i < n_seen; ++i)
        if (seen_lists[i] == lists[p]) {
          already = true;
          break;
        }
      if (already) continue;
      if (n_seen < 8) seen_lists[n_seen++] = lists[p];
      mix(prev_same[p] >= 0 ? static_cast<std::uint64_t>(chosen[prev_same[p]] + 1) : 0);
    }

    auto it = seen_states.find(h1);
    if (it != seen_states.end() && it->second.check == h2 && it->second.cost <= cost)
      return true;
    if (seen_states.size() > (std::size_t{1} << 22)) seen_states.clear();
    auto& entry = seen_states[h1];
    if (entry.check == h2) {
      entry.cost = std::min(entry.cost, cost);
    } else {
      entry.check = h2;
      entry.cost = cost;
    }
    return false;
  }

  // Identical requests are interchangeable, so only non-decreasing config
  // indices within a template group are explored; the sorted-term cost sum
  // makes every member of such an equivalence class carry the same total.
  void dfs(std::size_t r) {
    if (timed_out) return;
    if (r == lists.size()) {
      if (!have_best || cost < best_cost || (cost == best_cost && chosen < best)) {
        best = chosen;
        best_cost = cost;
        have_best = true;
      }
      return;
    }
    if (dominated_state(r)) return;
    const auto& req = scenario.requests[req_order[r]];
    const auto& configs = lists[r]->configs;
    const int n_infras = static_cast<int>(scenario.infrastructures.size());
    std::vector<double> snap_cpu(n_infras), snap_mem(n_infras);
    const std::size_t floor =
        prev_same[r] >= 0 ? static_cast<std::size_t>(chosen[prev_same[r]]) : 0;

    for (std::size_t ci = floor; ci < configs.size(); ++ci) {
      const RequestConfig& cfg = configs[ci];
      // configs are cost-ascending, so once the static bound fails it
      // fails for every later config as well
      if (have_best && cost + cfg.cost + suffix_static_min[r + 1] >= best_cost) break;
      ++nodes;
      if (out_of_time()) break;

      for (int m = 0; m < n_infras; ++m) {
        snap_cpu[m] = used.used_cpu(m);
        snap_mem[m] = used.used_mem(m);
      }
      bool fits = true;
      for (std::size_t v = 0; v < req.vnfs.size() && fits; ++v) {
        const int m = cfg.assign[v];
        if (used.fits(m, req.vnfs[v].cpu_demand, req.vnfs[v].mem_demand))
          used.add(m, req.vnfs[v].cpu_demand, req.vnfs[v].mem_demand);
        else
          fits = false;
      }
      if (fits) {
        const double saved_cost = cost;
        cost += cfg.cost;
        chosen[r] = static_cast<int>(ci);
        // infinite bounds mean no feasible completion exists down here,
        // which prunes regardless of any incumbent
        const double frac = fractional_bound(r + 1);
        bool prune = !std::isfinite(frac) || (have_best && cost + frac >= best_cost);
        if (!prune) {
          const double rem = remaining_bound(r + 1);
          prune = !std::isfinite(rem) || (have_best && cost + rem >= best_cost);
        }
        if (!prune) dfs(r + 1);
        chosen[r] = -1;
        cost = saved_cost;
      }
      for (int m = 0; m < n_infras; ++m) used.restore(m, snap_cpu[m], snap_mem[m]);
      if (timed_out) break;
    }
  }
};

}  // namespace

SolveResult solve_exact(const Scenario& scenario, double time_budget_s) {
  const auto t0 = Clock::now();
  Searcher sr(scenario);

  std::map<std::uint64_t, ConfigList> templates;
  std::vector<const ConfigList*> list_of_request(scenario.requests.size());
  std::vector<std::uint64_t> key_of_request(scenario.requests.size());
  for (std::size_t r = 0; r < scenario.requests.size(); ++r) {
    const auto& req = scenario.requests[r];
    const std::uint64_t key = request_template_key(req, scenario.cost_form);
    auto it = templates.find(key);
    if (it == templates.end())
      it = templates.emplace(key, enumerate_request_configs(req, scenario)).first;
    list_of_request[r] = &it->second;
    key_of_request[r] = key;
  }

  // constrained requests first: smaller config lists branch higher up
  sr.req_order.resize(scenario.requests.size());
  for (std::size_t r = 0; r < sr.req_order.size(); ++r) sr.req_order[r] = static_cast<int>(r);
  std::sort(sr.req_order.begin(), sr.req_order.end(), [&](int a, int b) {
    const std::size_t ca = list_of_request[a]->configs.size();
    const std::size_t cb = list_of_request[b]->configs.size();
    if (ca != cb) return ca < cb;
    return scenario.requests[a].arrival_index < scenario.requests[b].arrival_index;
  });

  std::map<std::uint64_t, int> last_seen;
  for (std::size_t p = 0; p < sr.req_order.size(); ++p) {
    const int r = sr.req_order[p];
    sr.lists.push_back(list_of_request[r]);
    auto seen = last_seen.find(key_of_request[r]);
    sr.prev_same.push_back(seen == last_seen.end() ? -1 : seen->second);
    last_seen[key_of_request[r]] = static_cast<int>(p);
  }
  sr.chosen.assign(scenario.requests.size(), -1);
  sr.suffix_static_min.assign(scenario.requests.size() + 1, 0.0);
  for (std::size_t r = scenario.requests.size(); r-- > 0;)
    sr.suffix_static_min[r] = sr.suffix_static_min[r + 1] + sr.lists[r]->min_cost;

  // demand classes and suffix totals for the fractional bound
  {
    const double tol = 0.0;
    auto class_of = [&](const VnfSpec& v) {
      for (std::size_t c = 0; c < sr.classes.size(); ++c)
        if (sr.classes[c].cpu == v.cpu_demand && sr.classes[c].mem == v.mem_demand) return c;
      sr.classes.push_back({v.cpu_demand, v.mem_demand,
                            unit_weight(v, scenario.cost_form)});
      return sr.classes.size() - 1;
    };
    (void)tol;
    std::vector<std::vector<std::size_t>> req_classes(scenario.requests.size());
    for (std::size_t r = 0; r < scenario.requests.size(); ++r)
      for (const auto& v : scenario.requests[r].vnfs) req_classes[r].push_back(class_of(v));

    const std::size_t n_classes = sr.classes.size();
    sr.suffix_class_cpu.assign(scenario.requests.size() + 1,
                               std::vector<double>(n_classes, 0.0));
    sr.suffix_class_mem.assign(scenario.requests.size() + 1,
                               std::vector<double>(n_classes, 0.0));
    for (std::size_t p = scenario.requests.size(); p-- > 0;) {
      sr.suffix_class_cpu[p] = sr.suffix_class_cpu[p + 1];
      sr.suffix_class_mem[p] = sr.suffix_class_mem[p + 1];
      for (std::size_t c : req_classes[sr.req_order[p]]) {
        sr.suffix_class_cpu[p][c] += sr.classes[c].cpu;
        sr.suffix_class_mem[p][c] += sr.classes[c].mem;
      }
    }
    sr.cpu_density_order.resize(n_classes);
    sr.mem_density_order.resize(n_classes);
    for (std::size_t c = 0; c < n_classes; ++c)
      sr.cpu_density_order[c] = sr.mem_density_order[c] = static_cast<int>(c);
    std::sort(sr.cpu_density_order.begin(), sr.cpu_density_order.end(), [&](int a, int b) {
      return sr.classes[a].weight / sr.classes[a].cpu > sr.classes[b].weight / sr.classes[b].cpu;
    });
    std::sort(sr.mem_density_order.begin(), sr.mem_density_order.end(), [&](int a, int b) {
      return sr.classes[a].weight / sr.classes[a].mem > sr.classes[b].weight / sr.classes[b].mem;
    });
    sr.infra_by_cost.resize(scenario.infrastructures.size());
    for (std::size_t m = 0; m < sr.infra_by_cost.size(); ++m)
      sr.infra_by_cost[m] = static_cast<int>(m);
    std::sort(sr.infra_by_cost.begin(), sr.infra_by_cost.end(), [&](int a, int b) {
      const double ca = scenario.infrastructures[a].unit_cost;
      const double cb = scenario.infrastructures[b].unit_cost;
      if (ca != cb) return ca < cb;
      return a < b;
    });
  }

  if (std::isfinite(time_budget_s)) {
    sr.has_deadline = true;
    sr.deadline = t0 + std::chrono::duration_cast<Clock::duration>(
                           std::chrono::duration<double>(time_budget_s));
  }

  bool infeasible_template = false;
  for (const auto* list : sr.lists)
    if (list->configs.empty()) infeasible_template = true;
  if (!infeasible_template) sr.dfs(0);

  SolveResult res;
  res.nodes_explored = sr.nodes;
  res.optimal = !sr.timed_out;
  if (sr.have_best) {
    Placement p;
    for (std::size_t pos = 0; pos < scenario.requests.size(); ++pos) {
      const auto& req = scenario.requests[sr.req_order[pos]];
      const auto& cfg = sr.lists[pos]->configs[sr.best[pos]];
      for (std::size_t v = 0; v < req.vnfs.size(); ++v)
        p.assign(req.id, static_cast<int>(v), cfg.assign[v]);
    }
    res.cost = placement_cost(p, scenario);
    res.placement = std::move(p);
  }
  res.wall_time_s = std::chrono::duration<double>(Clock::now() - t0).count();
  return res;
}

std::vector<EnumEntry> enumerate_all(const Scenario& scenario, std::uint64_t limit) {
  const std::size_t n_infras = scenario.infrastructures.size();
  std::size_t n_slots = 0;
  for (const auto& req : scenario.requests) n_slots += req.vnfs.size();

  double space = 1.0;
  for (std::size_t i = 0; i < n_slots; ++i) space *= static_cast<double>(n_infras);
  if (space > static_cast<double>(limit))
    throw std::invalid_argument("assignment space exceeds enumeration limit");
  const std::uint64_t total = static_cast<std::uint64_t>(space);

  // flattened (request, vnf) views for the inner loops
  struct FlatVnf {
    int request_idx;
    double cpu, mem, weight;
  };
  std::vector<FlatVnf> flat;
  flat.reserve(n_slots);
  for (std::size_t r = 0; r < scenario.requests.size(); ++r)
    for (const auto& v : scenario.requests[r].vnfs)
      flat.push_back({static_cast<int>(r), v.cpu_demand, v.mem_demand,
                      unit_weight(v, scenario.cost_form)});

  std::vector<int> digits(n_slots, 0);
  std::vector<double> used_cpu(n_infras), used_mem(n_infras);
  std::vector<double> terms(n_slots);
  std::vector<EnumEntry> out;
  out.reserve(total);

  for (std::uint64_t code = 0; code < total; ++code) {
    EnumEntry e;
    e.code = code;

    // capacity and cost, fresh accumulation per entry
    std::fill(used_cpu.begin(), used_cpu.end(), 0.0);
    std::fill(used_mem.begin(), used_mem.end(), 0.0);
    terms.resize(n_slots);
    for (std::size_t k = 0; k < n_slots; ++k) {
      const int m = digits[k];
      used_cpu[m] += flat[k].cpu;
      used_mem[m] += flat[k].mem;
      terms[k] = scenario.infrastructures[m].unit_cost * flat[k].weight;
    }
    e.cost = sum_cost_terms(terms);

    bool ok = true;
    for (std::size_t m = 0; m < n_infras && ok; ++m)
      ok = used_cpu[m] <= scenario.infrastructures[m].cpu_capacity &&
           used_mem[m] <= scenario.infrastructures[m].mem_capacity;

    // per-request latency and consolidation
    std::size_t base = 0;
    for (const auto& req : scenario.requests) {
      if (!ok) break;
      const std::size_t nv = req.vnfs.size();
      if (req.consolidation_required) {
        for (std::size_t v = 1; v < nv && ok; ++v) ok = digits[base + v] == digits[base];
      }
      if (ok) {
        double lat = 0.0;
        int prev = -1, tail = -1, tail_infra = -1;
        // chain indices are small; walk them in order
        for (int ci = 0;; ++ci) {
          int found = -1;
          for (std::size_t v = 0; v < nv; ++v)
            if (req.vnfs[v].plane == Plane::user && req.vnfs[v].chain_index == ci)
              found = static_cast<int>(v);
          if (found < 0) break;
          const int m = digits[base + found];
          if (prev >= 0) lat += scenario.latency_model.mean(prev, m);
          prev = m;
          tail = ci;
          tail_infra = m;
        }
        if (tail >= 0) {
          lat += scenario.infrastructures[tail_infra].dn_latency_ms;
          ok = lat < req.latency_budget_ms;
        }
      }
      base += nv;
    }
    e.feasible = ok;
    out.push_back(e);

    // odometer increment
    for (std::size_t k = 0; k < n_slots; ++k) {
      if (++digits[k] < static_cast<int>(n_infras)) break;
      digits[k] = 0;
    }
  }
  return out;
}

Placement placement_from_code(const Scenario& scenario, std::uint64_t code) {
  const std::uint64_t n_infras = scenario.infrastructures.size();
  Placement p;
  for (const auto& req : scenario.requests) {
    for (std::size_t v = 0; v < req.vnfs.size(); ++v) {
      p.assign(req.id, static_cast<int>(v), static_cast<int>(code % n_infras));
      code /= n_infras;
    }
  }
  return p;
}

}  // namespace slicesim
