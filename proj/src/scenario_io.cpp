#include "slicesim/scenario_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "slicesim/profiler.hpp"

namespace slicesim {

namespace {

using nlohmann::json;

Tier tier_from_string(const std::string& s) {
  if (s == "edge") return Tier::edge;
  if (s == "distributed") return Tier::distributed;
  if (s == "central") return Tier::central;
  throw std::invalid_argument("unknown tier: " + s);
}

std::string read_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace

Scenario scenario_from_json_text(const std::string& text) {
  const json j = json::parse(text);
  Catalog catalog = default_catalog();

  if (j.contains("infrastructures")) {
    catalog.infrastructures.clear();
    int id = 0;
    for (const auto& fj : j.at("infrastructures")) {
      Infrastructure infra;
      infra.id = fj.value("id", id);
      infra.tier = tier_from_string(fj.at("tier").get<std::string>());
      infra.cpu_capacity = fj.at("cpu").get<double>();
      infra.mem_capacity = fj.at("mem").get<double>();
      infra.unit_cost = fj.at("unit_cost").get<double>();
      infra.dn_latency_ms = fj.at("dn_latency_ms").get<double>();
      if (infra.cpu_capacity <= 0 || infra.mem_capacity <= 0)
        throw std::invalid_argument("capacities must be strictly positive");
      if (infra.unit_cost < 0) throw std::invalid_argument("unit_cost must be nonnegative");
      catalog.infrastructures.push_back(infra);
      ++id;
    }
    catalog.latency_model = LatencyModel(static_cast<int>(catalog.infrastructures.size()));
  }

  if (j.contains("latency_pairs")) {
    for (const auto& pj : j.at("latency_pairs"))
      catalog.latency_model.set_pair(pj.at("a").get<int>(), pj.at("b").get<int>(),
                                     pj.at("mean_ms").get<double>(),
                                     pj.at("stddev_ms").get<double>());
  }
  catalog.latency_model.validate();

  if (j.contains("vnf_catalog")) {
    catalog.vnfs.clear();
    for (const auto& vj : j.at("vnf_catalog")) {
      VnfSpec v;
      v.name = vj.at("name").get<std::string>();
      v.plane = vj.at("plane").get<std::string>() == "user" ? Plane::user : Plane::control;
      v.cpu_demand = vj.at("cpu").get<double>();
      v.mem_demand = vj.at("mem").get<double>();
      if (vj.contains("chain_index") && !vj.at("chain_index").is_null())
        v.chain_index = vj.at("chain_index").get<int>();
      if (v.cpu_demand <= 0 || v.mem_demand <= 0)
        throw std::invalid_argument("VNF demands must be strictly positive");
      catalog.vnfs.push_back(v);
    }
  }

  Scenario s;
  const std::uint64_t seed = j.value("seed", 0ULL);
  if (j.contains("requests")) {
    s.infrastructures = catalog.infrastructures;
    s.latency_model = catalog.latency_model;
    s.rng_seed = seed;
    int arrival = 0;
    for (const auto& rj : j.at("requests")) {
      const auto type = slice_type_from_string(rj.at("slice_type").get<std::string>());
      SliceRequest r = make_request(rj.value("id", arrival), type, catalog.vnfs, arrival);
      if (rj.contains("latency_budget_ms")) r.latency_budget_ms = rj.at("latency_budget_ms").get<double>();
      if (rj.contains("consolidation")) r.consolidation_required = rj.at("consolidation").get<bool>();
      if (r.latency_budget_ms <= 0) throw std::invalid_argument("latency budget must be positive");
      s.requests.push_back(std::move(r));
      ++arrival;
    }
  } else {
    const int n = j.value("n_slices", 5);
    s = generate_scenario(n, seed, catalog);
  }

  if (j.contains("cost_form")) {
    const auto form = j.at("cost_form").get<std::string>();
    if (form == "product")
      s.cost_form = CostForm::product;
    else if (form == "weighted_sum")
      s.cost_form = CostForm::weighted_sum;
    else
      throw std::invalid_argument("unknown cost_form: " + form);
  }

  // demand_source=lookup replaces the uniform user-plane CPU demands with
  // the measured table at the given session count; memory columns were
  // never measured, so those stay at their static values
  const std::string demand_source = j.value("demand_source", std::string("static"));
  if (demand_source == "lookup") {
    const int users = j.value("active_users", 200);
    ResourceLookupTable table;
    if (j.contains("demand_table"))
      table = ResourceLookupTable::load_csv(j.at("demand_table").get<std::string>());
    else
      table = seed_demand_table();
    for (auto& req : s.requests)
      for (auto& vnf : req.vnfs) {
        if (vnf.plane != Plane::user) continue;
        const DemandLookup d = table.lookup(req.slice_type, vnf.name, users);
        vnf.cpu_demand = d.cpu_percent / 100.0;
        if (d.mem_mib) vnf.mem_demand = *d.mem_mib / 1024.0;
      }
  } else if (demand_source != "static") {
    throw std::invalid_argument("unknown demand_source: " + demand_source);
  }
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  return scenario_from_json_text(read_file(path));
}

ExperimentSpec load_experiment_spec(const std::string& path) {
  const json j = json::parse(read_file(path));
  ExperimentSpec spec;
  if (j.contains("slice_counts")) spec.slice_counts = j.at("slice_counts").get<std::vector<int>>();
  spec.trials = j.value("trials", spec.trials);
  spec.base_seed = j.value("base_seed", spec.base_seed);
  spec.latency_samples_per_slice = j.value("latency_samples_per_slice", 1);
  if (j.contains("exact_time_budget_s"))
    spec.exact_time_budget_s = j.at("exact_time_budget_s").get<double>();
  if (j.contains("algorithms")) {
    spec.algorithms.clear();
    for (const auto& aj : j.at("algorithms"))
      spec.algorithms.push_back(algorithm_from_string(aj.get<std::string>()));
  }
  spec.validate();
  return spec;
}

}  // namespace slicesim
