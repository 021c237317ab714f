#include "slicesim/marl.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <numeric>
#include <stdexcept>

namespace slicesim {

namespace {
using Clock = std::chrono::steady_clock;
namespace fs = std::filesystem;
}  // namespace

AgentConfig default_agent_config(SliceType t) {
  AgentConfig c;
  switch (t) {
    case SliceType::embb:
      c.learning_rate = 0.05;
      c.hidden_width = 128;
      c.reward.delta3 = 15.0;
      break;
    case SliceType::urllc:
      c.learning_rate = 0.01;
      c.hidden_width = 128;
      c.reward.delta3 = 20.0;
      break;
    case SliceType::mmtc:
      c.learning_rate = 0.005;
      c.hidden_width = 256;
      c.reward.delta3 = 10.0;
      break;
  }
  return c;
}

AgentConfig default_monolithic_config() {
  AgentConfig c;
  c.learning_rate = 0.05;
  c.hidden_width = 128;
  return c;
}

EncodingOptions encoding_for(SchedulerMode mode) {
  EncodingOptions e;
  e.q_max = kQMax;
  e.include_current_vnf = true;
  e.include_type_onehot = mode == SchedulerMode::monolithic;
  return e;
}

int state_width_for(SchedulerMode mode, int n_infras) {
  return encoded_width(encoding_for(mode), n_infras);
}

namespace {

Scenario make_training_scenario(const Catalog& catalog, std::optional<SliceType> type,
                                int n_slices, std::uint64_t seed) {
  if (type) {
    Scenario s;
    s.infrastructures = catalog.infrastructures;
    s.latency_model = catalog.latency_model;
    s.rng_seed = seed;
    for (int i = 0; i < n_slices; ++i) s.requests.push_back(make_request(i, *type, catalog.vnfs, i));
    return s;
  }
  return generate_scenario(n_slices, seed, catalog);
}

}  // namespace

TrainingReport train_agent(DqnAgent& agent, const Catalog& catalog,
                           std::optional<SliceType> type, const TrainOptions& opts) {
  const auto& cfg = agent.config();
  MdpEnvOptions env_opts;
  env_opts.encoding = encoding_for(type ? SchedulerMode::disaggregated : SchedulerMode::monolithic);
  env_opts.reward = cfg.reward;
  env_opts.use_default_delta3_by_type = !type.has_value();

  TrainingReport report;
  report.episodes.reserve(static_cast<std::size_t>(opts.episodes));

  std::optional<MdpEnv> env;
  std::vector<const EncodedTransition*> batch;
  std::uint64_t global_step = 0;
  int high_loss_streak = 0;

  for (int ep = 0; ep < opts.episodes; ++ep) {
    const std::uint64_t ep_seed = mix_seed(opts.master_seed, 0xE9150DE5ULL, static_cast<std::uint64_t>(ep));
    Rng workload_rng(ep_seed);
    const int n_slices = 1 + workload_rng.uniform_int(kQMax);
    Scenario scenario = make_training_scenario(catalog, type, n_slices, ep_seed);
    if (!env)
      env.emplace(scenario, type, env_opts);
    else
      env->reset(scenario, type);

    EpisodeLog log;
    double loss_sum = 0.0;
    int loss_count = 0;
    while (!env->done()) {
      const MdpState state = env->encode_state();
      const double eps = epsilon_at(global_step, cfg);
      const int action = act_epsilon_greedy(agent.online(), state.encoded, eps, agent.rng());
      const Transition t = env->step(action);
      log.reward += t.reward;
      agent.buffer().push(encode_transition(t));

      if (agent.buffer().size() >= cfg.batch_size) {
        agent.buffer().sample(cfg.batch_size, agent.rng(), batch);
        const double loss = agent.train_step(batch);
        loss_sum += loss;
        ++loss_count;
        if (!(loss <= 1e6)) {  // negated so NaN counts as divergence too
          if (++high_loss_streak >= 100)
            throw std::runtime_error(
                "training diverged: loss above 1e6 for 100 consecutive steps at episode " +
                std::to_string(ep) + ", step " + std::to_string(global_step) +
                " (loss " + std::to_string(loss) + ")");
        } else {
          high_loss_streak = 0;
        }
      }
      ++global_step;
      if (global_step % static_cast<std::uint64_t>(cfg.sync_interval) == 0) agent.sync_target();
    }
    log.loss = loss_count > 0 ? loss_sum / loss_count : 0.0;
    report.episodes.push_back(log);

    if (!opts.checkpoint_dir.empty() && opts.checkpoint_every > 0 &&
        (ep + 1) % opts.checkpoint_every == 0 && ep + 1 < opts.episodes) {
      fs::create_directories(opts.checkpoint_dir);
      agent.save((fs::path(opts.checkpoint_dir) /
                  (opts.name + "_ep" + std::to_string(ep + 1) + ".ckpt"))
                     .string());
    }
  }
  report.env_steps = global_step;
  return report;
}

const DqnAgent& dispatch(const SchedulerBundle& bundle, const SliceRequest& request) {
  auto it = bundle.agents.find(request.slice_type);
  if (it == bundle.agents.end())
    throw std::runtime_error("no agent for slice type " + to_string(request.slice_type));
  return it->second;
}

SolveResult place_slices(const SchedulerBundle& bundle, const Scenario& scenario,
                         SchedulerMode mode, PlacementTiming* timing) {
  if (mode == SchedulerMode::monolithic && !bundle.monolithic)
    throw std::runtime_error("monolithic agent not loaded");

  const EncodingOptions enc = encoding_for(mode);
  const int n_infras = static_cast<int>(scenario.infrastructures.size());
  CapacityTracker ledger(scenario);
  Placement placement;
  SolveResult res;
  PlacementTiming local_timing;

  // arrival-ordered processing over shared capacity
  std::vector<int> order(scenario.requests.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return scenario.requests[a].arrival_index < scenario.requests[b].arrival_index;
  });

  for (std::size_t oi = 0; oi < order.size(); ++oi) {
    const int r = order[oi];
    const SliceRequest& req = scenario.requests[r];
    const DqnAgent& agent =
        mode == SchedulerMode::disaggregated ? dispatch(bundle, req) : *bundle.monolithic;
    const int type_idx = static_cast<int>(req.slice_type);

    // slices this agent still has to serve, current one included
    std::vector<const SliceRequest*> queued;
    for (std::size_t oj = oi; oj < order.size(); ++oj) {
      const SliceRequest& later = scenario.requests[order[oj]];
      if (mode == SchedulerMode::monolithic || later.slice_type == req.slice_type)
        queued.push_back(&later);
    }

    // snapshot for exact rollback if the slice is rejected
    std::vector<double> snap_cpu(n_infras), snap_mem(n_infras);
    for (int m = 0; m < n_infras; ++m) {
      snap_cpu[m] = ledger.used_cpu(m);
      snap_mem[m] = ledger.used_mem(m);
    }

    bool rejected = false;
    for (std::size_t v = 0; v < req.vnfs.size() && !rejected; ++v) {
      const VnfSpec& vnf = req.vnfs[v];
      std::optional<SliceType> onehot;
      if (mode == SchedulerMode::monolithic) onehot = req.slice_type;
      const MdpState state = encode_state_vector(scenario, ledger, queued,
                                                 enc.include_current_vnf ? &vnf : nullptr, onehot, enc);

      const auto t0 = Clock::now();
      const auto q = agent.online().forward(state.encoded);
      int pick = -1;
      double pick_q = 0.0;
      for (int m = 0; m < n_infras; ++m) {
        if (!ledger.fits(m, vnf.cpu_demand, vnf.mem_demand)) continue;
        if (pick < 0 || q[m] > pick_q) {
          pick = m;
          pick_q = q[m];
        }
      }
      const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
      local_timing.sequential_s += dt;
      local_timing.per_type_s[type_idx] += dt;
      ++res.nodes_explored;

      if (pick < 0) {
        rejected = true;
        break;
      }
      ledger.add(pick, vnf.cpu_demand, vnf.mem_demand);
      placement.assign(req.id, static_cast<int>(v), pick);
    }

    if (rejected) {
      for (int m = 0; m < n_infras; ++m) ledger.restore(m, snap_cpu[m], snap_mem[m]);
      for (std::size_t v = 0; v < req.vnfs.size(); ++v) placement.unassign(req.id, static_cast<int>(v));
      res.rejected_slices.push_back(req.id);
    }
  }

  if (mode == SchedulerMode::monolithic) {
    local_timing.per_type_parallel_s = local_timing.sequential_s;
  } else {
    local_timing.per_type_parallel_s =
        *std::max_element(local_timing.per_type_s.begin(), local_timing.per_type_s.end());
  }
  if (timing != nullptr) *timing = local_timing;

  res.cost = deployed_cost(placement, scenario);
  res.placement = std::move(placement);
  res.wall_time_s = local_timing.sequential_s;
  return res;
}

void save_bundle(const SchedulerBundle& bundle, const std::string& dir) {
  fs::create_directories(dir);
  for (const auto& [type, agent] : bundle.agents)
    agent.save((fs::path(dir) / (to_string(type) + ".ckpt")).string());
  if (bundle.monolithic) bundle.monolithic->save((fs::path(dir) / "monolithic.ckpt").string());
}

SchedulerBundle load_bundle(const std::string& dir, bool want_disaggregated,
                            bool want_monolithic) {
  SchedulerBundle bundle;
  const int n_infras = static_cast<int>(default_catalog().infrastructures.size());
  if (want_disaggregated) {
    for (SliceType t : {SliceType::urllc, SliceType::embb, SliceType::mmtc}) {
      const auto path = fs::path(dir) / (to_string(t) + ".ckpt");
      if (!fs::exists(path))
        throw std::runtime_error("missing checkpoint: " + path.string());
      DqnAgent agent(default_agent_config(t),
                     state_width_for(SchedulerMode::disaggregated, n_infras), n_infras);
      agent.load(path.string());
      bundle.agents.emplace(t, std::move(agent));
    }
  }
  if (want_monolithic) {
    const auto path = fs::path(dir) / "monolithic.ckpt";
    if (!fs::exists(path)) throw std::runtime_error("missing checkpoint: " + path.string());
    DqnAgent agent(default_monolithic_config(),
                   state_width_for(SchedulerMode::monolithic, n_infras), n_infras);
    agent.load(path.string());
    bundle.monolithic.emplace(std::move(agent));
  }
  return bundle;
}

}  // namespace slicesim
