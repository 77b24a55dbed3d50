/*
 * Copyright (c) the dpomdp contributors
 *
 * Permission is hereby granted, free of charge, to any person obtaining a copy
 * of this software and associated documentation files (the "Software"), to
 * deal in the Software without restriction, subject to the conditions in the
 * LICENSE file at the root of this distribution.
 */
#include "dpomdp/harness/experiment.hpp"

#include <optional>

#include "dpomdp/core/belief.hpp"
#include "dpomdp/deception/belief_episode.hpp"
#include "dpomdp/errors.hpp"
#include "dpomdp/harness/csv.hpp"
#include "dpomdp/harness/parallel.hpp"
#include "dpomdp/pomcp/pomcp.hpp"

namespace dpomdp::harness {

namespace rs = problems::rocksample;
using problems::RockSampleState;

namespace {

bool costly(const deception::KernelSpec& k) { return k.kind != deception::KernelKind::None && k.r_d != 0.0; }

// Generic POMCP loop; `belief` summarizes a particle set, `env_step` runs the
// real environment for the chosen action.
template <class PlannerFor, class Belief, class EnvStep>
Trajectory pomcp_loop(const GenerativeModel& model, const deception::KernelSpec& kernel,
                      const pomcp::PomcpConfig& cfg, int step_cap, Rng& rng, PlannerFor planner_for,
                      Belief belief, EnvStep env_step) {
  Trajectory traj;
  StateId s = model.sample_initial_state(rng);
  auto root = pomcp::make_root(model, cfg.particle_upper, rng);
  std::vector<double> b = belief(root->particles);
  for (int t = 0; t < step_cap; ++t) {
    const auto& base_planner = planner_for(s);
    std::optional<deception::DeceptionRewardModel> with_cost;
    if (costly(kernel)) with_cost.emplace(base_planner, kernel);
    const GenerativeModel& planner = with_cost ? static_cast<const GenerativeModel&>(*with_cost) : base_planner;

    const ActionId a = pomcp::search(*root, planner, cfg, rng);
    TrajectoryStep rec;
    rec.state = s;
    rec.action = a;
    rec.belief_before = b;
    const StepResult res = env_step(s, a, b);
    rec.observation = res.observation;
    rec.deception = deception::intercept(model, kernel, a, res.next, res.observation, rng);
    if (rec.deception) {
      rec.observation = rec.deception->delivered;
      rec.deception_reward = deception::deception_cost(kernel, rec.deception->is_deceived);
    }
    rec.reward = res.reward + rec.deception_reward;
    if (!res.terminal) {
      try {
        root = pomcp::advance(std::move(root), a, rec.observation, planner, cfg, rng);
        b = belief(root->particles);
      } catch (const ParticleDepletion&) {
        traj.aborted = true;
      }
    }
    rec.belief_after = b;
    traj.steps.push_back(std::move(rec));
    s = res.next;
    if (res.terminal) {
      traj.terminated = true;
      break;
    }
    if (traj.aborted) break;
  }
  traj.forced_out = !traj.terminated && !traj.aborted;
  return traj;
}

}  // namespace

Trajectory run_rocksample_episode(const problems::RockSampleModel& model, const deception::KernelSpec& kernel,
                                  const pomcp::PomcpConfig& cfg, Rng& rng) {
  std::optional<problems::RockSamplePlanningModel> planner;
  auto planner_for = [&](StateId s) -> const GenerativeModel& {
    return planner.emplace(model, RockSampleState::decode(s).rocks);
  };
  auto belief = [&](const std::vector<StateId>& particles) { return model.rock_marginals(particles); };
  auto env_step = [&](StateId s, ActionId a, const std::vector<double>& b) {
    if (a == rs::kSample) {
      const int rock = model.config().rock_at(RockSampleState::decode(s).position);
      return model.step_with_belief(s, a, rock >= 0 ? b[static_cast<std::size_t>(rock)] : 0.0, rng);
    }
    return model.step(s, a, rng);
  };
  return pomcp_loop(model, kernel, cfg, model.config().step_cap, rng, planner_for, belief, env_step);
}

Trajectory run_pomcp_episode(const PomdpModel& model, const deception::KernelSpec& kernel,
                             const pomcp::PomcpConfig& cfg, int step_cap, Rng& rng) {
  auto planner_for = [&](StateId) -> const GenerativeModel& { return model; };
  auto belief = [&](const std::vector<StateId>& particles) {
    const auto d = pomcp::particle_belief(particles, model.num_states());
    return std::vector<double>(d.probs().begin(), d.probs().end());
  };
  auto env_step = [&](StateId s, ActionId a, const std::vector<double>&) { return dpomdp::step(model, s, a, rng); };
  return pomcp_loop(model, kernel, cfg, step_cap, rng, planner_for, belief, env_step);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult out;
  auto& eps = out.episodes;

  if (cfg.problem == ProblemKind::Tiger) {
    const PomdpModel model = problems::tiger_model(cfg.tiger);
    switch (cfg.solver) {
      case SolverKind::Vi: {
        out.alpha = vi::solve(model, cfg.vi_horizon);
        const auto& alpha = *out.alpha;
        eps.resize(static_cast<std::size_t>(cfg.episodes));
        parallel_for(eps.size(), cfg.workers, [&](std::size_t i) {
          Rng rng = make_stream(cfg.master_seed, i);
          auto policy = [&](const DiscreteDistribution& b, Rng&) { return vi::best_action(alpha, b).action; };
          eps[i].index = static_cast<int>(i);
          eps[i].trajectory = deception::run_belief_episode(model, cfg.kernel, policy, cfg.tiger.step_cap, rng);
        });
        break;
      }
      case SolverKind::Lvfa: {
        std::vector<lvfa::TrainResult> runs(static_cast<std::size_t>(cfg.lvfa_runs));
        lvfa::LvfaConfig lc = cfg.lvfa;
        lc.step_cap = cfg.tiger.step_cap;
        parallel_for(runs.size(), cfg.workers, [&](std::size_t r) {
          Rng rng = make_stream(cfg.master_seed, r);
          runs[r] = lvfa::train(model, cfg.kernel, lc, rng);
        });
        for (std::size_t r = 0; r < runs.size(); ++r) {
          for (auto& v : runs[r].validations) {
            EpisodeResult e;
            e.index = static_cast<int>(eps.size());
            e.run = static_cast<int>(r);
            e.epoch = v.epoch;
            e.trajectory = std::move(v.trajectory);
            eps.push_back(std::move(e));
          }
          out.lvfa_weights.push_back(std::move(runs[r].value));
        }
        break;
      }
      case SolverKind::Pomcp: {
        eps.resize(static_cast<std::size_t>(cfg.episodes));
        parallel_for(eps.size(), cfg.workers, [&](std::size_t i) {
          Rng rng = make_stream(cfg.master_seed, i);
          eps[i].index = static_cast<int>(i);
          eps[i].trajectory = run_pomcp_episode(model, cfg.kernel, cfg.pomcp, cfg.tiger.step_cap, rng);
        });
        break;
      }
    }
    for (auto& e : eps) e.observations = tiger_records(e.index, e.trajectory);
    std::vector<Trajectory> trajs;
    trajs.reserve(eps.size());
    for (const auto& e : eps) trajs.push_back(e.trajectory);
    out.histogram = reward_belief_histogram(trajs, cfg.histogram);
  } else {
    if (cfg.solver != SolverKind::Pomcp) throw ConfigError("rocksample runs with the pomcp solver only");
    const problems::RockSampleModel model(cfg.rocksample);
    eps.resize(static_cast<std::size_t>(cfg.episodes));
    parallel_for(eps.size(), cfg.workers, [&](std::size_t i) {
      Rng rng = make_stream(cfg.master_seed, i);
      eps[i].index = static_cast<int>(i);
      eps[i].trajectory = run_rocksample_episode(model, cfg.kernel, cfg.pomcp, rng);
      eps[i].observations = rocksample_records(eps[i].index, eps[i].trajectory, cfg.rocksample);
    });
  }

  for (auto& e : eps) e.trajectory.seed = cfg.master_seed;
  out.summary = summarize(cfg, eps);
  if (!cfg.out_dir.empty()) write_outputs(cfg.out_dir, cfg, out);
  return out;
}

}  // namespace dpomdp::harness
