#pragma once

#include <functional>

#include "dpomdp/core/distribution.hpp"
#include "dpomdp/core/model.hpp"
#include "dpomdp/core/trajectory.hpp"
#include "dpomdp/deception/kernel.hpp"

namespace dpomdp::deception {

/// One agent transition as seen by a learner.
struct BeliefTransition {
  const DiscreteDistribution& before;
  const DiscreteDistribution& after;
  ActionId action;
  /// Reward the environment paid, deception cost included.
  double reward;
  double deception_reward;
  bool terminal;
};

using BeliefPolicy = std::function<ActionId(const DiscreteDistribution&, Rng&)>;
using TransitionObserver = std::function<void(const BeliefTransition&)>;

/// Runs one episode of an explicit model with exact Bayes beliefs. Every
/// informative observation passes through `kernel` before the agent's belief
/// update. Stops at a terminal transition or after `step_cap` steps.
Trajectory run_belief_episode(const PomdpModel& model, const KernelSpec& kernel, const BeliefPolicy& policy,
                              int step_cap, Rng& rng, const TransitionObserver& observer = {});

}  // namespace dpomdp::deception
