#include "dpomdp/deception/belief_episode.hpp"

#include "dpomdp/core/belief.hpp"

namespace dpomdp::deception {

Trajectory run_belief_episode(const PomdpModel& model, const KernelSpec& kernel, const BeliefPolicy& policy,
                              int step_cap, Rng& rng, const TransitionObserver& observer) {
  Trajectory traj;
  StateId s = model.initial_belief().sample(rng);
  DiscreteDistribution b = model.initial_belief();
  for (int t = 0; t < step_cap; ++t) {
    const ActionId a = policy(b, rng);
    const StepResult res = dpomdp::step(model, s, a, rng);

    TrajectoryStep rec;
    rec.state = s;
    rec.action = a;
    rec.belief_before.assign(b.probs().begin(), b.probs().end());
    rec.observation = res.observation;
    rec.deception = intercept(model, kernel, a, res.next, res.observation, rng);
    if (rec.deception) {
      rec.observation = rec.deception->delivered;
      rec.deception_reward = deception_cost(kernel, rec.deception->is_deceived);
    }
    rec.reward = res.reward + rec.deception_reward;

    DiscreteDistribution next_b = res.terminal ? b : belief_update(model, b, a, rec.observation);
    rec.belief_after.assign(next_b.probs().begin(), next_b.probs().end());
    if (observer) observer({b, next_b, a, rec.reward, rec.deception_reward, res.terminal});
    traj.steps.push_back(std::move(rec));

    s = res.next;
    b = std::move(next_b);
    if (res.terminal) {
      traj.terminated = true;
      break;
    }
  }
  traj.forced_out = !traj.terminated;
  return traj;
}

}  // namespace dpomdp::deception
