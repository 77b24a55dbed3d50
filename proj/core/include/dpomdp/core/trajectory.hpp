#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dpomdp/core/types.hpp"
#include "dpomdp/deception/deceived_observation.hpp"

namespace dpomdp {

struct TrajectoryStep {
  /// Agent belief summary before acting (full belief for explicit models,
  /// per-rock marginals for RockSample).
  std::vector<double> belief_before;
  std::vector<double> belief_after;
  ActionId action = 0;
  /// Observation the agent actually saw.
  ObsId observation = 0;
  /// Set when an informative observation went through the kernel.
  std::optional<deception::DeceivedObservation> deception;
  /// Environment reward plus any deception cost.
  double reward = 0.0;
  double deception_reward = 0.0;
  /// Hidden state the action was taken in.
  StateId state = 0;
};

struct Trajectory {
  std::vector<TrajectoryStep> steps;
  std::uint64_t seed = 0;
  bool terminated = false;
  /// Hit the episode cap without reaching a terminal transition.
  bool forced_out = false;
  /// Aborted by the solver (particle depletion).
  bool aborted = false;

  std::vector<double> rewards() const;
  double undiscounted_return() const;
  double discounted_return(double gamma) const;
};

}  // namespace dpomdp
