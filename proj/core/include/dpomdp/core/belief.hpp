#pragma once

#include <span>

#include "dpomdp/core/distribution.hpp"
#include "dpomdp/core/model.hpp"

namespace dpomdp {

/// Transition-propagated prior: sum_s T(s'|s,a) b(s).
DiscreteDistribution predict_belief(const PomdpModel& model, const DiscreteDistribution& b, ActionId a);

/// Pr(o | b, a) = sum_{s'} O(o|s',a) sum_s T(s'|s,a) b(s).
double observation_likelihood(const PomdpModel& model, const DiscreteDistribution& b, ActionId a,
                              ObsId o);

/// Bayes filter b'(s') = eta O(o|s',a) sum_s T(s'|s,a) b(s).
/// Throws ImpossibleObservation when Pr(o|b,a) is zero within 1e-12.
DiscreteDistribution belief_update(const PomdpModel& model, const DiscreteDistribution& b, ActionId a,
                                   ObsId o);

/// Belief-weighted immediate reward sum_s b(s) sum_{s'} T(s'|s,a) R(s,a,s').
double expected_reward(const PomdpModel& model, const DiscreteDistribution& b, ActionId a);

/// Generative step with the terminal-state contract checked up front.
StepResult step(const GenerativeModel& model, StateId s, ActionId a, Rng& rng);

/// sum_k gamma^k r_k.
double discounted_return(std::span<const double> rewards, double gamma);

ActionClass classify_action(const GenerativeModel& model, ActionId a);

}  // namespace dpomdp
