// SPDX-License-Identifier: MIT
#include "dpomdp/core/belief.hpp"

#include <string>

#include "dpomdp/errors.hpp"

namespace dpomdp {

namespace {

void check_belief(const PomdpModel& model, const DiscreteDistribution& b, ActionId a) {
  if (b.size() != model.num_states()) throw InvalidDistribution("belief support does not match the model");
  if (a >= model.num_actions()) throw std::out_of_range("action index out of range");
}

}  // namespace

DiscreteDistribution predict_belief(const PomdpModel& model, const DiscreteDistribution& b, ActionId a) {
  check_belief(model, b, a);
  const std::size_t n = model.num_states();
  std::vector<double> out(n, 0.0);
  for (std::size_t s = 0; s < n; ++s) {
    if (b[s] == 0.0) continue;
    for (std::size_t next = 0; next < n; ++next) out[next] += model.transition(s, a, next) * b[s];
  }
  return DiscreteDistribution::normalized(std::move(out));
}

double observation_likelihood(const PomdpModel& model, const DiscreteDistribution& b, ActionId a,
                              ObsId o) {
  if (o >= model.num_observations()) throw std::out_of_range("observation index out of range");
  const DiscreteDistribution prior = predict_belief(model, b, a);
  double total = 0.0;
  for (std::size_t next = 0; next < model.num_states(); ++next) total += model.observation(a, next, o) * prior[next];
  return total;
}

DiscreteDistribution belief_update(const PomdpModel& model, const DiscreteDistribution& b, ActionId a,
                                   ObsId o) {
  if (o >= model.num_observations()) throw std::out_of_range("observation index out of range");
  const DiscreteDistribution prior = predict_belief(model, b, a);
  std::vector<double> post(model.num_states());
  double total = 0.0;
  for (std::size_t next = 0; next < post.size(); ++next) {
    post[next] = model.observation(a, next, o) * prior[next];
    total += post[next];
  }
  if (total <= 1e-12) {
    throw ImpossibleObservation("observation " + model.observation_name(o) + " has zero likelihood after " +
                                model.action_name(a));
  }
  for (double& p : post) p /= total;
  return DiscreteDistribution(std::move(post));
}

double expected_reward(const PomdpModel& model, const DiscreteDistribution& b, ActionId a) {
  check_belief(model, b, a);
  double r = 0.0;
  for (std::size_t s = 0; s < model.num_states(); ++s) r += b[s] * model.expected_reward(s, a);
  return r;
}

StepResult step(const GenerativeModel& model, StateId s, ActionId a, Rng& rng) {
  if (model.is_terminal(s)) throw StepOnTerminal("step requested from a terminal state");
  if (a >= model.num_actions()) throw std::out_of_range("action index out of range");
  return model.step(s, a, rng);
}

double discounted_return(std::span<const double> rewards, double gamma) {
  double total = 0.0;
  double w = 1.0;
  for (double r : rewards) {
    total += w * r;
    w *= gamma;
  }
  return total;
}

ActionClass classify_action(const GenerativeModel& model, ActionId a) {
  if (a >= model.num_actions()) throw std::out_of_range("action index out of range");
  return model.classify_action(a);
}

}  // namespace dpomdp
