/*
 * Copyright (c) the dpomdp contributors
 *
 * Permission is hereby granted, free of charge, to any person obtaining a copy
 * of this software and associated documentation files (the "Software"), to
 * deal in the Software without restriction, subject to the conditions in the
 * LICENSE file at the root of this distribution.
 */
#include "dpomdp/lvfa/linear_value_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dpomdp/core/belief.hpp"
#include "dpomdp/deception/belief_episode.hpp"
#include "dpomdp/errors.hpp"

namespace dpomdp::lvfa {

LinearValueFunction::LinearValueFunction(std::size_t num_actions, std::size_t num_states)
    : na_(num_actions), ns_(num_states), w_(num_actions * num_states, 0.0) {}

void LinearValueFunction::set_weights(ActionId a, std::span<const double> values) {
  if (values.size() != ns_) throw std::invalid_argument("set_weights: size mismatch");
  std::copy(values.begin(), values.end(), w_.begin() + static_cast<std::ptrdiff_t>(a * ns_));
}

double LinearValueFunction::q(std::span<const double> b, ActionId a) const {
  double v = 0.0;
  for (std::size_t s = 0; s < ns_; ++s) v += w_[a * ns_ + s] * b[s];
  return v;
}

std::vector<double> LinearValueFunction::predict(std::span<const double> b) const {
  std::vector<double> out(na_);
  for (ActionId a = 0; a < na_; ++a) out[a] = q(b, a);
  return out;
}

ActionId LinearValueFunction::greedy_action(std::span<const double> b) const {
  ActionId best = 0;
  double best_v = -std::numeric_limits<double>::infinity();
  for (ActionId a = 0; a < na_; ++a) {
    const double v = q(b, a);
    if (v > best_v) {
      best_v = v;
      best = a;
    }
  }
  return best;
}

void LvfaConfig::validate() const {
  if (epochs < 0) throw ConfigError("lvfa: epochs must be non-negative");
  if (validation_every < 1) throw ConfigError("lvfa: validation_every must be at least 1");
  if (!(learning_rate > 0.0)) throw ConfigError("lvfa: learning rate must be positive");
  if (epsilon_start < 0.0 || epsilon_start > 1.0 || epsilon_end < 0.0 || epsilon_end > 1.0)
    throw ConfigError("lvfa: epsilon must lie in [0, 1]");
  if (step_cap < 1) throw ConfigError("lvfa: step cap must be at least 1");
}

Trajectory run_greedy_episode(const PomdpModel& model, const deception::KernelSpec& kernel,
                              const LinearValueFunction& w, int step_cap, Rng& rng) {
  auto policy = [&](const DiscreteDistribution& b, Rng&) { return greedy_action(w, b); };
  return deception::run_belief_episode(model, kernel, policy, step_cap, rng);
}

TrainResult train(const PomdpModel& model, const deception::KernelSpec& kernel, const LvfaConfig& cfg, Rng& rng) {
  cfg.validate();
  kernel.validate();
  const std::size_t na = model.num_actions();
  const double gamma = model.discount();
  const double r_max = model.max_abs_reward() + std::abs(kernel.r_d);
  const double limit = gamma < 1.0 ? 10.0 * r_max / (1.0 - gamma) : std::numeric_limits<double>::infinity();

  TrainResult out;
  LinearValueFunction& w = out.value;
  w = LinearValueFunction(na, model.num_states());
  if (cfg.init == WeightInit::ImmediateReward) {
    for (ActionId a = 0; a < na; ++a)
      for (StateId s = 0; s < model.num_states(); ++s) w.weights(a)[s] = model.expected_reward(s, a);
  }

  double epsilon = cfg.epsilon_start;
  auto policy = [&](const DiscreteDistribution& b, Rng& r) -> ActionId {
    if (bernoulli(r, epsilon)) return uniform_index(r, na);
    return greedy_action(w, b);
  };
  auto learn = [&](const deception::BeliefTransition& t) {
    const auto b = t.before.probs();
    const double r = cfg.signal == RewardSignal::BeliefExpected
                         ? expected_reward(model, t.before, t.action) + t.deception_reward
                         : t.reward;
    double target = r;
    if (!t.terminal) {
      const auto q_next = w.predict(t.after.probs());
      target += gamma * *std::max_element(q_next.begin(), q_next.end());
    }
    const double delta = target - w.q(b, t.action);
    auto wa = w.weights(t.action);
    for (std::size_t s = 0; s < wa.size(); ++s) {
      wa[s] += cfg.learning_rate * delta * b[s];
      if (!std::isfinite(wa[s]) || std::abs(wa[s]) > limit)
        throw DivergenceDetected("lvfa: weight magnitude exceeded the divergence bound");
    }
  };

  for (int e = 0; e < cfg.epochs; ++e) {
    const double frac = cfg.epochs > 1 ? static_cast<double>(e) / (cfg.epochs - 1) : 0.0;
    epsilon = cfg.epsilon_start + (cfg.epsilon_end - cfg.epsilon_start) * frac;
    deception::run_belief_episode(model, kernel, policy, cfg.step_cap, rng, learn);
    ++w.training_epochs;
    if ((e + 1) % cfg.validation_every == 0) {
      out.validations.push_back({e + 1, run_greedy_episode(model, kernel, w, cfg.step_cap, rng)});
    }
  }
  return out;
}

}  // namespace dpomdp::lvfa
