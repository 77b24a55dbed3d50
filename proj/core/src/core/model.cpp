#include "dpomdp/core/model.hpp"

#include <algorithm>
#include <cmath>

#include "dpomdp/core/trajectory.hpp"
#include "dpomdp/errors.hpp"

namespace dpomdp {

std::string_view to_string(ActionClass c) {
  switch (c) {
    case ActionClass::Operating: return "Operating";
    case ActionClass::Observing: return "Observing";
    case ActionClass::Terminalizing: return "Terminalizing";
  }
  return "?";
}

std::string GenerativeModel::action_name(ActionId a) const { return "a" + std::to_string(a); }
std::string GenerativeModel::observation_name(ObsId o) const { return "o" + std::to_string(o); }

PomdpModel::PomdpModel(Definition def) : def_(std::move(def)) {
  ns_ = def_.state_names.size();
  na_ = def_.action_names.size();
  no_ = def_.observation_names.size();
  if (ns_ == 0 || na_ == 0 || no_ == 0) throw InvalidModel("model needs states, actions and observations");
  if (def_.transition.size() != na_ * ns_ * ns_) throw InvalidModel("transition table has the wrong size");
  if (def_.reward.size() != na_ * ns_ * ns_) throw InvalidModel("reward table has the wrong size");
  if (def_.observation.size() != na_ * ns_ * no_) throw InvalidModel("observation table has the wrong size");
  if (def_.ends_episode.empty()) def_.ends_episode.assign(na_ * ns_, 0);
  if (def_.ends_episode.size() != na_ * ns_) throw InvalidModel("ends_episode table has the wrong size");
  if (def_.terminal.empty()) def_.terminal.assign(ns_, 0);
  if (def_.terminal.size() != ns_) throw InvalidModel("terminal table has the wrong size");
  if (def_.true_obs.empty()) def_.true_obs.assign(ns_ * na_, std::nullopt);
  if (def_.true_obs.size() != ns_ * na_) throw InvalidModel("true observation table has the wrong size");
  if (def_.informative.empty()) def_.informative.assign(na_, {});
  if (def_.informative.size() != na_) throw InvalidModel("informative observation sets have the wrong size");
  if (def_.initial_belief.size() != ns_) throw InvalidModel("initial belief has the wrong support");
  if (!(def_.discount >= 0.0 && def_.discount <= 1.0)) throw InvalidModel("discount must lie in [0, 1]");

  for (std::size_t a = 0; a < na_; ++a) {
    for (std::size_t s = 0; s < ns_; ++s) {
      std::span<const double> row(&def_.transition[(a * ns_ + s) * ns_], ns_);
      if (!is_valid_distribution(row)) throw InvalidModel("transition row is not a distribution");
      std::span<const double> orow(&def_.observation[(a * ns_ + s) * no_], no_);
      if (!is_valid_distribution(orow)) throw InvalidModel("observation row is not a distribution");
    }
    for (ObsId o : def_.informative[a]) {
      if (o >= no_) throw InvalidModel("informative observation out of range");
    }
  }
  for (const auto& t : def_.true_obs) {
    if (t && *t >= no_) throw InvalidModel("true observation out of range");
  }

  expected_reward_.assign(na_ * ns_, 0.0);
  for (std::size_t a = 0; a < na_; ++a) {
    for (std::size_t s = 0; s < ns_; ++s) {
      double r = 0.0;
      for (std::size_t n = 0; n < ns_; ++n) r += transition(s, a, n) * reward(s, a, n);
      expected_reward_[a * ns_ + s] = r;
    }
  }
}

std::string PomdpModel::action_name(ActionId a) const { return def_.action_names.at(a); }
std::string PomdpModel::observation_name(ObsId o) const { return def_.observation_names.at(o); }
const std::string& PomdpModel::state_name(StateId s) const { return def_.state_names.at(s); }

double PomdpModel::max_abs_reward() const {
  double m = 0.0;
  for (double r : def_.reward) m = std::max(m, std::abs(r));
  return m;
}

StateId PomdpModel::sample_initial_state(Rng& rng) const { return def_.initial_belief.sample(rng); }

bool PomdpModel::is_terminal(StateId s) const { return def_.terminal.at(s) != 0; }

void PomdpModel::legal_actions(StateId /*s*/, std::vector<ActionId>& out) const {
  out.resize(na_);
  for (std::size_t a = 0; a < na_; ++a) out[a] = a;
}

StepResult PomdpModel::step(StateId s, ActionId a, Rng& rng) const {
  if (is_terminal(s)) throw StepOnTerminal("step requested from terminal state " + state_name(s));
  StepResult r;
  double u = uniform01(rng);
  r.next = ns_ - 1;
  for (std::size_t n = 0; n < ns_; ++n) {
    u -= transition(s, a, n);
    if (u < 0.0) {
      r.next = n;
      break;
    }
  }
  double v = uniform01(rng);
  r.observation = no_ - 1;
  for (std::size_t o = 0; o < no_; ++o) {
    v -= observation(a, r.next, o);
    if (v < 0.0) {
      r.observation = o;
      break;
    }
  }
  r.reward = reward(s, a, r.next);
  r.terminal = ends_episode(s, a) || is_terminal(r.next);
  return r;
}

std::optional<ObsId> PomdpModel::true_observation(StateId next, ActionId a) const {
  return def_.true_obs[next * na_ + a];
}

std::span<const ObsId> PomdpModel::informative_observations(ActionId a) const {
  return def_.informative.at(a);
}

ActionClass PomdpModel::classify_action(ActionId a) const {
  bool terminates = true;
  bool stays = true;
  for (std::size_t s = 0; s < ns_; ++s) {
    if (!ends_episode(s, a)) terminates = false;
    if (std::abs(transition(s, a, s) - 1.0) > 1e-12) stays = false;
  }
  if (terminates) return ActionClass::Terminalizing;

  // Informative when the observation row differs across successor states.
  bool informative = false;
  for (std::size_t n = 1; n < ns_ && !informative; ++n) {
    for (std::size_t o = 0; o < no_; ++o) {
      if (std::abs(observation(a, n, o) - observation(a, 0, o)) > 1e-12) {
        informative = true;
        break;
      }
    }
  }
  if (stays && informative) return ActionClass::Observing;
  if (!informative) return ActionClass::Operating;
  throw UnclassifiableAction("action " + action_name(a) + " both transits state and observes");
}

std::vector<double> Trajectory::rewards() const {
  std::vector<double> r;
  r.reserve(steps.size());
  for (const auto& s : steps) r.push_back(s.reward);
  return r;
}

double Trajectory::undiscounted_return() const {
  double total = 0.0;
  for (const auto& s : steps) total += s.reward;
  return total;
}

double Trajectory::discounted_return(double gamma) const {
  double total = 0.0;
  double w = 1.0;
  for (const auto& s : steps) {
    total += w * s.reward;
    w *= gamma;
  }
  return total;
}

}  // namespace dpomdp
