// SPDX-License-Identifier: MIT
#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dpomdp/core/distribution.hpp"
#include "dpomdp/core/types.hpp"

namespace dpomdp {

enum class ActionClass { Operating, Observing, Terminalizing };

std::string_view to_string(ActionClass c);

struct StepResult {
  StateId next = 0;
  ObsId observation = 0;
  double reward = 0.0;
  /// The episode ends with this transition.
  bool terminal = false;
};

/// Sampling interface shared by the explicit and the factored problems.
/// Implementations are immutable after construction and safe to share
/// across threads; all randomness flows through the caller's Rng.
class GenerativeModel {
 public:
  virtual ~GenerativeModel() = default;

  virtual std::size_t num_actions() const = 0;
  virtual std::size_t num_observations() const = 0;
  virtual double discount() const = 0;

  virtual std::string action_name(ActionId a) const;
  virtual std::string observation_name(ObsId o) const;

  virtual StateId sample_initial_state(Rng& rng) const = 0;
  virtual bool is_terminal(StateId s) const = 0;
  /// Legal actions in `s`, in increasing index order.
  virtual void legal_actions(StateId s, std::vector<ActionId>& out) const = 0;
  /// One generative transition. Implementations throw StepOnTerminal for a
  /// terminal `s`.
  virtual StepResult step(StateId s, ActionId a, Rng& rng) const = 0;

  /// The single true observation for action `a` arriving in `next`, or
  /// nullopt when `a` emits no informative observation.
  virtual std::optional<ObsId> true_observation(StateId next, ActionId a) const = 0;
  /// Informative observations `a` can emit; empty when uninformative.
  virtual std::span<const ObsId> informative_observations(ActionId a) const = 0;

  virtual ActionClass classify_action(ActionId a) const = 0;

  /// Actions a knowledge-guided rollout may pick from; the legal actions
  /// unless a problem narrows them.
  virtual void preferred_rollout_actions(StateId s, std::vector<ActionId>& out) const { legal_actions(s, out); }

  /// Local noise used by particle reinvigoration. Identity by default.
  virtual StateId perturb(StateId s, Rng& /*rng*/) const { return s; }
};

/// Explicit-matrix POMDP {S, A, T, R, Omega, O, gamma} for small problems.
///
/// Episode termination is expressed per (s, a) pair: an action that ends the
/// episode has no successor history, so its future value is zero. `terminal`
/// marks absorbing states that may not be stepped from at all.
class PomdpModel final : public GenerativeModel {
 public:
  struct Definition {
    std::vector<std::string> state_names;
    std::vector<std::string> action_names;
    std::vector<std::string> observation_names;
    /// T(s' | s, a), indexed [a][s][s'].
    std::vector<double> transition;
    /// R(s, a, s'), indexed [a][s][s'].
    std::vector<double> reward;
    /// O(o | s', a), indexed [a][s'][o].
    std::vector<double> observation;
    /// Non-zero when taking a in s ends the episode, indexed [a][s].
    std::vector<unsigned char> ends_episode;
    /// Absorbing terminal states, indexed [s]. Empty means none.
    std::vector<unsigned char> terminal;
    /// True observation per [s'][a]; nullopt for uninformative actions.
    std::vector<std::optional<ObsId>> true_obs;
    /// Informative observation set per action.
    std::vector<std::vector<ObsId>> informative;
    double discount = 0.95;
    DiscreteDistribution initial_belief;
  };

  explicit PomdpModel(Definition def);

  std::size_t num_states() const { return ns_; }
  std::size_t num_actions() const override { return na_; }
  std::size_t num_observations() const override { return no_; }
  double discount() const override { return def_.discount; }

  std::string action_name(ActionId a) const override;
  std::string observation_name(ObsId o) const override;
  const std::string& state_name(StateId s) const;

  double transition(StateId s, ActionId a, StateId next) const {
    return def_.transition[(a * ns_ + s) * ns_ + next];
  }
  double reward(StateId s, ActionId a, StateId next) const {
    return def_.reward[(a * ns_ + s) * ns_ + next];
  }
  double observation(ActionId a, StateId next, ObsId o) const {
    return def_.observation[(a * ns_ + next) * no_ + o];
  }
  bool ends_episode(StateId s, ActionId a) const { return def_.ends_episode[a * ns_ + s] != 0; }
  /// Expected immediate reward sum_{s'} T(s'|s,a) R(s,a,s').
  double expected_reward(StateId s, ActionId a) const { return expected_reward_[a * ns_ + s]; }
  double max_abs_reward() const;

  const DiscreteDistribution& initial_belief() const { return def_.initial_belief; }

  StateId sample_initial_state(Rng& rng) const override;
  bool is_terminal(StateId s) const override;
  void legal_actions(StateId s, std::vector<ActionId>& out) const override;
  StepResult step(StateId s, ActionId a, Rng& rng) const override;
  std::optional<ObsId> true_observation(StateId next, ActionId a) const override;
  std::span<const ObsId> informative_observations(ActionId a) const override;
  ActionClass classify_action(ActionId a) const override;

 private:
  Definition def_;
  std::size_t ns_ = 0;
  std::size_t na_ = 0;
  std::size_t no_ = 0;
  std::vector<double> expected_reward_;
};

}  // namespace dpomdp
