#pragma once

#include <span>
#include <vector>

#include "dpomdp/core/distribution.hpp"
#include "dpomdp/core/model.hpp"
#include "dpomdp/core/trajectory.hpp"
#include "dpomdp/deception/kernel.hpp"

namespace dpomdp::lvfa {

/// Per-action weight vectors over belief features: Q(b, a) = <w_a, b>.
class LinearValueFunction {
 public:
  LinearValueFunction() = default;
  LinearValueFunction(std::size_t num_actions, std::size_t num_states);

  std::size_t num_actions() const { return na_; }
  std::size_t num_states() const { return ns_; }

  std::span<const double> weights(ActionId a) const { return {w_.data() + a * ns_, ns_}; }
  std::span<double> weights(ActionId a) { return {w_.data() + a * ns_, ns_}; }
  void set_weights(ActionId a, std::span<const double> values);
  std::span<const double> all_weights() const { return w_; }

  double q(std::span<const double> b, ActionId a) const;
  std::vector<double> predict(std::span<const double> b) const;
  /// Argmax of predict; ties go to the lowest index.
  ActionId greedy_action(std::span<const double> b) const;

  long long training_epochs = 0;

 private:
  std::size_t na_ = 0;
  std::size_t ns_ = 0;
  std::vector<double> w_;
};

inline std::vector<double> predict(const LinearValueFunction& w, const DiscreteDistribution& b) {
  return w.predict(b.probs());
}
inline ActionId greedy_action(const LinearValueFunction& w, const DiscreteDistribution& b) {
  return w.greedy_action(b.probs());
}

enum class RewardSignal {
  /// Belief-weighted model reward sum_s b(s) R(s, a), plus deception cost.
  BeliefExpected,
  /// The sampled environment reward, plus deception cost.
  Experienced,
};

enum class WeightInit {
  Zero,
  /// w_a(s) = expected immediate reward of a in s (the horizon-1 vectors).
  ImmediateReward,
};

struct LvfaConfig {
  int epochs = 4500;
  /// A greedy validation episode follows every `validation_every`-th epoch.
  int validation_every = 9;
  double learning_rate = 0.01;
  double epsilon_start = 0.1;
  double epsilon_end = 0.01;
  int step_cap = 50;
  RewardSignal signal = RewardSignal::BeliefExpected;
  WeightInit init = WeightInit::ImmediateReward;

  void validate() const;
};

struct ValidationRecord {
  int epoch = 0;
  Trajectory trajectory;
};

struct TrainResult {
  LinearValueFunction value;
  std::vector<ValidationRecord> validations;
};

/// Semi-gradient TD(0) with epsilon-greedy exploration, trained on the
/// deceived belief stream. Throws DivergenceDetected when a weight exceeds
/// 10 R_max / (1 - gamma).
TrainResult train(const PomdpModel& model, const deception::KernelSpec& kernel, const LvfaConfig& cfg, Rng& rng);

/// Greedy episode under `w`.
Trajectory run_greedy_episode(const PomdpModel& model, const deception::KernelSpec& kernel,
                              const LinearValueFunction& w, int step_cap, Rng& rng);

}  // namespace dpomdp::lvfa
