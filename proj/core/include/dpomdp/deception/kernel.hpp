#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "dpomdp/core/model.hpp"
#include "dpomdp/deception/deceived_observation.hpp"

namespace dpomdp::deception {

enum class KernelKind { None, Prob, Rand, Oppo };

std::string_view to_string(KernelKind kind);
/// Accepts none|baseline, prob, rand, oppo (case-insensitive).
KernelKind parse_kernel_kind(std::string_view text);

/// Observation-deception policy. `p_k` is only read by Prob; `r_d` is the
/// reward paid to the agent per deceived observation (0 disables it).
struct KernelSpec {
  KernelKind kind = KernelKind::None;
  double p_k = 1.0;
  double r_d = 0.0;

  void validate() const;
  std::string label() const;
};

/// Passes one informative observation through the kernel.
///
/// - None delivers `original`.
/// - Prob keeps a true `original` with probability p_k and otherwise swaps in
///   a uniformly chosen false observation; a false `original` passes through.
/// - Rand delivers a uniform draw from `obs_space`.
/// - Oppo delivers a uniform draw from `obs_space` minus the truth.
///
/// Throws DegenerateObservationSpace when Prob or Oppo has no false
/// observation to emit.
DeceivedObservation apply_kernel(const KernelSpec& kernel, ObsId original, ObsId true_obs,
                                 std::span<const ObsId> obs_space, Rng& rng);

/// End-to-end probability that the agent receives the true observation.
double aggregate_true_rate(const KernelSpec& kernel, double p_true, std::size_t obs_space_size);

/// True iff the aggregate rates at the worst-case sensor accuracy are ordered
/// Prob > Rand > Oppo across whichever of those kinds appear in `kernels`.
bool check_rate_ordering(std::span<const KernelSpec> kernels, double p_true_min, std::size_t obs_space_size);

/// r_d when a kernel other than None deceived this step's observation.
double deception_cost(const KernelSpec& kernel, bool applied);

/// Runs the kernel on an observation just emitted by `model`. Uninformative
/// observations bypass the kernel and yield nullopt.
std::optional<DeceivedObservation> intercept(const GenerativeModel& model, const KernelSpec& kernel,
                                             ActionId a, StateId next, ObsId original, Rng& rng);

/// Planning view that lets an agent anticipate the deception reward.
///
/// Observations and transitions are the wrapped model's own, so the agent
/// keeps trusting its sensor; each informative observation additionally pays
/// r_d whenever a kernel draw would have altered it.
class DeceptionRewardModel final : public GenerativeModel {
 public:
  DeceptionRewardModel(const GenerativeModel& base, KernelSpec kernel) : base_(base), kernel_(kernel) {}

  std::size_t num_actions() const override { return base_.num_actions(); }
  std::size_t num_observations() const override { return base_.num_observations(); }
  double discount() const override { return base_.discount(); }
  std::string action_name(ActionId a) const override { return base_.action_name(a); }
  std::string observation_name(ObsId o) const override { return base_.observation_name(o); }
  StateId sample_initial_state(Rng& rng) const override { return base_.sample_initial_state(rng); }
  bool is_terminal(StateId s) const override { return base_.is_terminal(s); }
  void legal_actions(StateId s, std::vector<ActionId>& out) const override { base_.legal_actions(s, out); }
  StepResult step(StateId s, ActionId a, Rng& rng) const override;
  std::optional<ObsId> true_observation(StateId next, ActionId a) const override {
    return base_.true_observation(next, a);
  }
  std::span<const ObsId> informative_observations(ActionId a) const override {
    return base_.informative_observations(a);
  }
  ActionClass classify_action(ActionId a) const override { return base_.classify_action(a); }
  StateId perturb(StateId s, Rng& rng) const override { return base_.perturb(s, rng); }
  void preferred_rollout_actions(StateId s, std::vector<ActionId>& out) const override {
    base_.preferred_rollout_actions(s, out);
  }

 private:
  const GenerativeModel& base_;
  KernelSpec kernel_;
};

}  // namespace dpomdp::deception
