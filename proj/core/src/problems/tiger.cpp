#include "dpomdp/problems/tiger.hpp"

#include "dpomdp/errors.hpp"

namespace dpomdp::problems {

void TigerConfig::validate() const {
  if (!(p_true > 0.5 && p_true <= 1.0)) throw ConfigError("tiger sensor accuracy must lie in (0.5, 1]");
  if (step_cap < 1) throw ConfigError("tiger step cap must be at least 1");
  if (!(discount >= 0.0 && discount <= 1.0)) throw ConfigError("discount must lie in [0, 1]");
}

PomdpModel tiger_model(const TigerConfig& cfg) {
  using namespace tiger;
  cfg.validate();
  constexpr std::size_t ns = 2, na = 3, no = 2;

  PomdpModel::Definition d;
  d.state_names = {"TigerLeft", "TigerRight"};
  d.action_names = {"Listen", "OpenLeft", "OpenRight"};
  d.observation_names = {"HearLeft", "HearRight"};
  d.transition.assign(na * ns * ns, 0.0);
  d.reward.assign(na * ns * ns, 0.0);
  d.observation.assign(na * ns * no, 0.0);
  d.ends_episode.assign(na * ns, 0);
  d.true_obs.assign(ns * na, std::nullopt);
  d.informative = {{kHearLeft, kHearRight}, {}, {}};
  d.discount = cfg.discount;
  d.initial_belief = DiscreteDistribution::uniform(ns);

  auto at = [](std::size_t a, std::size_t s, std::size_t n, std::size_t width) { return (a * ns + s) * width + n; };
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t s = 0; s < ns; ++s) {
      d.transition[at(a, s, s, ns)] = 1.0;
      for (std::size_t n = 0; n < ns; ++n) {
        double r = cfg.r_listen;
        if (a == kOpenLeft) r = (s == kTigerLeft) ? cfg.r_danger : cfg.r_safe;
        if (a == kOpenRight) r = (s == kTigerRight) ? cfg.r_danger : cfg.r_safe;
        d.reward[at(a, s, n, ns)] = r;
      }
      if (a == kListen) {
        ObsId correct = (s == kTigerLeft) ? kHearLeft : kHearRight;
        d.observation[at(a, s, correct, no)] = cfg.p_true;
        d.observation[at(a, s, 1 - correct, no)] = 1.0 - cfg.p_true;
        d.true_obs[s * na + a] = correct;
      } else {
        d.observation[at(a, s, 0, no)] = 0.5;
        d.observation[at(a, s, 1, no)] = 0.5;
        d.ends_episode[a * ns + s] = 1;
      }
    }
  }
  return PomdpModel(std::move(d));
}

}  // namespace dpomdp::problems
