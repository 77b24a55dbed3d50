#pragma once

#include "dpomdp/core/model.hpp"

namespace dpomdp::problems {

struct TigerConfig {
  /// Probability that Listen reports the side the tiger is on.
  double p_true = 0.85;
  double r_listen = -1.0;
  double r_safe = 10.0;
  double r_danger = -20.0;
  double discount = 0.95;
  int step_cap = 50;

  void validate() const;
};

namespace tiger {
inline constexpr StateId kTigerLeft = 0;
inline constexpr StateId kTigerRight = 1;
inline constexpr ActionId kListen = 0;
inline constexpr ActionId kOpenLeft = 1;
inline constexpr ActionId kOpenRight = 2;
inline constexpr ObsId kHearLeft = 0;
inline constexpr ObsId kHearRight = 1;

/// Opening the door without the tiger.
inline bool is_correct_door(StateId tiger, ActionId door) {
  return (tiger == kTigerLeft && door == kOpenRight) || (tiger == kTigerRight && door == kOpenLeft);
}
}  // namespace tiger

/// Two states, three actions, two observations. Opening a door ends the
/// episode; the observation emitted by a door is uninformative.
PomdpModel tiger_model(const TigerConfig& cfg = {});

}  // namespace dpomdp::problems
