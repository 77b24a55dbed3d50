#pragma once

#include "dpomdp/core/types.hpp"

namespace dpomdp::deception {

/// Provenance of one observation that passed through a kernel.
struct DeceivedObservation {
  ObsId delivered = 0;
  ObsId original = 0;
  ObsId true_obs = 0;
  bool is_false = false;
  bool is_deceived = false;

  static DeceivedObservation make(ObsId delivered, ObsId original, ObsId true_obs) {
    return {delivered, original, true_obs, delivered != true_obs, delivered != original};
  }
};

}  // namespace dpomdp::deception
