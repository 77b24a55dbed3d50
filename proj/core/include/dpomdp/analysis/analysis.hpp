#pragma once

#include <optional>

#include "dpomdp/core/types.hpp"

namespace dpomdp::analysis {

struct BeliefRatioResult {
  double ratio = 1.0;
  double p_true = 0.0;
  double p_false = 0.0;
  double p_0 = 0.0;
};

/// Ratio between the posterior mass on the true state after a true and after
/// a false observation, starting from prior mass `p_0` on the true state:
/// (pT^2 - (pT - pF) pT p0) / (pF^2 + (pT - pF) pF p0).
/// Requires p_true in (0.5, 1) and p_0 in [0, 1]; throws DomainError otherwise.
BeliefRatioResult belief_ratio(double p_true, double p_0);

/// Probability that a binary listen chain from the uniform prior is still
/// undecided after `steps` observations (2 or 4).
double trap_fail_prob(double p_true, int steps);

struct TrapOptions {
  /// Sensor accuracy the agent assumes when updating its belief.
  double sensor_accuracy = 0.85;
  /// Escape threshold on the larger belief component; defaults to the
  /// sensor accuracy.
  std::optional<double> threshold;
};

/// Monte-Carlo version of trap_fail_prob: observations are correct with
/// rate `p_true`, the agent filters them with `opts.sensor_accuracy`, and a
/// trial escapes once a belief component exceeds the threshold.
double trap_fail_mc(double p_true, int steps, long trials, Rng& rng, const TrapOptions& opts = {});

}  // namespace dpomdp::analysis
