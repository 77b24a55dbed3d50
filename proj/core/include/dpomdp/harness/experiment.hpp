/*
 * Copyright (c) the dpomdp contributors
 *
 * Permission is hereby granted, free of charge, to any person obtaining a copy
 * of this software and associated documentation files (the "Software"), to
 * deal in the Software without restriction, subject to the conditions in the
 * LICENSE file at the root of this distribution.
 */
#pragma once

#include <optional>
#include <vector>

#include "dpomdp/core/trajectory.hpp"
#include "dpomdp/harness/config.hpp"
#include "dpomdp/harness/metrics.hpp"
#include "dpomdp/lvfa/linear_value_function.hpp"
#include "dpomdp/vi/alpha_vectors.hpp"

namespace dpomdp::harness {

struct ExperimentResult {
  MetricsSummary summary;
  std::vector<EpisodeResult> episodes;
  /// Tiger only.
  std::optional<Histogram2D> histogram;
  std::optional<vi::AlphaVectorSet> alpha;
  /// Weights from every LVFA run, in run order.
  std::vector<lvfa::LinearValueFunction> lvfa_weights;
};

/// Runs every episode of `cfg` (in parallel, reduced in episode order),
/// summarizes them, and writes the CSV set when cfg.out_dir is set.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// One RockSample episode planned with POMCP against the real, kernel-
/// intercepted environment. Particle depletion ends the episode with
/// `aborted` set.
Trajectory run_rocksample_episode(const problems::RockSampleModel& model, const deception::KernelSpec& kernel,
                                  const pomcp::PomcpConfig& cfg, Rng& rng);

/// One explicit-model episode planned with POMCP.
Trajectory run_pomcp_episode(const PomdpModel& model, const deception::KernelSpec& kernel,
                             const pomcp::PomcpConfig& cfg, int step_cap, Rng& rng);

}  // namespace dpomdp::harness
