#pragma once

#include <string_view>
#include <vector>

#include "dpomdp/core/trajectory.hpp"
#include "dpomdp/problems/rocksample.hpp"

namespace dpomdp::harness {

/// First letter: polarity of the delivered observation (T = Good).
/// Second letter: P if the agent later sampled the rock, N if it later stood
/// on the rock without sampling.
enum class ObsCategory { TP, FN, TN, FP, Ignore, Pending, NotApplicable };

std::string_view to_string(ObsCategory c);

struct ObsRecord {
  int episode = 0;
  int step = 0;
  /// Rock index, or the door (0) for Tiger.
  int target = 0;
  ObsId delivered = 0;
  ObsId original = 0;
  ObsId true_obs = 0;
  bool is_false = false;
  bool is_deceived = false;
  /// Marginal of the target (rock Good / tiger left) around the update.
  double belief_before = 0.5;
  double belief_after = 0.5;
  ObsCategory category = ObsCategory::Pending;
  bool belief_changed = false;
};

struct BeliefChange {
  bool changed = false;
  bool from_false = false;
  bool from_deceived = false;
};

/// MAP flip of the target marginal (label = marginal > 1/2).
BeliefChange attribute_belief_change(double before, double after, bool is_false, bool is_deceived);
BeliefChange attribute_belief_change(const ObsRecord& rec);

/// Classifies a Check observation by what the agent did afterwards, up to
/// and including the next Check of the same rock (or the episode end).
ObsCategory categorize_observation(const ObsRecord& rec, const Trajectory& traj,
                                   const problems::RockSampleConfig& cfg);

/// Records for every kernel-intercepted step of a RockSample episode, with
/// categories finalized.
std::vector<ObsRecord> rocksample_records(int episode, const Trajectory& traj,
                                          const problems::RockSampleConfig& cfg);
/// Records for every Listen of a Tiger episode (category NotApplicable).
std::vector<ObsRecord> tiger_records(int episode, const Trajectory& traj);

}  // namespace dpomdp::harness
