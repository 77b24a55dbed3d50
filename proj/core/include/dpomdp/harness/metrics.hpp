#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "dpomdp/core/trajectory.hpp"
#include "dpomdp/harness/categorize.hpp"
#include "dpomdp/harness/config.hpp"

namespace dpomdp::harness {

struct EpisodeResult {
  int index = 0;
  /// Training run and epoch for LVFA validation episodes; 0 otherwise.
  int run = 0;
  int epoch = 0;
  Trajectory trajectory;
  std::vector<ObsRecord> observations;
};

struct MeanSe {
  double mean = 0.0;
  /// Sample standard deviation over sqrt(n).
  double se = 0.0;
};

MeanSe mean_se(std::span<const double> xs);

struct CategoryCounts {
  long tp = 0, fn = 0, tn = 0, fp = 0, ignore = 0;

  long total() const { return tp + fn + tn + fp + ignore; }
  long acted() const { return tp + fn + tn + fp; }
  /// (TP + FN) / (TP + FN + TN + FP); 0 when nothing was acted on.
  double consistency() const;
  void add(ObsCategory c);
};

struct BeliefChangeCounts {
  long total = 0;
  long from_false = 0;
  long from_deceived = 0;
};

using OccupancyGrid = std::vector<std::vector<double>>;  // [y][x]

struct MetricsSummary {
  std::string label;
  ProblemKind problem = ProblemKind::Tiger;
  SolverKind solver = SolverKind::Lvfa;
  deception::KernelSpec kernel;
  long episodes = 0;
  MeanSe undiscounted;
  MeanSe discounted;
  double avg_steps = 0.0;

  long correct = 0;
  long incorrect = 0;
  long other = 0;
  double avg_listens = 0.0;

  double avg_sampled = 0.0;
  double avg_checks = 0.0;

  long observations = 0;
  BeliefChangeCounts belief_changes;
  CategoryCounts normal;
  CategoryCounts deceived;
  long aborted = 0;
  /// Aggregate true rates ordered Prob > Rand > Oppo at the worst-case sensor.
  bool rate_ordering_ok = true;

  OccupancyGrid occupancy;
};

/// Per-cell mean visit counts (position before each action) over episodes.
/// Throws EmptyGrid for zero episodes.
OccupancyGrid occupancy_grid(std::span<const Trajectory> trajectories, const problems::RockSampleConfig& cfg);

struct Histogram2D {
  std::vector<double> belief_edges;
  std::vector<double> return_edges;
  /// counts[r][b]
  std::vector<std::vector<long>> counts;

  long total() const;
};

/// Each step's pre-action belief of tiger-left is binned against the
/// episode's final undiscounted return; out-of-range values clamp to the
/// outer bins.
Histogram2D reward_belief_histogram(std::span<const Trajectory> trajectories, const HistogramSpec& spec);

MetricsSummary summarize(const ExperimentConfig& cfg, std::span<const EpisodeResult> episodes);

}  // namespace dpomdp::harness
