#pragma once

#include <filesystem>
#include <ostream>
#include <span>

#include "dpomdp/core/model.hpp"
#include "dpomdp/harness/metrics.hpp"
#include "dpomdp/lvfa/linear_value_function.hpp"
#include "dpomdp/vi/alpha_vectors.hpp"

namespace dpomdp::harness {

struct ExperimentResult;

// All writers emit a header row and print floats with 6 significant digits.
void write_summary_csv(std::ostream& os, std::span<const MetricsSummary> rows);
void write_episodes_csv(std::ostream& os, std::span<const EpisodeResult> episodes, double gamma);
void write_steps_csv(std::ostream& os, std::span<const EpisodeResult> episodes);
void write_observations_csv(std::ostream& os, std::span<const EpisodeResult> episodes);
void write_occupancy_csv(std::ostream& os, const OccupancyGrid& grid);
void write_histogram_csv(std::ostream& os, const Histogram2D& hist);
/// Rows of (action, action_name, v0, v1, ...).
void write_alpha_csv(std::ostream& os, const vi::AlphaVectorSet& set, const GenerativeModel& model);
void write_alpha_csv(std::ostream& os, const lvfa::LinearValueFunction& w, const GenerativeModel& model);

/// Writes summary, episodes, steps and observations CSVs, plus occupancy
/// (RockSample), belief_hist (Tiger) and alpha (vi, lvfa) where they apply.
void write_outputs(const std::filesystem::path& dir, const ExperimentConfig& cfg, const ExperimentResult& result);

}  // namespace dpomdp::harness
