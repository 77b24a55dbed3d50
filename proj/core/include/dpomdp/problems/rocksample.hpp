#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dpomdp/core/model.hpp"

namespace dpomdp::problems {

struct Cell {
  int x = 0;
  int y = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

inline constexpr int kMaxRocks = 16;

struct RockSampleConfig {
  int grid_width = 7;
  int grid_height = 7;
  std::vector<Cell> rock_positions = {{2, 0}, {0, 1}, {3, 1}, {6, 3}, {2, 4}, {3, 4}, {5, 5}, {1, 6}};
  Cell start{3, 0};
  /// x coordinate of the exit strip; stepping onto it ends the episode.
  int exit_column = 7;
  /// Distance at which the sensor is 75% accurate.
  double half_efficiency_distance = 20.0;
  double r_sample_good = 10.0;
  /// Magnitude of the penalty for a mismatched sample.
  double r_sample_penalty = 10.0;
  double r_exit = 10.0;
  double discount = 0.95;
  int step_cap = 100;

  void validate() const;
  int num_rocks() const { return static_cast<int>(rock_positions.size()); }
  /// Rock index at `c`, or -1.
  int rock_at(Cell c) const;
};

/// Sensor accuracy 1/2 (1 + 2^(-d/D)) for Euclidean distance d.
double sensor_accuracy(double distance, double half_efficiency_distance);

struct RockSampleState {
  Cell position;
  /// Bit i set when rock i is Good.
  std::uint32_t rocks = 0;
  /// Bit i set once rock i has been sampled.
  std::uint32_t sampled = 0;
  bool exited = false;

  bool rock_good(int i) const { return (rocks >> i) & 1U; }
  bool rock_sampled(int i) const { return (sampled >> i) & 1U; }

  StateId encode() const;
  static RockSampleState decode(StateId id);
  friend bool operator==(const RockSampleState&, const RockSampleState&) = default;
};

/// Reward for sampling the rock under the agent: +r_sample_good when the rock
/// is Good and believed Good (belief strictly above 1/2), otherwise the
/// penalty. Throws SampleOffRock when the agent is not on a rock.
double sample_reward(const RockSampleState& state, double rock_belief, const RockSampleConfig& cfg);

namespace rocksample {
inline constexpr ActionId kNorth = 0;
inline constexpr ActionId kSouth = 1;
inline constexpr ActionId kEast = 2;
inline constexpr ActionId kWest = 3;
inline constexpr ActionId kSample = 4;
inline constexpr ActionId kCheckBase = 5;
inline constexpr ActionId check(int rock) { return kCheckBase + static_cast<ActionId>(rock); }

inline constexpr ObsId kNone = 0;
inline constexpr ObsId kGood = 1;
inline constexpr ObsId kBad = 2;
}  // namespace rocksample

/// Factored RockSample exposed through the generative interface. States pack
/// position, rock qualities and the sampled mask into one StateId.
///
/// `step` scores Sample against the state's own rock quality (a fully
/// informed agent); the harness uses `step_with_belief` for the real
/// environment, and planners use RockSamplePlanningModel.
class RockSampleModel final : public GenerativeModel {
 public:
  explicit RockSampleModel(RockSampleConfig cfg);

  const RockSampleConfig& config() const { return cfg_; }
  int num_rocks() const { return cfg_.num_rocks(); }

  std::size_t num_actions() const override { return rocksample::kCheckBase + cfg_.rock_positions.size(); }
  std::size_t num_observations() const override { return 3; }
  double discount() const override { return cfg_.discount; }
  std::string action_name(ActionId a) const override;
  std::string observation_name(ObsId o) const override;

  RockSampleState initial_state(std::uint32_t rocks) const;
  StateId sample_initial_state(Rng& rng) const override;
  bool is_terminal(StateId s) const override;
  void legal_actions(StateId s, std::vector<ActionId>& out) const override;
  StepResult step(StateId s, ActionId a, Rng& rng) const override;
  std::optional<ObsId> true_observation(StateId next, ActionId a) const override;
  std::span<const ObsId> informative_observations(ActionId a) const override;
  ActionClass classify_action(ActionId a) const override;
  /// Flips each unsampled rock with probability 0.1.
  StateId perturb(StateId s, Rng& rng) const override;
  /// Sample when standing on an unsampled rock this state holds Good,
  /// otherwise head East for the exit.
  void preferred_rollout_actions(StateId s, std::vector<ActionId>& out) const override;

  /// Environment step where a Sample is judged against the agent's belief
  /// that the rock under it is Good.
  StepResult step_with_belief(StateId s, ActionId a, double rock_belief, Rng& rng) const;
  /// Step whose Sample compares `belief_rocks` (what the simulated agent
  /// holds) with the rock qualities in `judge_rocks`.
  StepResult step_judged(StateId s, ActionId a, std::uint32_t judge_rocks, Rng& rng) const;

  double check_accuracy(Cell from, int rock) const;
  /// Fraction of particles with each rock Good.
  std::vector<double> rock_marginals(std::span<const StateId> particles) const;

 private:
  enum class SampleMode { OwnState, Belief, Judged };
  StepResult advance(RockSampleState s, ActionId a, Rng& rng, double rock_belief, std::uint32_t judge_rocks,
                     SampleMode mode) const;
  bool is_legal(const RockSampleState& s, ActionId a) const;

  RockSampleConfig cfg_;
  std::vector<int> rock_index_;       // per cell, -1 if none
  std::vector<double> accuracy_;      // [cell][rock]
  static constexpr ObsId kCheckSpace[2] = {rocksample::kGood, rocksample::kBad};
};

/// Planner's view of one episode: Sample rewards compare the particle's rock
/// quality (the agent's hypothesis) with the environment's actual rocks, so a
/// sample pays off only when the belief sample matches a Good rock.
class RockSamplePlanningModel final : public GenerativeModel {
 public:
  RockSamplePlanningModel(const RockSampleModel& model, std::uint32_t actual_rocks)
      : model_(model), actual_rocks_(actual_rocks) {}

  std::size_t num_actions() const override { return model_.num_actions(); }
  std::size_t num_observations() const override { return model_.num_observations(); }
  double discount() const override { return model_.discount(); }
  std::string action_name(ActionId a) const override { return model_.action_name(a); }
  std::string observation_name(ObsId o) const override { return model_.observation_name(o); }
  StateId sample_initial_state(Rng& rng) const override { return model_.sample_initial_state(rng); }
  bool is_terminal(StateId s) const override { return model_.is_terminal(s); }
  void legal_actions(StateId s, std::vector<ActionId>& out) const override { model_.legal_actions(s, out); }
  StepResult step(StateId s, ActionId a, Rng& rng) const override {
    return model_.step_judged(s, a, actual_rocks_, rng);
  }
  std::optional<ObsId> true_observation(StateId next, ActionId a) const override {
    return model_.true_observation(next, a);
  }
  std::span<const ObsId> informative_observations(ActionId a) const override {
    return model_.informative_observations(a);
  }
  ActionClass classify_action(ActionId a) const override { return model_.classify_action(a); }
  StateId perturb(StateId s, Rng& rng) const override { return model_.perturb(s, rng); }
  void preferred_rollout_actions(StateId s, std::vector<ActionId>& out) const override {
    model_.preferred_rollout_actions(s, out);
  }

 private:
  const RockSampleModel& model_;
  std::uint32_t actual_rocks_;
};

/// Parses a text map: 'S' start, 'G' exit strip, digits for rocks, '.' empty.
/// The first line is the top row (largest y). Reward and sensor settings
/// keep their values from `base`.
RockSampleConfig parse_map(std::string_view text, const RockSampleConfig& base = {});
RockSampleConfig load_map_file(const std::filesystem::path& path, const RockSampleConfig& base = {});
/// Renders a config back to the map text format.
std::string render_map(const RockSampleConfig& cfg);

}  // namespace dpomdp::problems
