#include "dpomdp/problems/rocksample.hpp"

#include <cmath>
#include <string>

#include "dpomdp/errors.hpp"

namespace dpomdp::problems {

using namespace rocksample;

void RockSampleConfig::validate() const {
  if (grid_width < 1 || grid_height < 1) throw ConfigError("rocksample grid must be at least 1x1");
  if (grid_width > 255 || grid_height > 255) throw ConfigError("rocksample grid too large");
  if (exit_column != grid_width) throw ConfigError("exit strip must be the column right of the grid");
  if (rock_positions.empty() || num_rocks() > kMaxRocks)
    throw ConfigError("rocksample needs between 1 and 16 rocks");
  auto inside = [&](Cell c) { return c.x >= 0 && c.x < grid_width && c.y >= 0 && c.y < grid_height; };
  for (std::size_t i = 0; i < rock_positions.size(); ++i) {
    if (!inside(rock_positions[i])) throw ConfigError("rock " + std::to_string(i) + " outside the grid");
    for (std::size_t j = 0; j < i; ++j)
      if (rock_positions[i] == rock_positions[j]) throw ConfigError("duplicate rock position");
  }
  if (!inside(start)) throw ConfigError("start outside the grid");
  if (!(half_efficiency_distance > 0.0)) throw ConfigError("half-efficiency distance must be positive");
  if (!(discount >= 0.0 && discount <= 1.0)) throw ConfigError("discount must lie in [0, 1]");
  if (step_cap < 1) throw ConfigError("step cap must be at least 1");
}

int RockSampleConfig::rock_at(Cell c) const {
  for (std::size_t i = 0; i < rock_positions.size(); ++i)
    if (rock_positions[i] == c) return static_cast<int>(i);
  return -1;
}

double sensor_accuracy(double distance, double half_efficiency_distance) {
  if (distance < 0.0 || !(half_efficiency_distance > 0.0)) throw DomainError("sensor_accuracy: bad arguments");
  return 0.5 * (1.0 + std::exp2(-distance / half_efficiency_distance));
}

StateId RockSampleState::encode() const {
  return static_cast<StateId>(rocks & 0xFFFFU) | (static_cast<StateId>(sampled & 0xFFFFU) << 16) |
         (static_cast<StateId>(position.x & 0xFF) << 32) | (static_cast<StateId>(position.y & 0xFF) << 40) |
         (static_cast<StateId>(exited ? 1 : 0) << 48);
}

RockSampleState RockSampleState::decode(StateId id) {
  RockSampleState s;
  s.rocks = static_cast<std::uint32_t>(id & 0xFFFFU);
  s.sampled = static_cast<std::uint32_t>((id >> 16) & 0xFFFFU);
  s.position.x = static_cast<int>((id >> 32) & 0xFF);
  s.position.y = static_cast<int>((id >> 40) & 0xFF);
  s.exited = ((id >> 48) & 1U) != 0;
  return s;
}

double sample_reward(const RockSampleState& state, double rock_belief, const RockSampleConfig& cfg) {
  const int rock = cfg.rock_at(state.position);
  if (rock < 0) throw SampleOffRock("no rock at the agent's position");
  return (state.rock_good(rock) && rock_belief > 0.5) ? cfg.r_sample_good : -cfg.r_sample_penalty;
}

RockSampleModel::RockSampleModel(RockSampleConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  const auto w = static_cast<std::size_t>(cfg_.grid_width), h = static_cast<std::size_t>(cfg_.grid_height);
  const auto n = cfg_.rock_positions.size();
  rock_index_.assign(w * h, -1);
  accuracy_.assign(w * h * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const Cell r = cfg_.rock_positions[i];
    rock_index_[static_cast<std::size_t>(r.y) * w + static_cast<std::size_t>(r.x)] = static_cast<int>(i);
  }
  for (int y = 0; y < cfg_.grid_height; ++y) {
    for (int x = 0; x < cfg_.grid_width; ++x) {
      for (std::size_t i = 0; i < n; ++i) {
        const double dx = x - cfg_.rock_positions[i].x, dy = y - cfg_.rock_positions[i].y;
        accuracy_[(static_cast<std::size_t>(y) * w + static_cast<std::size_t>(x)) * n + i] =
            sensor_accuracy(std::hypot(dx, dy), cfg_.half_efficiency_distance);
      }
    }
  }
}

std::string RockSampleModel::action_name(ActionId a) const {
  switch (a) {
    case kNorth: return "North";
    case kSouth: return "South";
    case kEast: return "East";
    case kWest: return "West";
    case kSample: return "Sample";
    default: return "Check-" + std::to_string(a - kCheckBase);
  }
}

std::string RockSampleModel::observation_name(ObsId o) const {
  switch (o) {
    case kNone: return "None";
    case kGood: return "Good";
    case kBad: return "Bad";
    default: return std::to_string(o);
  }
}

RockSampleState RockSampleModel::initial_state(std::uint32_t rocks) const {
  RockSampleState s;
  s.position = cfg_.start;
  s.rocks = rocks & ((1U << num_rocks()) - 1U);
  return s;
}

StateId RockSampleModel::sample_initial_state(Rng& rng) const {
  std::uint32_t rocks = 0;
  for (int i = 0; i < num_rocks(); ++i)
    if (bernoulli(rng, 0.5)) rocks |= 1U << i;
  return initial_state(rocks).encode();
}

bool RockSampleModel::is_terminal(StateId s) const { return RockSampleState::decode(s).exited; }

bool RockSampleModel::is_legal(const RockSampleState& s, ActionId a) const {
  if (s.exited || a >= num_actions()) return false;
  switch (a) {
    case kNorth: return s.position.y + 1 < cfg_.grid_height;
    case kSouth: return s.position.y > 0;
    case kEast: return true;  // the rightmost column borders the exit strip
    case kWest: return s.position.x > 0;
    case kSample: {
      const int rock = cfg_.rock_at(s.position);
      return rock >= 0 && !s.rock_sampled(rock);
    }
    default: return true;
  }
}

void RockSampleModel::legal_actions(StateId id, std::vector<ActionId>& out) const {
  out.clear();
  const auto s = RockSampleState::decode(id);
  for (ActionId a = 0; a < num_actions(); ++a)
    if (is_legal(s, a)) out.push_back(a);
}

double RockSampleModel::check_accuracy(Cell from, int rock) const {
  const auto n = cfg_.rock_positions.size();
  const auto cell = static_cast<std::size_t>(from.y) * static_cast<std::size_t>(cfg_.grid_width) +
                    static_cast<std::size_t>(from.x);
  return accuracy_[cell * n + static_cast<std::size_t>(rock)];
}

StepResult RockSampleModel::advance(RockSampleState s, ActionId a, Rng& rng, double rock_belief,
                                    std::uint32_t judge_rocks, SampleMode mode) const {
  if (s.exited) throw StepOnTerminal("rocksample: step from the exited state");
  if (!is_legal(s, a)) throw std::invalid_argument("rocksample: illegal action " + action_name(a));
  StepResult r;
  r.observation = kNone;
  switch (a) {
    case kNorth: ++s.position.y; break;
    case kSouth: --s.position.y; break;
    case kWest: --s.position.x; break;
    case kEast:
      if (s.position.x + 1 == cfg_.exit_column) {
        s.exited = true;
        r.reward = cfg_.r_exit;
        r.terminal = true;
      } else {
        ++s.position.x;
      }
      break;
    case kSample: {
      const int rock = cfg_.rock_at(s.position);
      switch (mode) {
        case SampleMode::OwnState: r.reward = sample_reward(s, s.rock_good(rock) ? 1.0 : 0.0, cfg_); break;
        case SampleMode::Belief: r.reward = sample_reward(s, rock_belief, cfg_); break;
        case SampleMode::Judged: {
          RockSampleState judge = s;
          judge.rocks = judge_rocks;
          r.reward = sample_reward(judge, s.rock_good(rock) ? 1.0 : 0.0, cfg_);
          break;
        }
      }
      s.rocks &= ~(1U << rock);
      s.sampled |= 1U << rock;
      break;
    }
    default: {
      const int rock = static_cast<int>(a - kCheckBase);
      const bool correct = bernoulli(rng, check_accuracy(s.position, rock));
      r.observation = (s.rock_good(rock) == correct) ? kGood : kBad;
      break;
    }
  }
  r.next = s.encode();
  return r;
}

StepResult RockSampleModel::step(StateId s, ActionId a, Rng& rng) const {
  return advance(RockSampleState::decode(s), a, rng, 0.0, 0, SampleMode::OwnState);
}

StepResult RockSampleModel::step_with_belief(StateId s, ActionId a, double rock_belief, Rng& rng) const {
  return advance(RockSampleState::decode(s), a, rng, rock_belief, 0, SampleMode::Belief);
}

StepResult RockSampleModel::step_judged(StateId s, ActionId a, std::uint32_t judge_rocks, Rng& rng) const {
  return advance(RockSampleState::decode(s), a, rng, 0.0, judge_rocks, SampleMode::Judged);
}

std::optional<ObsId> RockSampleModel::true_observation(StateId next, ActionId a) const {
  if (a < kCheckBase || a >= num_actions()) return std::nullopt;
  const auto s = RockSampleState::decode(next);
  return s.rock_good(static_cast<int>(a - kCheckBase)) ? kGood : kBad;
}

std::span<const ObsId> RockSampleModel::informative_observations(ActionId a) const {
  if (a < kCheckBase || a >= num_actions()) return {};
  return {kCheckSpace, 2};
}

ActionClass RockSampleModel::classify_action(ActionId a) const {
  if (a >= num_actions()) throw std::out_of_range("rocksample: action out of range");
  return a >= kCheckBase ? ActionClass::Observing : ActionClass::Operating;
}

StateId RockSampleModel::perturb(StateId id, Rng& rng) const {
  auto s = RockSampleState::decode(id);
  for (int i = 0; i < num_rocks(); ++i)
    if (!s.rock_sampled(i) && bernoulli(rng, 0.1)) s.rocks ^= 1U << i;
  return s.encode();
}

void RockSampleModel::preferred_rollout_actions(StateId id, std::vector<ActionId>& out) const {
  out.clear();
  const auto s = RockSampleState::decode(id);
  if (s.exited) return;
  const int rock = cfg_.rock_at(s.position);
  out.push_back(rock >= 0 && !s.rock_sampled(rock) && s.rock_good(rock) ? kSample : kEast);
}

std::vector<double> RockSampleModel::rock_marginals(std::span<const StateId> particles) const {
  std::vector<double> m(static_cast<std::size_t>(num_rocks()), 0.0);
  if (particles.empty()) return m;
  for (StateId p : particles) {
    const auto s = RockSampleState::decode(p);
    for (int i = 0; i < num_rocks(); ++i)
      if (s.rock_good(i)) m[static_cast<std::size_t>(i)] += 1.0;
  }
  for (double& v : m) v /= static_cast<double>(particles.size());
  return m;
}

}  // namespace dpomdp::problems
