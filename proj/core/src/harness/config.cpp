#include "dpomdp/harness/config.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "dpomdp/errors.hpp"

namespace dpomdp::harness {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "name", "problem", "solver", "kernel", "p_k", "r_d", "episodes", "seed", "workers",
      "tiger.p_true", "tiger.r_listen", "tiger.r_safe", "tiger.r_danger", "tiger.discount", "tiger.step_cap",
      "rocksample.map", "rocksample.half_efficiency_distance", "rocksample.r_sample_good",
      "rocksample.r_sample_penalty", "rocksample.r_exit", "rocksample.discount", "rocksample.step_cap",
      "vi.horizon",
      "lvfa.epochs", "lvfa.validation_every", "lvfa.learning_rate", "lvfa.epsilon_start", "lvfa.epsilon_end",
      "lvfa.runs", "lvfa.reward_signal", "lvfa.init",
      "pomcp.simulations", "pomcp.uct_c", "pomcp.max_depth", "pomcp.truncation", "pomcp.particle_lower",
      "pomcp.particle_upper", "pomcp.attempt_factor", "pomcp.preferred_rollouts",
      "hist.belief_bins", "hist.return_min", "hist.return_max", "hist.return_bins"};
  return keys;
}

}  // namespace

std::string_view to_string(ProblemKind p) { return p == ProblemKind::Tiger ? "tiger" : "rocksample"; }

std::string_view to_string(SolverKind s) {
  switch (s) {
    case SolverKind::Vi: return "vi";
    case SolverKind::Lvfa: return "lvfa";
    case SolverKind::Pomcp: return "pomcp";
  }
  return "?";
}

ProblemKind parse_problem(std::string_view text) {
  const auto t = lower(text);
  if (t == "tiger") return ProblemKind::Tiger;
  if (t == "rocksample") return ProblemKind::RockSample;
  throw ConfigError("unknown problem '" + std::string(text) + "'");
}

SolverKind parse_solver(std::string_view text) {
  const auto t = lower(text);
  if (t == "vi") return SolverKind::Vi;
  if (t == "lvfa") return SolverKind::Lvfa;
  if (t == "pomcp") return SolverKind::Pomcp;
  throw ConfigError("unknown solver '" + std::string(text) + "'");
}

void ExperimentConfig::validate() const {
  if (episodes < 1) throw ConfigError("episodes must be at least 1");
  kernel.validate();
  tiger.validate();
  rocksample.validate();
  lvfa.validate();
  pomcp.validate();
  if (vi_horizon < 0) throw ConfigError("vi horizon must be non-negative");
  if (lvfa_runs < 1) throw ConfigError("lvfa runs must be at least 1");
  if (problem == ProblemKind::RockSample && solver != SolverKind::Pomcp)
    throw ConfigError("rocksample runs with the pomcp solver only");
}

std::string ExperimentConfig::label() const {
  if (!name.empty()) return name;
  return std::string(to_string(problem)) + "-" + std::string(to_string(solver)) + "-" + kernel.label();
}

ExperimentConfig experiment_from_kv(const KvConfig& kv) {
  for (const auto& [k, v] : kv.values())
    if (!known_keys().count(k)) throw ConfigError("unknown config key '" + k + "'");

  ExperimentConfig c;
  c.name = kv.get_string("name", "");
  c.problem = parse_problem(kv.get_string("problem", "tiger"));
  c.solver = parse_solver(kv.get_string("solver", c.problem == ProblemKind::Tiger ? "lvfa" : "pomcp"));
  c.kernel.kind = deception::parse_kernel_kind(kv.get_string("kernel", "none"));
  c.kernel.p_k = kv.get_double("p_k", c.kernel.p_k);
  c.kernel.r_d = kv.get_double("r_d", c.kernel.r_d);
  c.episodes = static_cast<int>(kv.get_int("episodes", c.episodes));
  c.master_seed = static_cast<std::uint64_t>(kv.get_int("seed", static_cast<long long>(c.master_seed)));
  c.workers = static_cast<unsigned>(kv.get_int("workers", 0));

  auto& t = c.tiger;
  t.p_true = kv.get_double("tiger.p_true", t.p_true);
  t.r_listen = kv.get_double("tiger.r_listen", t.r_listen);
  t.r_safe = kv.get_double("tiger.r_safe", t.r_safe);
  t.r_danger = kv.get_double("tiger.r_danger", t.r_danger);
  t.discount = kv.get_double("tiger.discount", t.discount);
  t.step_cap = static_cast<int>(kv.get_int("tiger.step_cap", t.step_cap));

  auto& r = c.rocksample;
  r.half_efficiency_distance = kv.get_double("rocksample.half_efficiency_distance", r.half_efficiency_distance);
  r.r_sample_good = kv.get_double("rocksample.r_sample_good", r.r_sample_good);
  r.r_sample_penalty = kv.get_double("rocksample.r_sample_penalty", r.r_sample_penalty);
  r.r_exit = kv.get_double("rocksample.r_exit", r.r_exit);
  r.discount = kv.get_double("rocksample.discount", r.discount);
  r.step_cap = static_cast<int>(kv.get_int("rocksample.step_cap", r.step_cap));
  if (auto map = kv.get("rocksample.map")) {
    std::filesystem::path p(*map);
    if (p.is_relative()) p = kv.base_dir() / p;
    r = problems::load_map_file(p, r);
  }

  c.vi_horizon = static_cast<int>(kv.get_int("vi.horizon", c.vi_horizon));

  auto& l = c.lvfa;
  l.epochs = static_cast<int>(kv.get_int("lvfa.epochs", l.epochs));
  l.validation_every = static_cast<int>(kv.get_int("lvfa.validation_every", l.validation_every));
  l.learning_rate = kv.get_double("lvfa.learning_rate", l.learning_rate);
  l.epsilon_start = kv.get_double("lvfa.epsilon_start", l.epsilon_start);
  l.epsilon_end = kv.get_double("lvfa.epsilon_end", l.epsilon_end);
  c.lvfa_runs = static_cast<int>(kv.get_int("lvfa.runs", c.lvfa_runs));
  const auto signal = lower(kv.get_string("lvfa.reward_signal", "belief"));
  if (signal == "belief")
    l.signal = lvfa::RewardSignal::BeliefExpected;
  else if (signal == "experienced")
    l.signal = lvfa::RewardSignal::Experienced;
  else
    throw ConfigError("lvfa.reward_signal must be belief or experienced");
  const auto init = lower(kv.get_string("lvfa.init", "reward"));
  if (init == "reward")
    l.init = lvfa::WeightInit::ImmediateReward;
  else if (init == "zero")
    l.init = lvfa::WeightInit::Zero;
  else
    throw ConfigError("lvfa.init must be reward or zero");

  auto& p = c.pomcp;
  p.simulations = static_cast<int>(kv.get_int("pomcp.simulations", p.simulations));
  p.uct_c = kv.get_double("pomcp.uct_c", p.uct_c);
  p.max_depth = static_cast<int>(kv.get_int("pomcp.max_depth", p.max_depth));
  p.truncation = kv.get_double("pomcp.truncation", p.truncation);
  p.particle_lower = static_cast<std::size_t>(kv.get_int("pomcp.particle_lower", static_cast<long long>(p.particle_lower)));
  p.particle_upper = static_cast<std::size_t>(kv.get_int("pomcp.particle_upper", static_cast<long long>(p.particle_upper)));
  p.attempt_factor = static_cast<std::size_t>(kv.get_int("pomcp.attempt_factor", static_cast<long long>(p.attempt_factor)));

  p.preferred_rollouts = kv.get_bool("pomcp.preferred_rollouts", c.problem == ProblemKind::RockSample);

  auto& h = c.histogram;
  h.belief_bins = static_cast<int>(kv.get_int("hist.belief_bins", h.belief_bins));
  h.return_min = kv.get_double("hist.return_min", h.return_min);
  h.return_max = kv.get_double("hist.return_max", h.return_max);
  h.return_bins = static_cast<int>(kv.get_int("hist.return_bins", h.return_bins));

  c.validate();
  return c;
}

ExperimentConfig load_experiment(const std::filesystem::path& path) { return experiment_from_kv(KvConfig::load(path)); }

}  // namespace dpomdp::harness
