// SPDX-License-Identifier: MIT
#include "dpomdp/pomcp/pomcp.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "dpomdp/errors.hpp"

namespace dpomdp::pomcp {

void PomcpConfig::validate() const {
  if (simulations < 1) throw ConfigError("pomcp: simulations must be at least 1");
  if (particle_lower < 1 || particle_lower > particle_upper)
    throw ConfigError("pomcp: need 1 <= particle_lower <= particle_upper");
  if (max_depth < 0) throw ConfigError("pomcp: negative max depth");
  if (!(uct_c >= 0.0)) throw ConfigError("pomcp: uct_c must be non-negative");
  if (attempt_factor < 1) throw ConfigError("pomcp: attempt factor must be at least 1");
}

void HistoryNode::expand(std::size_t num_actions, std::size_t num_observations) {
  actions.resize(num_actions);
  for (auto& an : actions) an.children.resize(num_observations);
}

void HistoryNode::backup(double ret) {
  ++visits;
  value += (ret - value) / static_cast<double>(visits);
}

std::unique_ptr<HistoryNode> make_root(const GenerativeModel& model, std::size_t count, Rng& rng) {
  auto root = std::make_unique<HistoryNode>();
  root->particles.reserve(count);
  for (std::size_t i = 0; i < count; ++i) root->particles.push_back(model.sample_initial_state(rng));
  return root;
}

namespace {

bool beyond_horizon(int depth, double gamma, const PomcpConfig& cfg) {
  return depth >= cfg.max_depth || std::pow(gamma, depth) < cfg.truncation;
}

ActionId select_ucb(const HistoryNode& node, std::span<const ActionId> legal, double c) {
  const double log_n = std::log(static_cast<double>(std::max<long>(node.visits, 1)));
  ActionId best = legal.front();
  double best_score = -std::numeric_limits<double>::infinity();
  for (ActionId a : legal) {
    const ActionNode& an = node.actions[a];
    if (an.visits == 0) return a;
    const double score = an.value + c * std::sqrt(log_n / static_cast<double>(an.visits));
    if (score > best_score) {
      best_score = score;
      best = a;
    }
  }
  return best;
}

}  // namespace

double rollout(StateId s, int depth, const GenerativeModel& model, const PomcpConfig& cfg, Rng& rng) {
  const double gamma = model.discount();
  thread_local std::vector<ActionId> legal;
  double ret = 0.0;
  double w = 1.0;
  while (!beyond_horizon(depth, gamma, cfg) && !model.is_terminal(s)) {
    if (cfg.preferred_rollouts)
      model.preferred_rollout_actions(s, legal);
    else
      model.legal_actions(s, legal);
    const ActionId a = legal[uniform_index(rng, legal.size())];
    const StepResult r = model.step(s, a, rng);
    ret += w * r.reward;
    if (r.terminal) break;
    w *= gamma;
    s = r.next;
    ++depth;
  }
  return ret;
}

double simulate(StateId s, HistoryNode& node, int depth, const GenerativeModel& model, const PomcpConfig& cfg,
                Rng& rng) {
  const double gamma = model.discount();
  if (beyond_horizon(depth, gamma, cfg) || model.is_terminal(s)) return 0.0;
  if (!node.expanded()) {
    node.expand(model.num_actions(), model.num_observations());
    const double ret = rollout(s, depth, model, cfg, rng);
    node.backup(ret);
    return ret;
  }
  // Only read before the recursive call, so one buffer per thread suffices.
  thread_local std::vector<ActionId> legal;
  model.legal_actions(s, legal);
  const ActionId a = select_ucb(node, legal, cfg.uct_c);
  const StepResult r = model.step(s, a, rng);

  ActionNode& an = node.actions[a];
  auto& slot = an.children[r.observation];
  if (!slot) slot = std::make_unique<HistoryNode>();
  double ret = r.reward;
  if (!r.terminal) {
    if (slot->particles.size() < cfg.particle_upper) slot->particles.push_back(r.next);
    ret += gamma * simulate(r.next, *slot, depth + 1, model, cfg, rng);
  }
  ++an.visits;
  an.value += (ret - an.value) / static_cast<double>(an.visits);
  node.backup(ret);
  return ret;
}

ActionId search(HistoryNode& root, const GenerativeModel& model, const PomcpConfig& cfg, Rng& rng) {
  if (root.particles.empty()) throw EmptyParticleSet("pomcp: root has no particles");
  for (int i = 0; i < cfg.simulations; ++i) {
    const StateId s = root.particles[uniform_index(rng, root.particles.size())];
    simulate(s, root, 0, model, cfg, rng);
  }
  std::vector<ActionId> legal;
  model.legal_actions(root.particles.front(), legal);
  if (legal.empty()) throw InvalidModel("pomcp: no legal action at the root");
  ActionId best = legal.front();
  double best_v = -std::numeric_limits<double>::infinity();
  for (ActionId a : legal) {
    if (!root.expanded() || root.actions[a].visits == 0) continue;
    if (root.actions[a].value > best_v) {
      best_v = root.actions[a].value;
      best = a;
    }
  }
  return best;
}

std::unique_ptr<HistoryNode> advance(std::unique_ptr<HistoryNode> root, ActionId a, ObsId o,
                                     const GenerativeModel& model, const PomcpConfig& cfg, Rng& rng) {
  if (!root || root->particles.empty()) throw EmptyParticleSet("pomcp: cannot advance an empty root");
  std::unique_ptr<HistoryNode> child;
  if (root->expanded() && a < root->actions.size() && o < root->actions[a].children.size())
    child = std::move(root->actions[a].children[o]);
  if (!child) child = std::make_unique<HistoryNode>();

  const auto& old = root->particles;
  const std::size_t budget = cfg.attempt_factor * cfg.particle_upper;
  // Proposals sweep the old set in shuffled passes, so every particle is
  // proposed equally often.
  std::vector<std::size_t> order(old.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::size_t cursor = order.size();
  auto propose = [&](bool perturbed) {
    if (cursor == order.size()) {
      std::shuffle(order.begin(), order.end(), rng);
      cursor = 0;
    }
    StateId s = old[order[cursor++]];
    if (perturbed) s = model.perturb(s, rng);
    if (model.is_terminal(s)) return;
    const StepResult r = model.step(s, a, rng);
    if (!r.terminal && r.observation == o) child->particles.push_back(r.next);
  };
  for (std::size_t i = 0; i < budget && child->particles.size() < cfg.particle_upper; ++i) propose(false);
  for (std::size_t i = 0; i < budget && child->particles.size() < cfg.particle_lower; ++i) propose(true);
  if (child->particles.size() < cfg.particle_lower)
    throw ParticleDepletion("pomcp: particle set fell below the lower bound");
  return child;
}

DiscreteDistribution particle_belief(std::span<const StateId> particles, std::size_t num_states) {
  if (particles.empty()) throw EmptyParticleSet("particle_belief: no particles");
  std::vector<double> counts(num_states, 0.0);
  for (StateId s : particles) counts.at(static_cast<std::size_t>(s)) += 1.0;
  return DiscreteDistribution::normalized(std::move(counts));
}

}  // namespace dpomdp::pomcp
