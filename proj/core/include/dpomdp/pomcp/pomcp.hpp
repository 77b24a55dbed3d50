// SPDX-License-Identifier: MIT
#pragma once

#include <memory>
#include <span>
#include <vector>

#include "dpomdp/core/distribution.hpp"
#include "dpomdp/core/model.hpp"

namespace dpomdp::pomcp {

struct PomcpConfig {
  int simulations = 4096;
  double uct_c = 25.0;
  int max_depth = 100;
  /// Simulations stop once gamma^depth drops below this.
  double truncation = 0.005;
  std::size_t particle_lower = 64;
  std::size_t particle_upper = 1024;
  /// Rejection attempts per refill, as a multiple of particle_upper.
  std::size_t attempt_factor = 16;
  /// Roll out over the model's preferred actions instead of all legal ones.
  bool preferred_rollouts = false;

  void validate() const;
};

struct HistoryNode;

/// Statistics for taking one action at a history: N(ha), V(ha).
struct ActionNode {
  long visits = 0;
  double value = 0.0;
  std::vector<std::unique_ptr<HistoryNode>> children;  // indexed by observation

  HistoryNode* child(ObsId o) const { return o < children.size() ? children[o].get() : nullptr; }
};

/// T(h) = <N(h), V(h), B(h)> plus per-action children.
struct HistoryNode {
  long visits = 0;
  double value = 0.0;
  std::vector<StateId> particles;
  std::vector<ActionNode> actions;  // empty until expanded

  bool expanded() const { return !actions.empty(); }
  void expand(std::size_t num_actions, std::size_t num_observations);
  /// Folds one return into the running mean.
  void backup(double ret);
};

/// Builds a root whose particles are `count` draws from the model's initial
/// state distribution.
std::unique_ptr<HistoryNode> make_root(const GenerativeModel& model, std::size_t count, Rng& rng);

/// Runs cfg.simulations simulations from particles drawn uniformly from the
/// root and returns the legal root action with the highest V(ha); ties go to
/// the lowest index. Throws EmptyParticleSet for an empty root.
ActionId search(HistoryNode& root, const GenerativeModel& model, const PomcpConfig& cfg, Rng& rng);

/// One POMCP simulation from state `s` at `node`.
double simulate(StateId s, HistoryNode& node, int depth, const GenerativeModel& model, const PomcpConfig& cfg,
                Rng& rng);

/// Uniform-random rollout below the tree.
double rollout(StateId s, int depth, const GenerativeModel& model, const PomcpConfig& cfg, Rng& rng);

/// Moves the root to child (a, o) and refills its particles by rejection
/// sampling against `o`, falling back to perturbed proposals when too few
/// survive. Throws ParticleDepletion if the set stays below particle_lower.
std::unique_ptr<HistoryNode> advance(std::unique_ptr<HistoryNode> root, ActionId a, ObsId o,
                                     const GenerativeModel& model, const PomcpConfig& cfg, Rng& rng);

/// Empirical distribution of the particles over states 0..num_states-1.
DiscreteDistribution particle_belief(std::span<const StateId> particles, std::size_t num_states);

}  // namespace dpomdp::pomcp
