#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dpomdp/core/distribution.hpp"
#include "dpomdp/core/model.hpp"

namespace dpomdp::vi {

struct AlphaVector {
  std::vector<double> values;
  ActionId action = 0;

  double dot(std::span<const double> b) const;
};

struct AlphaVectorSet {
  std::vector<AlphaVector> vectors;
  int horizon = 0;

  std::size_t size() const { return vectors.size(); }
  double value(std::span<const double> b) const;
};

struct ViConfig {
  /// Upper bound on |S| |A| |O| |Gamma_t| for a single backup.
  double work_budget = 5e7;
  bool prune = true;
};

struct ActionValue {
  ActionId action = 0;
  double value = 0.0;
};

/// The horizon-0 value function: one zero vector.
AlphaVectorSet zero_horizon(const PomdpModel& model);

/// Exact backup with incremental cross-sums, pruning after every
/// observation. Pairs (s, a) that end the episode contribute no future value.
AlphaVectorSet bellman_backup(const PomdpModel& model, const AlphaVectorSet& gamma_t, const ViConfig& cfg = {});

/// Drops pointwise-dominated vectors and exact duplicates (the lower action
/// index survives). With two states, also drops vectors that are never
/// maximal anywhere on the belief segment.
std::vector<AlphaVector> prune_dominated(std::vector<AlphaVector> vectors);

/// Maximizing vector at `b`; ties go to the lowest action index.
ActionValue best_action(const AlphaVectorSet& set, std::span<const double> b);
inline ActionValue best_action(const AlphaVectorSet& set, const DiscreteDistribution& b) {
  return best_action(set, b.probs());
}

/// Runs `horizon` backups from the zero vector.
AlphaVectorSet solve(const PomdpModel& model, int horizon, const ViConfig& cfg = {});

}  // namespace dpomdp::vi
