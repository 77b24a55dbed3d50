#pragma once

#include <span>
#include <vector>

#include "dpomdp/core/types.hpp"

namespace dpomdp {

/// Normalized probability vector over a finite support.
///
/// Construction validates the invariants (non-negative entries summing to one
/// within `kTolerance`) and throws InvalidDistribution otherwise.
class DiscreteDistribution {
 public:
  static constexpr double kTolerance = 1e-9;

  DiscreteDistribution() = default;
  explicit DiscreteDistribution(std::vector<double> probs);

  static DiscreteDistribution uniform(std::size_t n);
  static DiscreteDistribution point_mass(std::size_t n, std::size_t index);
  /// Scales non-negative weights to unit mass. Throws on zero total mass.
  static DiscreteDistribution normalized(std::vector<double> weights);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const { return probs_; }

  std::size_t sample(Rng& rng) const;
  std::size_t argmax() const;

  friend bool operator==(const DiscreteDistribution&, const DiscreteDistribution&) = default;

 private:
  std::vector<double> probs_;
};

bool is_valid_distribution(std::span<const double> probs,
                           double tolerance = DiscreteDistribution::kTolerance);

/// Total-variation distance, half the L1 norm of the difference.
double total_variation(std::span<const double> a, std::span<const double> b);

}  // namespace dpomdp
