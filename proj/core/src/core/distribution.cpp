#include "dpomdp/core/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dpomdp/errors.hpp"

namespace dpomdp {

Rng make_stream(std::uint64_t master_seed, std::uint64_t stream) {
  auto splitmix = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  return Rng(splitmix(splitmix(master_seed) ^ (stream * 0xd1342543de82ef95ULL + 1)));
}

bool is_valid_distribution(std::span<const double> probs, double tolerance) {
  if (probs.empty()) return false;
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) return false;
    total += p;
  }
  return std::abs(total - 1.0) <= tolerance;
}

DiscreteDistribution::DiscreteDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (!is_valid_distribution(probs_)) {
    throw InvalidDistribution("probabilities must be non-negative and sum to 1 (size " +
                              std::to_string(probs_.size()) + ")");
  }
}

DiscreteDistribution DiscreteDistribution::uniform(std::size_t n) {
  if (n == 0) throw InvalidDistribution("uniform distribution over an empty support");
  return DiscreteDistribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

DiscreteDistribution DiscreteDistribution::point_mass(std::size_t n, std::size_t index) {
  if (index >= n) throw InvalidDistribution("point mass outside the support");
  std::vector<double> p(n, 0.0);
  p[index] = 1.0;
  return DiscreteDistribution(std::move(p));
}

DiscreteDistribution DiscreteDistribution::normalized(std::vector<double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw InvalidDistribution("negative or non-finite weight");
    total += w;
  }
  if (!(total > 0.0)) throw InvalidDistribution("weights have zero total mass");
  for (double& w : weights) w /= total;
  return DiscreteDistribution(std::move(weights));
}

std::size_t DiscreteDistribution::sample(Rng& rng) const {
  double u = uniform01(rng);
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    u -= probs_[i];
    if (u < 0.0) return i;
  }
  // Rounding left a sliver of mass; return the last supported index.
  for (std::size_t i = probs_.size(); i-- > 0;) {
    if (probs_[i] > 0.0) return i;
  }
  return probs_.size() - 1;
}

std::size_t DiscreteDistribution::argmax() const {
  return static_cast<std::size_t>(std::max_element(probs_.begin(), probs_.end()) - probs_.begin());
}

double total_variation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidDistribution("total variation of mismatched supports");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return 0.5 * sum;
}

}  // namespace dpomdp
