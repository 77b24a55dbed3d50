// SPDX-License-Identifier: MIT
#include "dpomdp/deception/kernel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "dpomdp/errors.hpp"

namespace dpomdp::deception {

std::string_view to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::None: return "none";
    case KernelKind::Prob: return "prob";
    case KernelKind::Rand: return "rand";
    case KernelKind::Oppo: return "oppo";
  }
  return "?";
}

KernelKind parse_kernel_kind(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "none" || s == "baseline") return KernelKind::None;
  if (s == "prob") return KernelKind::Prob;
  if (s == "rand") return KernelKind::Rand;
  if (s == "oppo") return KernelKind::Oppo;
  throw ConfigError("unknown kernel `" + std::string(text) + "` (expected none, prob, rand or oppo)");
}

void KernelSpec::validate() const {
  if (!(p_k >= 0.0 && p_k <= 1.0)) throw ConfigError("deceptive rate p_k must lie in [0, 1]");
  if (!std::isfinite(r_d)) throw ConfigError("deception reward r_d must be finite");
}

std::string KernelSpec::label() const {
  std::ostringstream out;
  out << (kind == KernelKind::None ? "baseline" : to_string(kind));
  if (kind == KernelKind::Prob) out << "(p_k=" << p_k << ")";
  if (r_d != 0.0) out << "+r_d=" << r_d;
  return out.str();
}

namespace {

ObsId uniform_false(ObsId true_obs, std::span<const ObsId> obs_space, Rng& rng) {
  std::size_t n_false = 0;
  for (ObsId o : obs_space) n_false += (o != true_obs);
  if (n_false == 0) throw DegenerateObservationSpace("no false observation available to deliver");
  std::size_t pick = uniform_index(rng, n_false);
  for (ObsId o : obs_space) {
    if (o == true_obs) continue;
    if (pick-- == 0) return o;
  }
  return obs_space.back();
}

}  // namespace

DeceivedObservation apply_kernel(const KernelSpec& kernel, ObsId original, ObsId true_obs,
                                 std::span<const ObsId> obs_space, Rng& rng) {
  auto in_space = [&](ObsId o) { return std::find(obs_space.begin(), obs_space.end(), o) != obs_space.end(); };
  if (!in_space(original) || !in_space(true_obs)) {
    throw std::invalid_argument("kernel inputs must belong to the observation space");
  }
  ObsId delivered = original;
  switch (kernel.kind) {
    case KernelKind::None:
      break;
    case KernelKind::Prob:
      if (obs_space.size() < 2) throw DegenerateObservationSpace("Prob kernel needs a false observation");
      if (original == true_obs && !bernoulli(rng, kernel.p_k)) {
        delivered = uniform_false(true_obs, obs_space, rng);
      }
      break;
    case KernelKind::Rand:
      delivered = obs_space[uniform_index(rng, obs_space.size())];
      break;
    case KernelKind::Oppo:
      delivered = uniform_false(true_obs, obs_space, rng);
      break;
  }
  return DeceivedObservation::make(delivered, original, true_obs);
}

double aggregate_true_rate(const KernelSpec& kernel, double p_true, std::size_t obs_space_size) {
  switch (kernel.kind) {
    case KernelKind::None: return p_true;
    case KernelKind::Prob: return p_true * kernel.p_k;
    case KernelKind::Rand: return 1.0 / static_cast<double>(obs_space_size);
    case KernelKind::Oppo: return 0.0;
  }
  return p_true;
}

bool check_rate_ordering(std::span<const KernelSpec> kernels, double p_true_min, std::size_t obs_space_size) {
  // Walk the kinds from most to least truthful; every present rate must be
  // strictly below the previous present one.
  std::optional<double> previous;
  for (KernelKind kind : {KernelKind::Prob, KernelKind::Rand, KernelKind::Oppo}) {
    for (const KernelSpec& k : kernels) {
      if (k.kind != kind) continue;
      double rate = aggregate_true_rate(k, p_true_min, obs_space_size);
      if (previous && !(rate < *previous)) return false;
      previous = rate;
    }
  }
  return true;
}

double deception_cost(const KernelSpec& kernel, bool applied) {
  if (kernel.kind == KernelKind::None || !applied) return 0.0;
  return kernel.r_d;
}

std::optional<DeceivedObservation> intercept(const GenerativeModel& model, const KernelSpec& kernel,
                                             ActionId a, StateId next, ObsId original, Rng& rng) {
  auto space = model.informative_observations(a);
  if (space.empty()) return std::nullopt;
  auto truth = model.true_observation(next, a);
  if (!truth) return std::nullopt;
  return apply_kernel(kernel, original, *truth, space, rng);
}

StepResult DeceptionRewardModel::step(StateId s, ActionId a, Rng& rng) const {
  StepResult r = base_.step(s, a, rng);
  if (kernel_.kind == KernelKind::None || kernel_.r_d == 0.0) return r;
  if (auto d = intercept(base_, kernel_, a, r.next, r.observation, rng)) {
    r.reward += deception_cost(kernel_, d->is_deceived);
  }
  return r;
}

}  // namespace dpomdp::deception
