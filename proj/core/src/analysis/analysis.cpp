#include "dpomdp/analysis/analysis.hpp"

#include <algorithm>

#include "dpomdp/errors.hpp"

namespace dpomdp::analysis {

BeliefRatioResult belief_ratio(double p_true, double p_0) {
  if (!(p_true > 0.5 && p_true < 1.0)) throw DomainError("belief_ratio: p_T must lie in (0.5, 1)");
  if (!(p_0 >= 0.0 && p_0 <= 1.0)) throw DomainError("belief_ratio: p_0 must lie in [0, 1]");
  const double pt = p_true, pf = 1.0 - p_true;
  BeliefRatioResult r;
  r.p_true = pt;
  r.p_false = pf;
  r.p_0 = p_0;
  r.ratio = (pt * pt - (pt - pf) * pt * p_0) / (pf * pf + (pt - pf) * pf * p_0);
  return r;
}

double trap_fail_prob(double p_true, int steps) {
  if (!(p_true >= 0.0 && p_true <= 1.0)) throw DomainError("trap_fail_prob: p_T must lie in [0, 1]");
  const double p2 = 2.0 * p_true * (1.0 - p_true);
  if (steps == 2) return p2;
  if (steps == 4) return p2 * p2;
  throw DomainError("trap_fail_prob: closed form exists for 2 and 4 steps only");
}

double trap_fail_mc(double p_true, int steps, long trials, Rng& rng, const TrapOptions& opts) {
  if (trials < 1) throw DomainError("trap_fail_mc: trials must be positive");
  if (steps < 0) throw DomainError("trap_fail_mc: negative step count");
  const double acc = opts.sensor_accuracy;
  if (!(acc > 0.0 && acc < 1.0)) throw DomainError("trap_fail_mc: sensor accuracy must lie in (0, 1)");
  const double threshold = opts.threshold.value_or(acc);
  constexpr double kTol = 1e-9;

  long trapped = 0;
  for (long t = 0; t < trials; ++t) {
    double b = 0.5;  // mass on the true state
    bool escaped = false;
    for (int k = 0; k < steps && !escaped; ++k) {
      const bool correct = bernoulli(rng, p_true);
      const double lt = correct ? acc : 1.0 - acc;
      const double lf = 1.0 - lt;
      b = lt * b / (lt * b + lf * (1.0 - b));
      escaped = std::max(b, 1.0 - b) > threshold + kTol;
    }
    if (!escaped) ++trapped;
  }
  return static_cast<double>(trapped) / static_cast<double>(trials);
}

}  // namespace dpomdp::analysis
