#include "dpomdp/harness/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "dpomdp/errors.hpp"
#include "dpomdp/problems/tiger.hpp"

namespace dpomdp::harness {

namespace rs = problems::rocksample;

MeanSe mean_se(std::span<const double> xs) {
  MeanSe r;
  if (xs.empty()) return r;
  double sum = 0.0;
  for (double x : xs) sum += x;
  r.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - r.mean) * (x - r.mean);
    r.se = std::sqrt(ss / static_cast<double>(xs.size() - 1)) / std::sqrt(static_cast<double>(xs.size()));
  }
  return r;
}

double CategoryCounts::consistency() const {
  const long n = acted();
  return n == 0 ? 0.0 : static_cast<double>(tp + fn) / static_cast<double>(n);
}

void CategoryCounts::add(ObsCategory c) {
  switch (c) {
    case ObsCategory::TP: ++tp; break;
    case ObsCategory::FN: ++fn; break;
    case ObsCategory::TN: ++tn; break;
    case ObsCategory::FP: ++fp; break;
    case ObsCategory::Ignore:
    case ObsCategory::Pending: ++ignore; break;
    case ObsCategory::NotApplicable: break;
  }
}

OccupancyGrid occupancy_grid(std::span<const Trajectory> trajectories, const problems::RockSampleConfig& cfg) {
  if (trajectories.empty()) throw EmptyGrid("occupancy_grid: no episodes");
  OccupancyGrid g(static_cast<std::size_t>(cfg.grid_height),
                  std::vector<double>(static_cast<std::size_t>(cfg.grid_width), 0.0));
  for (const auto& t : trajectories) {
    for (const auto& st : t.steps) {
      const auto s = problems::RockSampleState::decode(st.state);
      g.at(static_cast<std::size_t>(s.position.y)).at(static_cast<std::size_t>(s.position.x)) += 1.0;
    }
  }
  for (auto& row : g)
    for (double& v : row) v /= static_cast<double>(trajectories.size());
  return g;
}

long Histogram2D::total() const {
  long n = 0;
  for (const auto& row : counts)
    for (long c : row) n += c;
  return n;
}

Histogram2D reward_belief_histogram(std::span<const Trajectory> trajectories, const HistogramSpec& spec) {
  if (spec.belief_bins < 1 || spec.return_bins < 1 || !(spec.return_max > spec.return_min))
    throw ConfigError("histogram: bad bin specification");
  Histogram2D h;
  for (int i = 0; i <= spec.belief_bins; ++i) h.belief_edges.push_back(static_cast<double>(i) / spec.belief_bins);
  const double width = (spec.return_max - spec.return_min) / spec.return_bins;
  for (int i = 0; i <= spec.return_bins; ++i) h.return_edges.push_back(spec.return_min + i * width);
  h.counts.assign(static_cast<std::size_t>(spec.return_bins),
                  std::vector<long>(static_cast<std::size_t>(spec.belief_bins), 0));
  auto bin = [](double v, double lo, double w, int n) {
    const int i = static_cast<int>(std::floor((v - lo) / w));
    return static_cast<std::size_t>(std::clamp(i, 0, n - 1));
  };
  for (const auto& t : trajectories) {
    const double ret = t.undiscounted_return();
    const auto r = bin(ret, spec.return_min, width, spec.return_bins);
    for (const auto& st : t.steps) {
      const double b = st.belief_before.empty() ? 0.5 : st.belief_before[0];
      ++h.counts[r][bin(b, 0.0, 1.0 / spec.belief_bins, spec.belief_bins)];
    }
  }
  return h;
}

MetricsSummary summarize(const ExperimentConfig& cfg, std::span<const EpisodeResult> episodes) {
  MetricsSummary m;
  m.label = cfg.label();
  m.problem = cfg.problem;
  m.solver = cfg.solver;
  m.kernel = cfg.kernel;
  m.episodes = static_cast<long>(episodes.size());

  const bool tiger = cfg.problem == ProblemKind::Tiger;
  const double gamma = tiger ? cfg.tiger.discount : cfg.rocksample.discount;
  std::vector<double> und, disc;
  double steps = 0, listens = 0, sampled = 0, checks = 0;
  for (const auto& e : episodes) {
    const auto& t = e.trajectory;
    und.push_back(t.undiscounted_return());
    disc.push_back(t.discounted_return(gamma));
    steps += static_cast<double>(t.steps.size());
    if (t.aborted) ++m.aborted;
    for (const auto& st : t.steps) {
      if (tiger) {
        if (st.action == problems::tiger::kListen) listens += 1;
      } else if (st.action == rs::kSample) {
        sampled += 1;
      } else if (st.action >= rs::kCheckBase) {
        checks += 1;
      }
    }
    if (tiger) {
      if (t.terminated && !t.steps.empty()) {
        const auto& last = t.steps.back();
        if (problems::tiger::is_correct_door(last.state, last.action))
          ++m.correct;
        else
          ++m.incorrect;
      } else {
        ++m.other;
      }
    }
    for (const auto& r : e.observations) {
      ++m.observations;
      const auto c = attribute_belief_change(r);
      m.belief_changes.total += c.changed;
      m.belief_changes.from_false += c.from_false;
      m.belief_changes.from_deceived += c.from_deceived;
      (r.is_deceived ? m.deceived : m.normal).add(r.category);
    }
  }
  m.undiscounted = mean_se(und);
  m.discounted = mean_se(disc);
  const double n = std::max<double>(1.0, static_cast<double>(episodes.size()));
  m.avg_steps = steps / n;
  m.avg_listens = listens / n;
  m.avg_sampled = sampled / n;
  m.avg_checks = checks / n;

  const double p_min = tiger ? cfg.tiger.p_true : 0.5;
  std::vector<deception::KernelSpec> kinds{deception::KernelSpec{deception::KernelKind::Rand},
                                          deception::KernelSpec{deception::KernelKind::Oppo}};
  if (cfg.kernel.kind == deception::KernelKind::Prob) kinds.push_back(cfg.kernel);
  m.rate_ordering_ok = deception::check_rate_ordering(kinds, p_min, 2);

  if (!tiger && !episodes.empty()) {
    std::vector<Trajectory> trajs;
    trajs.reserve(episodes.size());
    for (const auto& e : episodes) trajs.push_back(e.trajectory);
    m.occupancy = occupancy_grid(trajs, cfg.rocksample);
  }
  return m;
}

}  // namespace dpomdp::harness
