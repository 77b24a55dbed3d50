// Randomized and exhaustive invariant checks across modules.
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "dpomdp/analysis/analysis.hpp"
#include "dpomdp/core/belief.hpp"
#include "dpomdp/deception/kernel.hpp"
#include "dpomdp/harness/experiment.hpp"
#include "dpomdp/lvfa/linear_value_function.hpp"
#include "dpomdp/pomcp/pomcp.hpp"
#include "dpomdp/problems/rocksample.hpp"
#include "dpomdp/problems/tiger.hpp"
#include "dpomdp/vi/alpha_vectors.hpp"
#include "joint_rock_oracle.hpp"
#include "tiger_oracle.hpp"

namespace {

using namespace dpomdp;
namespace tg = dpomdp::problems::tiger;
namespace rs = dpomdp::problems::rocksample;

DiscreteDistribution random_belief(Rng& rng, std::size_t n) {
  std::vector<double> w(n);
  std::exponential_distribution<double> e(1.0);
  for (double& x : w) x = e(rng);
  return DiscreteDistribution::normalized(std::move(w));
}

// A random dense 3-state model so the belief checks do not lean on Tiger's
// identity transitions.
PomdpModel random_model(Rng& rng) {
  const std::size_t ns = 3, na = 2, no = 3;
  PomdpModel::Definition d;
  d.state_names = {"s0", "s1", "s2"};
  d.action_names = {"a0", "a1"};
  d.observation_names = {"o0", "o1", "o2"};
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t s = 0; s < ns; ++s) {
      auto row = random_belief(rng, ns);
      d.transition.insert(d.transition.end(), row.probs().begin(), row.probs().end());
    }
  d.reward.assign(na * ns * ns, 0.0);
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t s = 0; s < ns; ++s) {
      auto row = random_belief(rng, no);
      d.observation.insert(d.observation.end(), row.probs().begin(), row.probs().end());
    }
  d.initial_belief = DiscreteDistribution::uniform(ns);
  return PomdpModel(std::move(d));
}

// ---- core -----------------------------------------------------------------

TEST(CoreProperties, NormalizationClosureAndMartingale) {
  Rng rng = make_stream(100, 0);
  std::vector<PomdpModel> models{problems::tiger_model()};
  for (int i = 0; i < 5; ++i) models.push_back(random_model(rng));
  for (const auto& m : models) {
    for (int trial = 0; trial < 100; ++trial) {
      auto b = random_belief(rng, m.num_states());
      for (ActionId a = 0; a < m.num_actions(); ++a) {
        auto prior = predict_belief(m, b, a);
        std::vector<double> mix(m.num_states(), 0.0);
        double closure = 0.0;
        for (ObsId o = 0; o < m.num_observations(); ++o) {
          const double p = observation_likelihood(m, b, a, o);
          closure += p;
          if (p <= 1e-12) continue;
          auto post = belief_update(m, b, a, o);
          double sum = 0.0;
          for (double x : post.probs()) {
            EXPECT_GE(x, 0.0);
            sum += x;
          }
          EXPECT_NEAR(sum, 1.0, 1e-9);
          for (std::size_t s = 0; s < mix.size(); ++s) mix[s] += p * post[s];
        }
        EXPECT_NEAR(closure, 1.0, 1e-9);
        for (std::size_t s = 0; s < mix.size(); ++s) EXPECT_NEAR(mix[s], prior[s], 1e-9);
      }
    }
  }
}

TEST(CoreProperties, SeededStepSequencesRepeat) {
  problems::RockSampleModel m({});
  auto run = [&](std::uint64_t seed) {
    Rng rng = make_stream(seed, 0);
    std::vector<StepResult> out;
    StateId s = m.sample_initial_state(rng);
    std::vector<ActionId> legal;
    for (int t = 0; t < 60 && !m.is_terminal(s); ++t) {
      m.legal_actions(s, legal);
      auto r = step(m, s, legal[uniform_index(rng, legal.size())], rng);
      out.push_back(r);
      s = r.next;
    }
    return out;
  };
  auto a = run(9), b = run(9);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].next, b[i].next);
    EXPECT_EQ(a[i].observation, b[i].observation);
    EXPECT_EQ(a[i].reward, b[i].reward);
  }
}

// ---- deception ------------------------------------------------------------

struct RateCase {
  deception::KernelSpec kernel;
  double p_true;
};

TEST(DeceptionProperties, EmpiricalRatesAndFlags) {
  const std::vector<ObsId> space{0, 1};
  const std::vector<RateCase> cases{{{deception::KernelKind::None}, 0.85},
                                    {{deception::KernelKind::Prob, 0.8}, 0.85},
                                    {{deception::KernelKind::Prob, 0.70588235294117652}, 0.85},
                                    {{deception::KernelKind::Rand}, 0.85},
                                    {{deception::KernelKind::Oppo}, 0.85},
                                    {{deception::KernelKind::Prob, 0.8}, 0.6}};
  const int n = 1000000;
  for (std::size_t c = 0; c < cases.size(); ++c) {
    Rng rng = make_stream(200, c);
    const auto& k = cases[c].kernel;
    long truth = 0;
    for (int i = 0; i < n; ++i) {
      const ObsId t = static_cast<ObsId>(uniform_index(rng, 2));
      const ObsId original = bernoulli(rng, cases[c].p_true) ? t : 1 - t;
      auto d = deception::apply_kernel(k, original, t, space, rng);
      ASSERT_EQ(d.is_false, d.delivered != d.true_obs);
      ASSERT_EQ(d.is_deceived, d.delivered != d.original);
      truth += d.delivered == t;
    }
    const double p = deception::aggregate_true_rate(k, cases[c].p_true, 2);
    const double se = std::sqrt(std::max(p * (1 - p), 1e-12) / n);
    EXPECT_LE(std::abs(static_cast<double>(truth) / n - p), 3 * se + 1e-12) << k.label();
    if (k.kind == deception::KernelKind::Oppo) EXPECT_EQ(truth, 0);
  }
}

TEST(DeceptionProperties, ProbCrossCasesOccur) {
  // Under Prob with an imperfect sensor, false readings pass through
  // untouched (false but not deceived) and true readings get masked (false
  // and deceived). The kernel never turns a false reading into the truth.
  const std::vector<ObsId> space{0, 1};
  Rng rng = make_stream(300, 0);
  deception::KernelSpec k{deception::KernelKind::Prob, 0.8};
  long false_not_deceived = 0, false_and_deceived = 0, repaired = 0;
  for (int i = 0; i < 100000; ++i) {
    const ObsId original = bernoulli(rng, 0.85) ? 0 : 1;
    auto d = deception::apply_kernel(k, original, 0, space, rng);
    false_not_deceived += d.is_false && !d.is_deceived;
    false_and_deceived += d.is_false && d.is_deceived;
    repaired += original != 0 && d.delivered == 0;
  }
  EXPECT_GT(false_not_deceived, 0);
  EXPECT_GT(false_and_deceived, 0);
  EXPECT_EQ(repaired, 0);
}

// ---- problems -------------------------------------------------------------

TEST(ProblemProperties, MovesDeterministicChecksStationary) {
  problems::RockSampleModel m({});
  Rng rng = make_stream(400, 0);
  std::vector<ActionId> legal;
  for (int x = 0; x < 7; ++x) {
    for (int y = 0; y < 7; ++y) {
      const StateId s = problems::RockSampleState{{x, y}, 0x5A, 0, false}.encode();
      m.legal_actions(s, legal);
      for (ActionId a : legal) {
        if (a == rs::kSample) continue;
        const auto first = m.step(s, a, rng).next;
        for (int rep = 0; rep < 5; ++rep) EXPECT_EQ(m.step(s, a, rng).next, first);
        if (a >= rs::kCheckBase) EXPECT_EQ(first, s);
      }
    }
  }
}

TEST(ProblemProperties, SensorMonotoneAndBounded) {
  double prev = 1.0 + 1e-12;
  for (int i = 0; i <= 1000; ++i) {
    const double acc = problems::sensor_accuracy(i * 0.1, 20.0);
    EXPECT_LT(acc, prev);
    EXPECT_GT(acc, 0.5);
    EXPECT_LE(acc, 1.0);
    prev = acc;
  }
}

TEST(ProblemProperties, TigerSymmetry) {
  auto m = problems::tiger_model();
  auto sw = [](std::size_t i) { return 1 - i; };
  auto act = [](ActionId a) { return a == tg::kListen ? a : (a == tg::kOpenLeft ? tg::kOpenRight : tg::kOpenLeft); };
  for (ActionId a = 0; a < 3; ++a)
    for (StateId s = 0; s < 2; ++s) {
      for (StateId n = 0; n < 2; ++n) {
        EXPECT_EQ(m.transition(s, a, n), m.transition(sw(s), act(a), sw(n)));
        EXPECT_EQ(m.reward(s, a, n), m.reward(sw(s), act(a), sw(n)));
      }
      for (ObsId o = 0; o < 2; ++o) EXPECT_EQ(m.observation(a, s, o), m.observation(act(a), sw(s), sw(o)));
    }
}

TEST(ProblemProperties, FactoredRockUpdateMatchesJoint) {
  problems::RockSampleModel rock_model({});
  Rng rng = make_stream(500, 0);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> prior(8);
    for (double& p : prior) p = u(rng);
    const int rock = static_cast<int>(uniform_index(rng, 8));
    const problems::Cell from{static_cast<int>(uniform_index(rng, 7)), static_cast<int>(uniform_index(rng, 7))};
    const double acc = rock_model.check_accuracy(from, rock);
    for (bool saw_good : {true, false}) {
      auto joint = oracle::rocks::joint_check_posterior(prior, rock, acc, saw_good);
      // Two-state filter on rock i alone: state 0 = Good.
      PomdpModel::Definition d;
      d.state_names = {"good", "bad"};
      d.action_names = {"check"};
      d.observation_names = {"good", "bad"};
      d.transition = {1, 0, 0, 1};
      d.reward = {0, 0, 0, 0};
      d.observation = {acc, 1 - acc, 1 - acc, acc};
      d.initial_belief = DiscreteDistribution::uniform(2);
      PomdpModel single(std::move(d));
      auto post = belief_update(single, DiscreteDistribution({prior[rock], 1 - prior[rock]}), 0, saw_good ? 0 : 1);
      EXPECT_NEAR(post[0], joint[rock], 1e-9);
      for (int i = 0; i < 8; ++i)
        if (i != rock) EXPECT_NEAR(joint[i], prior[i], 1e-9);
    }
  }
}

// ---- vi-solver ------------------------------------------------------------

TEST(ViProperties, ValueFunctionIsConvex) {
  auto set = vi::solve(problems::tiger_model(), 8);
  Rng rng = make_stream(600, 0);
  for (int i = 0; i < 2000; ++i) {
    const double x = uniform01(rng), y = uniform01(rng), mid = 0.5 * (x + y);
    const double vx = set.value(std::vector<double>{x, 1 - x});
    const double vy = set.value(std::vector<double>{y, 1 - y});
    EXPECT_LE(set.value(std::vector<double>{mid, 1 - mid}), 0.5 * (vx + vy) + 1e-12);
  }
}

TEST(ViProperties, PruningSoundAtHorizonSix) {
  auto m = problems::tiger_model();
  vi::ViConfig raw;
  raw.prune = false;
  // Unpruned growth is doubly exponential; prune only the final set's inputs
  // up to H=5 and compare the last backup with and without pruning.
  auto base = vi::solve(m, 5);
  auto pruned = vi::bellman_backup(m, base);
  auto full = vi::bellman_backup(m, base, raw);
  for (int g = 0; g <= 1000; ++g) {
    const double b0 = g / 1000.0;
    std::vector<double> b{b0, 1 - b0};
    EXPECT_NEAR(pruned.value(b), full.value(b), 1e-12);
  }
}

TEST(ViProperties, DeceivedReadingCrossesDecisionBoundary) {
  auto m = problems::tiger_model();
  auto set = vi::solve(m, 8);
  int crossings = 0;
  for (int g = 1; g < 100; ++g) {
    DiscreteDistribution b({g / 100.0, 1 - g / 100.0});
    auto truthful = belief_update(m, b, tg::kListen, tg::kHearLeft);
    auto deceived = belief_update(m, b, tg::kListen, tg::kHearRight);
    crossings += vi::best_action(set, truthful).action != vi::best_action(set, deceived).action;
  }
  EXPECT_GT(crossings, 0);
}

// ---- lvfa-solver ----------------------------------------------------------

TEST(LvfaProperties, ExactVectorsGiveSameGreedyPolicy) {
  auto set = vi::solve(problems::tiger_model(), 1);
  lvfa::LinearValueFunction w(3, 2);
  for (const auto& v : set.vectors) w.set_weights(v.action, v.values);
  for (int g = 0; g <= 100; ++g) {
    std::vector<double> b{g / 100.0, 1 - g / 100.0};
    EXPECT_EQ(w.greedy_action(b), vi::best_action(set, b).action);
  }
}

// ---- pomcp-solver ---------------------------------------------------------

TEST(PomcpProperties, ParticleChainTracksExactBeliefs) {
  auto m = problems::tiger_model();
  pomcp::PomcpConfig cfg;
  cfg.particle_lower = cfg.particle_upper = 10000;
  Rng rng = make_stream(700, 0);
  auto root = std::make_unique<pomcp::HistoryNode>();
  for (int i = 0; i < 10000; ++i) root->particles.push_back(m.sample_initial_state(rng));
  DiscreteDistribution exact = m.initial_belief();
  const std::vector<ObsId> heard{tg::kHearLeft, tg::kHearLeft, tg::kHearRight, tg::kHearLeft, tg::kHearRight,
                                 tg::kHearRight, tg::kHearRight};
  for (ObsId o : heard) {
    root = pomcp::advance(std::move(root), tg::kListen, o, m, cfg, rng);
    exact = belief_update(m, exact, tg::kListen, o);
    auto pb = pomcp::particle_belief(root->particles, 2);
    EXPECT_LE(total_variation(pb.probs(), exact.probs()), 0.05);
  }
}

TEST(PomcpProperties, AgreesWithValueIterationOnTiger) {
  auto m = problems::tiger_model();
  // A long horizon stands in for the discounted problem the planner solves.
  auto set = vi::solve(m, 40);
  pomcp::PomcpConfig cfg;
  cfg.simulations = 1 << 14;
  int agree = 0;
  for (int g = 0; g <= 100; ++g) {
    const double b0 = g / 100.0;
    pomcp::HistoryNode root;
    const auto left = static_cast<std::size_t>(std::lround(1000 * b0));
    root.particles.assign(left, tg::kTigerLeft);
    root.particles.insert(root.particles.end(), 1000 - left, tg::kTigerRight);
    Rng rng = make_stream(2021, static_cast<std::uint64_t>(g));
    agree += pomcp::search(root, m, cfg, rng) == vi::best_action(set, std::vector<double>{b0, 1 - b0}).action;
  }
  RecordProperty("agreement", agree);
  EXPECT_GE(agree / 101.0, 0.95) << agree << " of 101 grid beliefs agree";
}

// ---- analysis -------------------------------------------------------------

TEST(AnalysisProperties, RatioMonotoneAndBounded) {
  for (double pt : {0.55, 0.7, 0.85, 0.99}) {
    const double bound = (pt / (1 - pt)) * (pt / (1 - pt));
    double prev = std::numeric_limits<double>::infinity();
    for (int g = 0; g <= 1000; ++g) {
      const double r = analysis::belief_ratio(pt, g / 1000.0).ratio;
      EXPECT_LT(r, prev);
      EXPECT_GE(r, 1.0 - 1e-12);
      EXPECT_LE(r, bound * (1 + 1e-12));
      prev = r;
    }
  }
}

// ---- harness --------------------------------------------------------------

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(HarnessProperties, SeededRerunsAreByteIdentical) {
  const auto root = std::filesystem::temp_directory_path() / "dpomdp_rerun";
  std::filesystem::remove_all(root);
  for (auto problem : {harness::ProblemKind::Tiger, harness::ProblemKind::RockSample}) {
    harness::ExperimentConfig cfg;
    cfg.problem = problem;
    cfg.solver = problem == harness::ProblemKind::Tiger ? harness::SolverKind::Lvfa : harness::SolverKind::Pomcp;
    cfg.kernel = {deception::KernelKind::Rand};
    cfg.episodes = 3;
    cfg.lvfa.epochs = 90;
    cfg.pomcp.simulations = 128;
    cfg.pomcp.preferred_rollouts = true;
    cfg.master_seed = 17;
    cfg.out_dir = root / "a";
    harness::run_experiment(cfg);
    cfg.out_dir = root / "b";
    cfg.workers = 3;
    harness::run_experiment(cfg);
    for (const auto& entry : std::filesystem::directory_iterator(root / "a")) {
      const auto name = entry.path().filename();
      EXPECT_EQ(slurp(entry.path()), slurp(root / "b" / name)) << name;
    }
    std::filesystem::remove_all(root);
  }
}

}  // namespace
