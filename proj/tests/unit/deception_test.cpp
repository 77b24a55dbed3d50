#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "dpomdp/core/belief.hpp"
#include "dpomdp/deception/belief_episode.hpp"
#include "dpomdp/deception/kernel.hpp"
#include "dpomdp/errors.hpp"
#include "dpomdp/problems/rocksample.hpp"
#include "dpomdp/problems/tiger.hpp"

namespace {

using namespace dpomdp;
using namespace dpomdp::deception;

const std::vector<ObsId> kBinary{0, 1};

TEST(Kernel, ParseNames) {
  EXPECT_EQ(parse_kernel_kind("baseline"), KernelKind::None);
  EXPECT_EQ(parse_kernel_kind("PROB"), KernelKind::Prob);
  EXPECT_EQ(parse_kernel_kind("Oppo"), KernelKind::Oppo);
  EXPECT_THROW(parse_kernel_kind("liar"), ConfigError);
}

TEST(Kernel, SpecValidation) {
  KernelSpec k{KernelKind::Prob, 1.2, 0.0};
  EXPECT_THROW(k.validate(), ConfigError);
  k.p_k = 0.5;
  k.r_d = std::nan("");
  EXPECT_THROW(k.validate(), ConfigError);
}

TEST(Kernel, NoneIsIdentity) {
  Rng rng = make_stream(1, 0);
  auto d = apply_kernel({}, 0, 0, kBinary, rng);
  EXPECT_EQ(d.delivered, 0u);
  EXPECT_FALSE(d.is_false);
  EXPECT_FALSE(d.is_deceived);
}

TEST(Kernel, OppoBinaryAlwaysFlips) {
  Rng rng = make_stream(1, 0);
  KernelSpec k{KernelKind::Oppo};
  for (ObsId original : {0u, 1u}) {
    auto d = apply_kernel(k, original, 1, kBinary, rng);
    EXPECT_EQ(d.delivered, 0u);
    EXPECT_TRUE(d.is_false);
    EXPECT_EQ(d.is_deceived, original != 0u);
  }
}

TEST(Kernel, ProbPassesFalseOriginalThrough) {
  Rng rng = make_stream(2, 0);
  KernelSpec k{KernelKind::Prob, 0.3};
  for (int i = 0; i < 1000; ++i) {
    auto d = apply_kernel(k, 1, 0, kBinary, rng);
    ASSERT_EQ(d.delivered, 1u);
    ASSERT_TRUE(d.is_false);
    ASSERT_FALSE(d.is_deceived);
  }
}

TEST(Kernel, ProbTimesSensorRate) {
  // Sensor correct with 0.85, then the kernel keeps a true reading with 0.8.
  Rng rng = make_stream(3, 0);
  KernelSpec k{KernelKind::Prob, 0.8};
  const int n = 1000000;
  int hits = 0;
  for (int i = 0; i < n; ++i) {
    const ObsId original = bernoulli(rng, 0.85) ? 0 : 1;
    hits += apply_kernel(k, original, 0, kBinary, rng).delivered == 0;
  }
  EXPECT_NEAR(static_cast<double>(hits) / n, 0.68, 0.002);
}

TEST(Kernel, MultiCandidateFalseSetIsUniform) {
  const std::vector<ObsId> space{0, 1, 2, 3};
  Rng rng = make_stream(4, 0);
  KernelSpec k{KernelKind::Oppo};
  std::vector<int> counts(4, 0);
  for (int i = 0; i < 30000; ++i) ++counts[apply_kernel(k, 2, 2, space, rng).delivered];
  EXPECT_EQ(counts[2], 0);
  for (int o : {0, 1, 3}) EXPECT_NEAR(counts[o] / 30000.0, 1.0 / 3.0, 0.015);
}

TEST(Kernel, DegenerateSpace) {
  const std::vector<ObsId> single{0};
  Rng rng;
  EXPECT_THROW(apply_kernel({KernelKind::Oppo}, 0, 0, single, rng), DegenerateObservationSpace);
  EXPECT_THROW(apply_kernel({KernelKind::Prob, 0.5}, 0, 0, single, rng), DegenerateObservationSpace);
  EXPECT_NO_THROW(apply_kernel({KernelKind::Rand}, 0, 0, single, rng));
  EXPECT_THROW(apply_kernel({KernelKind::Rand}, 5, 0, kBinary, rng), std::invalid_argument);
}

TEST(AggregateRate, TigerSettings) {
  EXPECT_NEAR(aggregate_true_rate({KernelKind::Prob, 0.70588235294117652}, 0.85, 2), 0.6, 1e-12);
  EXPECT_DOUBLE_EQ(aggregate_true_rate({KernelKind::Rand}, 0.85, 2), 0.5);
  EXPECT_DOUBLE_EQ(aggregate_true_rate({KernelKind::Oppo}, 0.85, 2), 0.0);
  EXPECT_DOUBLE_EQ(aggregate_true_rate({KernelKind::Prob, 1.0}, 0.85, 2), 0.85);
  EXPECT_DOUBLE_EQ(aggregate_true_rate({}, 0.85, 2), 0.85);
}

TEST(RateOrdering, TigerHoldsRockSampleWorstCaseDoesNot) {
  std::vector<KernelSpec> tiger{{KernelKind::Prob, 0.70588}, {KernelKind::Rand}, {KernelKind::Oppo}};
  EXPECT_TRUE(check_rate_ordering(tiger, 0.85, 2));
  std::vector<KernelSpec> rock{{KernelKind::Prob, 0.8}, {KernelKind::Rand}, {KernelKind::Oppo}};
  EXPECT_NEAR(aggregate_true_rate(rock[0], 0.5, 2), 0.40, 1e-12);
  EXPECT_FALSE(check_rate_ordering(rock, 0.5, 2));
}

TEST(DeceptionCost, Cases) {
  EXPECT_EQ(deception_cost({KernelKind::Rand, 1.0, 1.0}, true), 1.0);
  EXPECT_EQ(deception_cost({KernelKind::Rand, 1.0, 1.0}, false), 0.0);
  EXPECT_EQ(deception_cost({KernelKind::None, 1.0, 1.0}, true), 0.0);
}

TEST(Intercept, UninformativeBypassesKernel) {
  problems::RockSampleModel m({});
  Rng rng;
  const StateId s = m.initial_state(0).encode();
  EXPECT_FALSE(intercept(m, {KernelKind::Oppo}, problems::rocksample::kNorth, s, problems::rocksample::kNone, rng));
  auto d = intercept(m, {KernelKind::Oppo}, problems::rocksample::check(0), s, problems::rocksample::kBad, rng);
  ASSERT_TRUE(d);
  EXPECT_EQ(d->delivered, problems::rocksample::kGood);
}

TEST(DeceptionRewardModel, PaysPerDeceivedObservation) {
  auto tiger = problems::tiger_model();
  DeceptionRewardModel planner(tiger, {KernelKind::Oppo, 1.0, 1.0});
  Rng rng = make_stream(9, 0);
  for (int i = 0; i < 200; ++i) {
    auto r = planner.step(problems::tiger::kTigerLeft, problems::tiger::kListen, rng);
    // Oppo deceives exactly the readings that happen to be true.
    EXPECT_EQ(r.reward, r.observation == problems::tiger::kHearLeft ? 0.0 : -1.0);
  }
}

TEST(BeliefEpisode, OppoAlwaysDeliversFalseReading) {
  auto tiger = problems::tiger_model();
  Rng rng = make_stream(12, 0);
  BeliefPolicy listen = [](const DiscreteDistribution&, Rng&) { return problems::tiger::kListen; };
  auto traj = run_belief_episode(tiger, {KernelKind::Oppo}, listen, 10, rng);
  ASSERT_EQ(traj.steps.size(), 10u);
  EXPECT_TRUE(traj.forced_out);
  for (const auto& st : traj.steps) {
    ASSERT_TRUE(st.deception);
    EXPECT_TRUE(st.deception->is_false);
    EXPECT_NE(st.observation, *tiger.true_observation(st.state, problems::tiger::kListen));
  }
}

TEST(BeliefEpisode, BeliefFollowsDeliveredObservation) {
  auto tiger = problems::tiger_model();
  Rng rng = make_stream(13, 0);
  int calls = 0;
  BeliefPolicy policy = [&](const DiscreteDistribution&, Rng&) {
    return ++calls < 4 ? problems::tiger::kListen : problems::tiger::kOpenLeft;
  };
  auto traj = run_belief_episode(tiger, {KernelKind::Rand}, policy, 50, rng);
  ASSERT_EQ(traj.steps.size(), 4u);
  EXPECT_TRUE(traj.terminated);
  for (std::size_t k = 0; k + 1 < traj.steps.size(); ++k) {
    const auto& st = traj.steps[k];
    auto expect = belief_update(tiger, DiscreteDistribution(st.belief_before), st.action, st.observation);
    EXPECT_NEAR(st.belief_after[0], expect[0], 1e-12);
    EXPECT_EQ(traj.steps[k + 1].belief_before, st.belief_after);
  }
}

}  // namespace
