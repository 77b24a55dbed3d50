// SPDX-License-Identifier: MIT
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "dpomdp/core/belief.hpp"
#include "dpomdp/errors.hpp"
#include "dpomdp/problems/tiger.hpp"
#include "dpomdp/vi/alpha_vectors.hpp"
#include "envelope_oracle.hpp"
#include "tiger_oracle.hpp"

namespace {

using namespace dpomdp;
using namespace dpomdp::vi;
namespace tg = dpomdp::problems::tiger;

AlphaVector vec(double a, double b, ActionId act = 0) { return AlphaVector{{a, b}, act}; }

TEST(AlphaVectors, HorizonOneIsRewardTable) {
  auto set = solve(problems::tiger_model(), 1);
  ASSERT_EQ(set.size(), 3u);
  for (const auto& v : set.vectors) {
    switch (v.action) {
      case tg::kListen: EXPECT_EQ(v.values, (std::vector<double>{-1, -1})); break;
      case tg::kOpenLeft: EXPECT_EQ(v.values, (std::vector<double>{-20, 10})); break;
      case tg::kOpenRight: EXPECT_EQ(v.values, (std::vector<double>{10, -20})); break;
      default: FAIL();
    }
  }
}

TEST(AlphaVectors, HorizonTwoValueAtUniform) {
  // One hand-expanded backup: after a Listen the belief is (0.85, 0.15) or its
  // mirror, each with probability 1/2, and the best H=1 value there is
  // max(-1, 0.85*10 - 0.15*20) = 5.5.
  auto set = solve(problems::tiger_model(), 2);
  std::vector<double> b{0.5, 0.5};
  EXPECT_NEAR(set.value(b), -1.0 + 0.95 * 5.5, 1e-12);
  oracle::tiger::Params q;
  EXPECT_NEAR(set.value(b), oracle::tiger::expectimax(q, 0.5, 2), 1e-12);
}

TEST(AlphaVectors, BestActionExamples) {
  auto h1 = solve(problems::tiger_model(), 1);
  auto a = best_action(h1, std::vector<double>{0.0, 1.0});
  EXPECT_EQ(a.action, tg::kOpenLeft);
  EXPECT_DOUBLE_EQ(a.value, 10.0);
  auto u = best_action(h1, std::vector<double>{0.5, 0.5});
  EXPECT_EQ(u.action, tg::kListen);
  EXPECT_DOUBLE_EQ(u.value, -1.0);

  auto h8 = solve(problems::tiger_model(), 8);
  EXPECT_EQ(best_action(h8, std::vector<double>{0.5, 0.5}).action, tg::kListen);
  EXPECT_EQ(best_action(h8, std::vector<double>{0.05, 0.95}).action, tg::kOpenLeft);
  oracle::tiger::Params q;
  EXPECT_EQ(oracle::tiger::expectimax_action(q, 0.05, 8), static_cast<int>(tg::kOpenLeft));
}

TEST(AlphaVectors, TiesGoToLowestAction) {
  AlphaVectorSet set;
  set.vectors = {vec(1, 1, 2), vec(1, 1, 1)};
  EXPECT_EQ(best_action(set, std::vector<double>{0.3, 0.7}).action, 1u);
}

TEST(Prune, PointwiseDominance) {
  auto out = prune_dominated({vec(1, 1), vec(0, 0)});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].values, (std::vector<double>{1, 1}));
}

TEST(Prune, NeverMaximalOnSegment) {
  auto out = prune_dominated({vec(2, 0, 0), vec(0, 2, 1), vec(0.9, 0.9, 2)});
  EXPECT_EQ(out.size(), 2u);
  for (const auto& v : out) EXPECT_NE(v.action, 2u);
  auto keep = prune_dominated({vec(2, 0, 0), vec(0, 2, 1), vec(1.1, 1.1, 2)});
  EXPECT_EQ(keep.size(), 3u);
}

TEST(Prune, SingletonAndDuplicates) {
  EXPECT_EQ(prune_dominated({vec(3, -1)}).size(), 1u);
  auto out = prune_dominated({vec(1, 2, 2), vec(1, 2, 0)});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].action, 0u);
}

TEST(Prune, MatchesEnvelopeScanOracle) {
  Rng rng = make_stream(21, 0);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<AlphaVector> vs;
    std::vector<oracle::envelope::Line> lines;
    const int n = 2 + trial % 12;
    for (int i = 0; i < n; ++i) {
      double a = u(rng), b = u(rng);
      vs.push_back(vec(a, b, static_cast<ActionId>(i)));
      lines.push_back({a, b});
    }
    auto useful = oracle::envelope::strictly_useful(lines);
    auto kept = prune_dominated(vs);
    for (int i = 0; i < n; ++i) {
      const bool survived = std::any_of(kept.begin(), kept.end(), [&](const AlphaVector& k) { return k.action == static_cast<ActionId>(i); });
      if (useful[i]) EXPECT_TRUE(survived) << "trial " << trial << " line " << i;
    }
    for (int g = 0; g <= 1000; ++g) {
      const double b0 = g / 1000.0;
      AlphaVectorSet s;
      s.vectors = kept;
      EXPECT_NEAR(s.value(std::vector<double>{b0, 1 - b0}), oracle::envelope::upper(lines, b0), 1e-12);
    }
  }
}

TEST(Backup, BudgetExceeded) {
  ViConfig cfg;
  cfg.work_budget = 10;
  auto m = problems::tiger_model();
  EXPECT_THROW(bellman_backup(m, solve(m, 3), cfg), ModelTooLarge);
}

TEST(Backup, OracleEquivalenceUpToHorizonFour) {
  auto m = problems::tiger_model();
  oracle::tiger::Params q;
  for (int h = 1; h <= 4; ++h) {
    auto set = solve(m, h);
    auto plans = oracle::tiger::enumerate_policy_trees(q, h);
    for (int g = 0; g <= 100; ++g) {
      const double b0 = g / 100.0;
      const double v = set.value(std::vector<double>{b0, 1 - b0});
      EXPECT_NEAR(v, oracle::tiger::best_plan_value(plans, b0), 1e-9) << "H=" << h << " b0=" << b0;
      EXPECT_NEAR(v, oracle::tiger::expectimax(q, b0, h), 1e-9);
    }
  }
}

TEST(Backup, HorizonEightAgreesWithExpectimax) {
  auto set = solve(problems::tiger_model(), 8);
  oracle::tiger::Params q;
  for (int g = 0; g <= 100; ++g) {
    const double b0 = g / 100.0;
    EXPECT_NEAR(set.value(std::vector<double>{b0, 1 - b0}), oracle::tiger::expectimax(q, b0, 8), 1e-9);
  }
}

TEST(Backup, PruningDoesNotChangeValues) {
  auto m = problems::tiger_model();
  ViConfig loose;
  loose.prune = false;
  auto pruned = solve(m, 4);
  auto full = solve(m, 4, loose);
  EXPECT_GE(full.size(), pruned.size());
  for (int g = 0; g <= 1000; ++g) {
    const double b0 = g / 1000.0;
    std::vector<double> b{b0, 1 - b0};
    EXPECT_NEAR(pruned.value(b), full.value(b), 1e-12);
  }
}

}  // namespace
