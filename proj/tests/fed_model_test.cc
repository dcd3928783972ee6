// Copyright 2026 The fairpriv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fairpriv/fed_model.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fairpriv/error.h"
#include "oracles.h"

namespace fairpriv {
namespace fed {
namespace {

FedParams Make(double s2, double r2, std::vector<int> ns) {
  FedParams p;
  p.s2 = s2;
  p.r2 = r2;
  for (int n : ns) p.users.push_back(UserProfile{n, 1.0, {0.0, 0.0, 0.0}});
  return p;
}

double Scale(double x) { return std::max(1.0, std::abs(x)); }

TEST(OptimalWeightsTest, SingleDirectUser) {
  const FedParams p = Make(2.0, 3.0, {7});
  const WeightScheme w = OptimalWeights(p, {kDirect}, 0);
  ASSERT_EQ(w.direct_weights.size(), 1u);
  EXPECT_DOUBLE_EQ(w.direct_weights[0].second, 1.0);
  EXPECT_NEAR(Emse(p, {kDirect}, 0), 3.0 / 7.0, 1e-12);
}

TEST(OptimalWeightsTest, DirectTargetWithPool) {
  const FedParams p = Make(1.0, 10.0, {100, 10});
  const PrivacyVector rho{kDirect, kFederated};
  const double closed = Emse(p, rho, 0);
  const oracle::SimplexMinimum best = oracle::MinimizeOverSimplex(p, rho, 0);
  EXPECT_NEAR(closed, best.value, 1e-6 * Scale(best.value));
  const WeightScheme w = OptimalWeights(p, rho, 0);
  EXPECT_NEAR(w.Sum(), 1.0, 1e-12);
  const std::vector<double> v = w.PerUser(rho);
  EXPECT_NEAR(v[0], best.per_user[0], 1e-6);
  EXPECT_NEAR(v[1], best.per_user[1], 1e-6);
}

TEST(OptimalWeightsTest, PooledTarget) {
  const FedParams p = Make(1.0, 10.0, {100, 10});
  const PrivacyVector rho{kDirect, kFederated};
  EXPECT_NEAR(Emse(p, rho, 1), oracle::MinimizeOverSimplex(p, rho, 1).value,
              1e-6);
}

TEST(OptimalWeightsTest, PrivateTargetWithoutPoolUsesPrecisionWeights) {
  const FedParams p = Make(0.5, 4.0, {20, 5, 50});
  const PrivacyVector rho{kPrivate, kDirect, kDirect};
  const WeightScheme w = OptimalWeights(p, rho, 0);
  EXPECT_EQ(w.fed_weight, 0.0);
  ASSERT_EQ(w.direct_weights.size(), 2u);
  const double v1 = p.r2 / 5 + p.s2, v2 = p.r2 / 50 + p.s2;
  EXPECT_NEAR(w.direct_weights[0].second, (1 / v1) / (1 / v1 + 1 / v2), 1e-12);
  EXPECT_NEAR(w.direct_weights[1].second, (1 / v2) / (1 / v1 + 1 / v2), 1e-12);
  EXPECT_NEAR(Emse(p, rho, 0), oracle::MinimizeOverSimplex(p, rho, 0).value,
              1e-9);
}

TEST(OptimalWeightsTest, NoSourceIsDegenerate) {
  const FedParams p = Make(1.0, 1.0, {10, 10});
  EXPECT_THROW(OptimalWeights(p, {0, 0}, 0), DegenerateProfileError);
}

TEST(OptimalWeightsTest, AgreesWithSimplexMinimizerOnRandomInstances) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 1 + rng() % 6;
    const FedParams p = oracle::RandomFedParams(rng, n);
    std::vector<Level> levels(n);
    for (Level& l : levels) l = static_cast<Level>(rng() % 3);
    PrivacyVector rho(levels);
    if (rho.IsZero()) rho[0] = kDirect;
    const std::size_t target = rng() % n;
    const double closed = Emse(p, rho, target);
    const oracle::SimplexMinimum best =
        oracle::MinimizeOverSimplex(p, rho, target);
    EXPECT_LE(closed, best.value + 1e-6 * Scale(best.value));
    EXPECT_NEAR(oracle::ErrorOfWeights(
                    p, target, OptimalWeights(p, rho, target).PerUser(rho)),
                closed, 1e-9 * Scale(closed));
  }
}

TEST(EmseTest, NoInformation) {
  const FedParams p = Make(3.0, 5.0, {10, 20});
  EXPECT_DOUBLE_EQ(Emse(p, {0, 0}, 1), 5.0 + 6.0);
  EXPECT_DOUBLE_EQ(p.NoInformationError(), 11.0);
}

TEST(EmseTest, OneOtherDirectUser) {
  const FedParams p = Make(3.0, 5.0, {10, 20});
  EXPECT_NEAR(Emse(p, {kPrivate, kDirect}, 0), 5.0 / 20.0 + 6.0, 1e-12);
}

TEST(EmseTest, MonteCarloOnTenUserConfiguration) {
  FedParams p = Make(100.0, 1.0, {100, 10, 10, 10, 100, 10, 10, 10, 10, 10});
  const PrivacyVector rho{2, 2, 2, 2, 1, 1, 1, 1, 1, 0};
  std::uint64_t seed = 77;
  for (std::size_t target : {0u, 4u, 9u}) {
    const oracle::McEstimate mc = oracle::SimulateFedError(
        p, rho, OptimalWeights(p, rho, target), 100000, seed++);
    EXPECT_LE(std::abs(mc.mean - Emse(p, rho, target)), 3.0 * mc.std_error)
        << "target " << target;
  }
}

TEST(AggregateStatsTest, HarmonicMeanOfPool) {
  const FedParams p = Make(1.0, 2.0, {10, 40, 100});
  const AggregateStats s = ComputeAggregateStats(p, {1, 1, 2});
  EXPECT_EQ(s.pool, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(s.direct, (std::vector<std::size_t>{2}));
  EXPECT_NEAR(s.n_bar, 2.0 / (1.0 / 10 + 1.0 / 40), 1e-12);
  EXPECT_NEAR(s.v0, 2.0 / s.n_bar + 1.0, 1e-12);
  EXPECT_NEAR(s.v_direct[0], 2.0 / 100 + 1.0, 1e-12);
}

TEST(FedUtilityTest, TrivialCases) {
  const FedParams p = Make(1.0, 1.0, {4});
  EXPECT_EQ(FedUtility(p, {0}), 0.0);
  EXPECT_NEAR(FedUtility(p, {kDirect}), std::log(12.0), 1e-12);
}

TEST(FedUtilityTest, CoalitionViewAndGroups) {
  FedParams p = Make(1.0, 2.0, {10, 10, 100, 10});
  p.users[3].a = 2.0;
  const CoalitionUtility u = AsCoalitionUtility(p);
  EXPECT_EQ(u.symmetry_groups(), (std::vector<int>{0, 0, 1, 2}));
  EXPECT_EQ(u.space(), PrivacySpace::ThreeLevel());
  const PrivacyVector rho{2, 1, 0, 2};
  EXPECT_DOUBLE_EQ(u(rho), FedUtility(p, rho));
}

TEST(FedParamsTest, Validation) {
  FedParams p = Make(1.0, 1.0, {10});
  p.users[0].cost = {0.0, 1.0, 2.0};
  EXPECT_NO_THROW(p.Validate());
  p.r2 = 0.0;
  EXPECT_THROW(p.Validate(), ConfigError);
  p.r2 = 1.0;
  p.s2 = -1.0;
  EXPECT_THROW(p.Validate(), ConfigError);
}

}  // namespace
}  // namespace fed
}  // namespace fairpriv
