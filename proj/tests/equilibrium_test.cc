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

#include "fairpriv/equilibrium.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fairpriv/dp_example.h"
#include "fairpriv/error.h"
#include "fairpriv/partition_game.h"
#include "oracles.h"

namespace fairpriv {
namespace {

constexpr double kTol = 1e-12;

CoalitionUtility Dp() { return dp::UtilityMatrix(dp::DpExampleParams{}); }

std::vector<UserProfile> Costs(double c1, double c2) {
  return {BinaryCostProfile(c1), BinaryCostProfile(c2)};
}

GammaProfile DpGamma() {
  return GammaProfile::FromCountUtility(ToCountUtility(Dp()));
}

TEST(BestResponseTest, DpEngageWhenPaymentCoversCost) {
  const auto users = Costs(0.4, 0.4);
  EXPECT_EQ(BestResponse(Dp(), users, {0, 1}, 1.0, 0),
            (std::vector<Level>{1}));
  EXPECT_NEAR(UserPayoff(Dp(), users, {1, 1}, 1.0, 0), 0.1, kTol);
}

TEST(BestResponseTest, NoPaymentMeansStayPrivate) {
  const auto users = Costs(0.4, 0.1);
  EXPECT_EQ(BestResponse(Dp(), users, {1, 1}, 0.0, 1),
            (std::vector<Level>{0}));
}

TEST(BestResponseTest, TiesReturnEveryMaximizer) {
  // Payoff of engaging with the other user in: 0.5 - 0.5 = 0.
  const auto users = Costs(0.5, 0.5);
  EXPECT_EQ(BestResponse(Dp(), users, {0, 1}, 1.0, 0),
            (std::vector<Level>{0, 1}));
}

TEST(PureNeTest, DpBothEngage) {
  const auto users = Costs(0.4, 0.4);
  EXPECT_TRUE(IsPureNe(Dp(), users, {1, 1}, 1.0));
  EXPECT_FALSE(IsPureNe(Dp(), users, {0, 0}, 1.0));
  EXPECT_NEAR(UnilateralGain(Dp(), users, {0, 0}, 1.0), 2.0 / 3.0 - 0.4, kTol);
  EXPECT_LE(UnilateralGain(Dp(), users, {1, 1}, 1.0), 0.0);
}

TEST(PureNeTest, ZeroAlphaLeavesOnlyAllPrivate) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 5; ++t) {
    const fed::FedParams p = oracle::RandomFedParams(rng, 4);
    const NeResult r = FindPureNe(fed::AsCoalitionUtility(p), p.users, 0.0);
    ASSERT_EQ(r.pure.size(), 1u);
    EXPECT_TRUE(r.pure[0].profile.IsZero());
  }
}

TEST(PureNeTest, StrictRejectsTies) {
  const auto users = Costs(0.5, 0.5);
  NeOptions strict;
  strict.strict = true;
  EXPECT_TRUE(IsPureNe(Dp(), users, {1, 1}, 1.0));
  EXPECT_FALSE(IsPureNe(Dp(), users, {1, 1}, 1.0, strict));
}

TEST(CountUtilityTest, DpCounts) {
  const CountUtility u = ToCountUtility(Dp());
  ASSERT_EQ(u.values.size(), 3u);
  EXPECT_NEAR(u(1), 2.0 / 3.0, kTol);
  EXPECT_NEAR(u(2), 1.0, kTol);
  // E[U] with each user private w.p. p.
  const double p = 0.3;
  EXPECT_NEAR(u.Expected(p), 2 * p * (1 - p) * 2.0 / 3.0 + (1 - p) * (1 - p),
              kTol);
  EXPECT_TRUE(ValidateAssumptions(u).ok());
}

TEST(CountUtilityTest, AsymmetricUtilityIsRejected) {
  std::mt19937_64 rng(42);
  EXPECT_THROW(ToCountUtility(oracle::RandomTable(rng, 3, 2)), SymmetryError);
}

TEST(CountUtilityTest, AssumptionViolations) {
  const CountUtility convex{{0.0, 1.0, 3.0}};
  const AssumptionReport r = ValidateAssumptions(convex);
  EXPECT_TRUE(r.monotone);
  EXPECT_FALSE(r.diminishing);
  EXPECT_FALSE(r.violations.empty());
  EXPECT_FALSE(ValidateAssumptions(CountUtility{{0.0, 1.0, 0.5}}).monotone);
  EXPECT_THROW(GammaProfile::FromCountUtility(CountUtility{{0.0, 1.0, 0.5}}),
               ConfigError);
}

TEST(GammaTest, DpLine) {
  const GammaProfile g = DpGamma();
  for (int k = 0; k <= 10; ++k) {
    const double p = 0.1 * k;
    EXPECT_NEAR(g(p), 0.5 + p / 6.0, kTol);
  }
  EXPECT_NEAR(g.gamma_min(), 0.5, kTol);
  EXPECT_NEAR(g.gamma_max(), 2.0 / 3.0, kTol);
  EXPECT_NEAR(g.Inverse(0.55), 0.3, 1e-12);
  EXPECT_EQ(g.Inverse(0.1), 0.0);
  EXPECT_EQ(g.Inverse(0.9), 1.0);
}

TEST(GammaTest, ConstantUtilityGivesZero) {
  const GammaProfile g =
      GammaProfile::FromCountUtility(CountUtility{{0.0, 0.0, 0.0, 0.0}});
  EXPECT_TRUE(g.flat());
  for (double p : {0.0, 0.4, 1.0}) EXPECT_EQ(g(p), 0.0);
}

double BinomialPmf(std::size_t n, std::size_t k, double q) {
  return std::tgamma(n + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(n - k + 1.0)) *
         std::pow(q, static_cast<double>(k)) *
         std::pow(1.0 - q, static_cast<double>(n - k));
}

TEST(GammaTest, MatchesPermutationOracleForFiveUsers) {
  const std::size_t n = 5;
  const CoalitionUtility u =
      CoalitionUtility(PrivacySpace::Binary(1.0), n,
                       [](const PrivacyVector& r) {
                         double s = 0.0;
                         for (Level l : r) s += l;
                         return 1.0 - std::exp(-0.7 * s);
                       })
          .WithSymmetryGroups(std::vector<int>(n, 0));
  const GammaProfile g = GammaProfile::FromCountUtility(ToCountUtility(u));
  std::vector<double> low(n);
  for (std::size_t k = 0; k < n; ++k) {
    PrivacyVector rho = PrivacyVector::Zeros(n);
    for (std::size_t i = 0; i <= k; ++i) rho[i] = 1;
    low[k] = oracle::UsersOnlyByPermutation(u, rho, 1.0)[0];
    EXPECT_NEAR(g.low_value()[k], low[k], 1e-12);
  }
  for (double p : {0.0, 0.2, 0.5, 0.9, 1.0}) {
    double want = 0.0;
    for (std::size_t k = 0; k < n; ++k) want += BinomialPmf(n - 1, k, 1.0 - p) * low[k];
    EXPECT_NEAR(g(p), want, 1e-12);
  }
}

TEST(PStarTest, ThreeBranches) {
  const GammaProfile g = DpGamma();
  EXPECT_EQ(PStar(g, 0.4, 0.5).p, 1.0);
  EXPECT_NEAR(PStar(g, 0.4, 0.7).p, 3.0 / 7.0, 1e-12);
  EXPECT_EQ(PStar(g, 0.4, 0.9).p, 0.0);
  EXPECT_EQ(PStar(g, 0.4, 0.0).p, 1.0);
  EXPECT_TRUE(PStar(g, 0.0, 0.0).any_p);
  EXPECT_THROW(PStar(g, -0.1, 0.5), ConfigError);
  EXPECT_THROW(PStar(g, 0.1, 1.5), ConfigError);
}

TEST(PStarTest, ResidualVanishesAtPStar) {
  const GammaProfile g = DpGamma();
  for (double c : {0.1, 0.3, 0.4, 0.6}) {
    for (double a : {0.2, 0.5, 0.7, 0.9, 1.0}) {
      EXPECT_LE(SymmetricNeResidual(g, PStar(g, c, a).p, c, a), 1e-18);
    }
  }
}

TEST(ResidualTest, HandValues) {
  const GammaProfile g = DpGamma();
  EXPECT_EQ(SymmetricNeResidual(g, 0.0, 0.4, 1.0), 0.0);
  EXPECT_NEAR(SymmetricNeResidual(g, 1.0, 0.4, 1.0), (4.0 / 15.0) * (4.0 / 15.0),
              1e-15);
}

TEST(AsymTableTest, CornerCells) {
  const GammaProfile g = DpGamma();
  const TwoPlayerNe mid = AsymTwoPlayerNe(0.2, 0.5, 0.5, g);
  ASSERT_EQ(mid.points.size(), 1u);
  EXPECT_EQ(mid.points[0].p, 0.0);
  EXPECT_EQ(mid.points[0].q, 1.0);
  const TwoPlayerNe low = AsymTwoPlayerNe(0.5, 0.6, 0.3, g);
  ASSERT_EQ(low.points.size(), 1u);
  EXPECT_EQ(low.points[0], (StrategyPair{1.0, 1.0}));
  const TwoPlayerNe high = AsymTwoPlayerNe(0.1, 0.2, 0.9, g);
  ASSERT_EQ(high.points.size(), 1u);
  EXPECT_EQ(high.points[0], (StrategyPair{0.0, 0.0}));
}

TEST(AsymTableTest, InteriorCellHasThreePoints) {
  const GammaProfile g = DpGamma();
  // Both alpha gamma ranges straddle the costs.
  const TwoPlayerNe ne = AsymTwoPlayerNe(0.55, 0.58, 0.95, g);
  EXPECT_EQ(ne.bands1, (std::vector<CostBand>{CostBand::kInterior}));
  EXPECT_EQ(ne.bands2, (std::vector<CostBand>{CostBand::kInterior}));
  ASSERT_EQ(ne.points.size(), 3u);
  EXPECT_TRUE(ne.AllVerified());
  for (const StrategyPair& s : ne.points) {
    EXPECT_LE(TwoPlayerGain(g, 0.55, 0.58, 0.95, s.p, s.q), 1e-9);
  }
}

TEST(AsymTableTest, RandomCasesVerify) {
  const GammaProfile g = DpGamma();
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const double c1 = unit(rng), c2 = unit(rng), a = unit(rng);
    const TwoPlayerNe ne = AsymTwoPlayerNe(c1, c2, a, g);
    ASSERT_FALSE(ne.points.empty());
    EXPECT_TRUE(ne.AllVerified());
  }
}

TEST(AsymTableTest, NeedsTwoUsers) {
  const GammaProfile three({0.5, 0.4, 0.3});
  EXPECT_THROW(AsymTwoPlayerNe(0.1, 0.1, 0.5, three), DimensionError);
  EXPECT_THROW(AsymTwoPlayerNe(-0.1, 0.1, 0.5, DpGamma()), ConfigError);
}

}  // namespace
}  // namespace fairpriv
