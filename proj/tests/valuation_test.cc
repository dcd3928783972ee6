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

#include "fairpriv/valuation.h"

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "fairpriv/dp_example.h"
#include "fairpriv/error.h"
#include "fairpriv/fed_model.h"
#include "oracles.h"

namespace fairpriv {
namespace {

constexpr double kTol = 1e-12;

CoalitionUtility Dp() { return dp::UtilityMatrix(dp::DpExampleParams{}); }

PrivacyVector RandomProfile(std::mt19937_64& rng, std::size_t n,
                            std::size_t levels) {
  std::vector<Level> out(n);
  for (Level& l : out) l = static_cast<Level>(rng() % levels);
  return PrivacyVector(std::move(out));
}

TEST(ShapleyWithPlatformTest, DpBothParticipate) {
  const Allocation a = ShapleyWithPlatform(Dp(), {1, 1}, true);
  EXPECT_NEAR(*a.platform_value, 5.0 / 9.0, kTol);
  EXPECT_NEAR(a.user_values[0], 2.0 / 9.0, kTol);
  EXPECT_NEAR(a.user_values[1], 2.0 / 9.0, kTol);
  EXPECT_NEAR(a.EfficiencyGap(), 0.0, kTol);
}

TEST(ShapleyWithPlatformTest, DpOneParticipates) {
  const Allocation a = ShapleyWithPlatform(Dp(), {1, 0}, true);
  EXPECT_NEAR(*a.platform_value, 1.0 / 3.0, kTol);
  EXPECT_NEAR(a.user_values[0], 1.0 / 3.0, kTol);
  EXPECT_EQ(a.user_values[1], 0.0);
}

TEST(ShapleyWithPlatformTest, AbsentPlatformPaysNothing) {
  std::mt19937_64 rng(1);
  const CoalitionUtility u = oracle::RandomTable(rng, 4, 3);
  const Allocation a = ShapleyWithPlatform(u, {2, 1, 0, 2}, false);
  EXPECT_EQ(*a.platform_value, 0.0);
  for (double x : a.user_values) EXPECT_EQ(x, 0.0);
}

TEST(ShapleyWithPlatformTest, MatchesPermutationOracle) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    const CoalitionUtility u = oracle::RandomTable(rng, 4, 3);
    const PrivacyVector rho = RandomProfile(rng, 4, 3);
    const Allocation a = ShapleyWithPlatform(u, rho, true);
    const std::vector<double> ref = oracle::WithPlatformByPermutation(u, rho);
    EXPECT_NEAR(*a.platform_value, ref[0], 1e-12);
    for (std::size_t i = 0; i < 4; ++i) {
      EXPECT_NEAR(a.user_values[i], ref[i + 1], 1e-12);
    }
  }
}

TEST(ShapleyUsersOnlyTest, DpValues) {
  const Allocation both = ShapleyUsersOnly(Dp(), {1, 1}, 1.0);
  EXPECT_NEAR(both.user_values[0], 0.5, kTol);
  EXPECT_NEAR(both.user_values[1], 0.5, kTol);
  const Allocation one = ShapleyUsersOnly(Dp(), {1, 0}, 1.0);
  EXPECT_NEAR(one.user_values[0], 2.0 / 3.0, kTol);
  EXPECT_EQ(one.user_values[1], 0.0);
  const Allocation none = ShapleyUsersOnly(Dp(), {0, 0}, 1.0);
  EXPECT_EQ(none.user_values[0], 0.0);
  EXPECT_EQ(none.user_values[1], 0.0);
}

TEST(ShapleyUsersOnlyTest, MatchesScaledPermutationOracle) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    const CoalitionUtility u = oracle::RandomTable(rng, 5, 2);
    const PrivacyVector rho = RandomProfile(rng, 5, 2);
    const Allocation a = ShapleyUsersOnly(u, rho, 0.7);
    const std::vector<double> ref = oracle::UsersOnlyByPermutation(u, rho, 0.7);
    for (std::size_t i = 0; i < 5; ++i) {
      EXPECT_NEAR(a.user_values[i], ref[i], 1e-12);
    }
    EXPECT_NEAR(a.EfficiencyGap(), 0.0, 1e-12);
  }
}

TEST(ShapleyUsersOnlyTest, EfficiencyIsRelativeToTheEmptyProfile) {
  std::mt19937_64 rng(6);
  const CoalitionUtility u = oracle::RandomTable(rng, 3, 3, false);
  const PrivacyVector rho{2, 1, 2};
  const Allocation a = ShapleyUsersOnly(u, rho, 0.4);
  EXPECT_NEAR(a.UserSum(), 0.4 * (u(rho) - u({0, 0, 0})), 1e-12);
  EXPECT_NEAR(a.EfficiencyGap(), 0.0, 1e-12);
}

TEST(ShapleyUsersOnlyTest, RejectsAlphaOutsideUnitInterval) {
  EXPECT_THROW(ShapleyUsersOnly(Dp(), {1, 1}, 1.5), ConfigError);
  EXPECT_THROW(ShapleyUsersOnly(Dp(), {1, 1}, -0.1), ConfigError);
}

TEST(ShapleyUsersOnlyTest, DimensionMismatch) {
  EXPECT_THROW(ShapleyUsersOnly(Dp(), {1, 1, 1}, 1.0), DimensionError);
}

TEST(UserValueTest, AgreesWithFullAllocation) {
  std::mt19937_64 rng(8);
  const CoalitionUtility u = oracle::RandomTable(rng, 5, 3);
  const PrivacyVector rho{2, 0, 1, 1, 2};
  const Allocation a = ShapleyUsersOnly(u, rho, 1.0);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_NEAR(UserValue(u, rho, i), a.user_values[i], 1e-12);
  }
}

fed::FedParams TenUsers() {
  fed::FedParams p;
  p.s2 = 1.0;
  p.r2 = 10.0;
  for (int n : {100, 100, 10, 10, 10, 100, 10, 10, 100, 10}) {
    p.users.push_back(UserProfile{n, 1.0, {0.0, 0.1, 0.2}});
  }
  return p;
}

TEST(GroupedShapleyTest, MatchesExactOnFederatedUtility) {
  const fed::FedParams p = TenUsers();
  const CoalitionUtility u = fed::AsCoalitionUtility(p);
  ASSERT_EQ(u.num_groups(), 2u);
  // Four (n, level) classes.
  const PrivacyVector rho{2, 1, 2, 1, 2, 1, 1, 2, 2, 1};
  const Allocation exact = ShapleyUsersOnly(u, rho, 0.8);
  const Allocation grouped = GroupedShapley(u, rho, 0.8);
  for (std::size_t i = 0; i < 10; ++i) {
    EXPECT_NEAR(grouped.user_values[i], exact.user_values[i],
                1e-9 * std::abs(exact.user_values[i]) + 1e-12);
  }
  const Allocation exact_p = ShapleyWithPlatform(u, rho, true);
  const Allocation grouped_p = GroupedShapleyWithPlatform(u, rho);
  EXPECT_NEAR(*grouped_p.platform_value, *exact_p.platform_value, 1e-9);
}

TEST(GroupedShapleyTest, OneGroupSameLevelGivesEqualValues) {
  const CoalitionUtility u =
      CoalitionUtility(PrivacySpace::ThreeLevel(), 6,
                       [](const PrivacyVector& r) {
                         double s = 0.0;
                         for (Level l : r) s += l;
                         return std::sqrt(s);
                       })
          .WithSymmetryGroups({0, 0, 0, 0, 0, 0});
  const Allocation a = GroupedShapley(u, PrivacyVector::Filled(6, 2), 1.0);
  for (double x : a.user_values) EXPECT_NEAR(x, a.user_values[0], 1e-14);
  EXPECT_NEAR(a.UserSum(), std::sqrt(12.0), 1e-12);
}

TEST(GroupedShapleyTest, DpOneGroup) {
  const Allocation a = GroupedShapley(Dp(), {1, 1}, 1.0);
  EXPECT_NEAR(a.user_values[0], 0.5, kTol);
  EXPECT_NEAR(a.user_values[1], 0.5, kTol);
}

TEST(GroupedShapleyTest, RequiresGroups) {
  std::mt19937_64 rng(9);
  EXPECT_THROW(GroupedShapley(oracle::RandomTable(rng, 3, 2), {1, 1, 1}, 1.0),
               ConfigError);
}

CoalitionUtility CountingUtility(std::size_t n, bool grouped) {
  CoalitionUtility u(PrivacySpace::Binary(1.0), n, [](const PrivacyVector& r) {
    double s = 0.0;
    for (Level l : r) s += l;
    return std::log1p(s);
  });
  return grouped ? u.WithSymmetryGroups(std::vector<int>(n, 0)) : u;
}

TEST(ExactCapTest, LargeUngroupedGameIsRejected) {
  EXPECT_THROW(ShapleyUsersOnly(CountingUtility(21, false),
                                PrivacyVector::Filled(21, 1), 1.0),
               TooLargeError);
}

TEST(ExactCapTest, LargeGroupedGameFallsBackToGroupedFormula) {
  const Allocation a = ShapleyUsersOnly(CountingUtility(40, true),
                                        PrivacyVector::Filled(40, 1), 1.0);
  for (double x : a.user_values) EXPECT_NEAR(x, std::log1p(40.0) / 40.0, 1e-12);
}

TEST(ExactCapTest, CapCanBeLowered) {
  ValuationOptions options;
  options.exact_cap = 3;
  EXPECT_THROW(ShapleyUsersOnly(CountingUtility(4, false),
                                PrivacyVector::Filled(4, 1), 1.0, options),
               TooLargeError);
}

TEST(SymmetryCheckTest, FalseGroupDeclarationIsCaught) {
  std::mt19937_64 rng(10);
  const CoalitionUtility u =
      oracle::RandomTable(rng, 4, 3).WithSymmetryGroups({0, 0, 1, 1});
  EXPECT_THROW(CheckSymmetryGroups(u, 7), SymmetryError);
  EXPECT_THROW(GroupedShapley(u, {1, 2, 1, 2}, 1.0), SymmetryError);
}

TEST(SymmetryCheckTest, TrueGroupsPass) {
  EXPECT_NO_THROW(CheckSymmetryGroups(fed::AsCoalitionUtility(TenUsers()), 7));
  EXPECT_NO_THROW(CheckSymmetryGroups(Dp(), 7));
}

TEST(ExecTest, SerialAndParallelAllocationsAgree) {
  std::mt19937_64 rng(11);
  const CoalitionUtility u = oracle::RandomTable(rng, 6, 3);
  const PrivacyVector rho{2, 1, 2, 1, 1, 2};
  ValuationOptions serial;
  serial.exec = kernels::Exec::kSerial;
  const Allocation a = ShapleyWithPlatform(u, rho, true, serial);
  const Allocation b = ShapleyWithPlatform(u, rho, true);
  EXPECT_EQ(a.user_values, b.user_values);
  EXPECT_EQ(*a.platform_value, *b.platform_value);
}

}  // namespace
}  // namespace fairpriv
