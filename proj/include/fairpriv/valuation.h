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

#ifndef FAIRPRIV_VALUATION_H_
#define FAIRPRIV_VALUATION_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "fairpriv/coalition.h"
#include "fairpriv/kernels.h"
#include "fairpriv/privacy.h"

namespace fairpriv {

// Which axiom system the values satisfy: the platform as a coalition member
// (values sum to U) or fairness among users only (values sum to alpha * U).
enum class FairnessMode { kWithPlatform = 1, kUsersOnly = 2 };

// Fair split of the utility generated at a privacy profile.
struct Allocation {
  std::vector<double> user_values;
  // Set only when the platform is a coalition member.
  std::optional<double> platform_value;
  // Fraction of the utility paid to users (1 when the platform is a member).
  double alpha = 1.0;
  // U(rho).
  double total_utility = 0.0;
  // U(0). Subset-sum values distribute U(rho) - U(0) among users; every
  // utility built by this library has U(0) = 0.
  double baseline_utility = 0.0;

  double UserSum() const;
  // Platform mode: platform + sum(users) - U(rho).
  // Users-only mode: sum(users) - alpha * (U(rho) - U(0)).
  double EfficiencyGap() const;
};

struct ValuationOptions {
  // Largest N handled by subset enumeration. Beyond it, utilities with
  // symmetry groups switch to the grouped formula and others are rejected.
  std::size_t exact_cap = 20;
  bool override_cap = false;
  kernels::Exec exec = kernels::Exec::kParallel;
  // Spot-check declared symmetry groups before using them.
  bool check_symmetry = true;
  // Seed of that spot check.
  std::uint64_t seed = 7;
};

// Values when the platform is a coalition member: the platform and the N users
// form an (N+1)-player game in which nothing is produced without the
// platform. With `platform_joins == false` every value is zero.
Allocation ShapleyWithPlatform(const CoalitionUtility& u,
                               const PrivacyVector& rho, bool platform_joins,
                               const ValuationOptions& options = {});

// Values among users only, scaled so they sum to alpha * U(rho).
// Throws ConfigError unless 0 <= alpha <= 1.
Allocation ShapleyUsersOnly(const CoalitionUtility& u, const PrivacyVector& rho,
                            double alpha, const ValuationOptions& options = {});

// ShapleyUsersOnly evaluated over count vectors of exchangeable
// (group, level) classes instead of 2^N subsets. Requires symmetry groups.
Allocation GroupedShapley(const CoalitionUtility& u, const PrivacyVector& rho,
                          double alpha, const ValuationOptions& options = {});

// Platform-member variant of GroupedShapley.
Allocation GroupedShapleyWithPlatform(const CoalitionUtility& u,
                                      const PrivacyVector& rho,
                                      const ValuationOptions& options = {});

// Users-only value of one user at alpha = 1.
double UserValue(const CoalitionUtility& u, const PrivacyVector& rho,
                 std::size_t user, const ValuationOptions& options = {});

// Randomized swap test of the declared symmetry groups. Throws SymmetryError
// naming the first group whose members are not exchangeable.
void CheckSymmetryGroups(const CoalitionUtility& u, std::uint64_t seed = 7,
                         int trials_per_group = 8);

}  // namespace fairpriv

#endif  // FAIRPRIV_VALUATION_H_
