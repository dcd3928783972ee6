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

#ifndef FAIRPRIV_FED_MODEL_H_
#define FAIRPRIV_FED_MODEL_H_

// Federated mean estimation with three privacy levels:
//   0  the user shares nothing,
//   1  the user's local estimate is securely averaged with every other
//      level-1 user (the "fed pool") before the platform sees it,
//   2  the user's local estimate goes to the platform directly.
//
// User i has mean theta_i with Var(theta_i) = s2 across users, and n_i samples
// whose expected within-user variance is r2. For each target user the
// platform combines the pool average and the direct estimates with weights
// summing to one; EMSE is the resulting expected squared error.

#include <cstddef>
#include <utility>
#include <vector>

#include "fairpriv/coalition.h"
#include "fairpriv/privacy.h"
#include "fairpriv/profile.h"

namespace fairpriv {
namespace fed {

inline constexpr Level kPrivate = 0;
inline constexpr Level kFederated = 1;
inline constexpr Level kDirect = 2;

struct FedParams {
  double s2 = 1.0;
  double r2 = 1.0;
  std::vector<UserProfile> users;

  // Throws ConfigError on s2 < 0, r2 <= 0 or malformed users.
  void Validate() const;
  std::size_t num_users() const { return users.size(); }
  // Error of an uninformed estimate, r2 + 2 s2.
  double NoInformationError() const { return r2 + 2.0 * s2; }
};

// Summary of the pool and the direct users at one profile.
struct AggregateStats {
  std::vector<std::size_t> pool;    // users at level 1
  std::vector<std::size_t> direct;  // users at level 2
  // Harmonic mean of pool sample counts (0 when the pool is empty).
  double n_bar = 0.0;
  // r2 / n_bar + s2 (0 when the pool is empty).
  double v0 = 0.0;
  // r2 / n_k + s2 for each direct user, aligned with `direct`.
  std::vector<double> v_direct;
  // Harmonic mean of v_direct (0 when there are no direct users).
  double v_bar = 0.0;
};

// Weights of the estimator for one target user: fed_weight multiplies the
// pool average, direct_weights the direct users' estimates.
struct WeightScheme {
  std::size_t target = 0;
  double fed_weight = 0.0;
  std::vector<std::pair<std::size_t, double>> direct_weights;

  double Sum() const;
  // Weight on each user's local estimate (pool members share fed_weight).
  std::vector<double> PerUser(const PrivacyVector& rho) const;
};

AggregateStats ComputeAggregateStats(const FedParams& params,
                                     const PrivacyVector& rho);

// Error-minimizing weights for `target`. Throws DegenerateProfileError when
// nobody shares data.
WeightScheme OptimalWeights(const FedParams& params, const PrivacyVector& rho,
                            std::size_t target);

// Expected squared error of the estimator for `target` under arbitrary
// per-user weights v (sum 1):
//   r2 * sum_j v_j^2 / n_j + s2 * (sum_{j != i} v_j^2 + (sum_{j != i} v_j)^2).
double WeightedError(const FedParams& params, std::size_t target,
                     const std::vector<double>& per_user_weights);

// EMSE with optimal weights; r2 + 2 s2 for the all-private profile.
double Emse(const FedParams& params, const PrivacyVector& rho,
            std::size_t target);

// U(rho) = sum_i a_i log((r2 + 2 s2) / EMSE_i(rho)).
double FedUtility(const FedParams& params, const PrivacyVector& rho);

// Coalition utility over {0, 1, 2}^N whose symmetry groups are the users with
// equal (n, a).
CoalitionUtility AsCoalitionUtility(const FedParams& params);

}  // namespace fed
}  // namespace fairpriv

#endif  // FAIRPRIV_FED_MODEL_H_
