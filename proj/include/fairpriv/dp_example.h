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

#ifndef FAIRPRIV_DP_EXAMPLE_H_
#define FAIRPRIV_DP_EXAMPLE_H_

// Two-user mean estimation under heterogeneous pure differential privacy.
//
// Each user holds one sample X_i in {-1/2, +1/2} with P(X_i = 1/2) = p and
// p ~ Unif(0, 1); the platform estimates mu = p - 1/2 with a linear-Laplace
// estimator w^T X + Laplace(1/eta). Users pick a level in {0, eps'}. Bayes
// risks have closed forms; the platform utility is the affine map of the risk
// with U(0, 0) = 0 and sup U = 1.

#include <array>

#include "fairpriv/coalition.h"
#include "fairpriv/privacy.h"
#include "fairpriv/valuation.h"

namespace fairpriv {
namespace dp {

// U = kRiskSlope * r + kRiskOffset.
inline constexpr double kRiskSlope = -24.0;
inline constexpr double kRiskOffset = 2.0;
// Prior risk E[mu^2] of the estimator that ignores the data.
inline constexpr double kPriorRisk = 1.0 / 12.0;

struct DpExampleParams {
  // Nonzero privacy level; may be kInfinity.
  double eps_prime = kInfinity;

  // Throws ConfigError unless eps_prime > 0.
  void Validate() const;
  PrivacySpace Space() const { return PrivacySpace::Binary(eps_prime); }
};

// A linear-Laplace estimator w^T X + Z with Z ~ Laplace(1 / eta).
struct EstimatorSpec {
  std::array<double, 2> weights{0.0, 0.0};
  // eta; +infinity encodes no noise.
  double laplace_inverse_scale = kInfinity;

  double NoiseScale() const { return 1.0 / laplace_inverse_scale; }
};

// Bayes risks for level pairs (0,0), (eps',0) ~ (0,eps') and (eps',eps').
struct RiskTable {
  double r00 = kPriorRisk;
  double r10 = kPriorRisk;
  double r11 = kPriorRisk;
};

// Levels are indices into DpExampleParams::Space(): 0 or 1 (= eps').
double BayesRisk(const DpExampleParams& params, Level e1, Level e2);
RiskTable ComputeRiskTable(const DpExampleParams& params);

// Risk-minimizing weights and noise, with the privacy constraint
// eta * max_i w_i <= eps' tight. The all-zero pair yields the prior mean.
EstimatorSpec OptimalEstimator(const DpExampleParams& params, Level e1,
                               Level e2);

// Integrated squared error of an arbitrary linear-Laplace estimator under the
// uniform prior on p:  sum w_i^2 / 6 + (sum w_i - 1)^2 / 12 + 2 / eta^2.
double EstimatorRisk(const EstimatorSpec& spec);

double UtilityFromRisk(double risk);

// Two-user tabulated utility (single symmetry group).
CoalitionUtility UtilityMatrix(const DpExampleParams& params);

using Table2 = std::array<std::array<double, 2>, 2>;

// Per-player fair values for every cell, indexed [u1 level][u2 level].
struct FairTables {
  Table2 utility{};
  Table2 platform{};  // zero in users-only mode
  Table2 user1{};
  Table2 user2{};
};

FairTables FairMatrices(const DpExampleParams& params, FairnessMode mode,
                        double alpha = 1.0);

}  // namespace dp
}  // namespace fairpriv

#endif  // FAIRPRIV_DP_EXAMPLE_H_
