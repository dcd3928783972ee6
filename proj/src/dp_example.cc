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

#include "fairpriv/dp_example.h"

#include <cmath>
#include <sstream>

#include "fairpriv/error.h"

namespace fairpriv {
namespace dp {
namespace {

// 1/eps'^2, which is 0 at eps' = infinity.
double InvSq(double eps) { return 1.0 / (eps * eps); }

// Optimal weight with a single contributing user.
double SingleWeight(double eps) { return 1.0 / (3.0 + 24.0 * InvSq(eps)); }

// Optimal per-user weight when both users contribute.
double PairWeight(double eps) { return 1.0 / (4.0 + 12.0 * InvSq(eps)); }

void CheckLevel(Level e) {
  if (e > 1) throw ConfigError("DP example levels are 0 or eps'");
}

}  // namespace

void DpExampleParams::Validate() const {
  if (!(eps_prime > 0.0)) {
    std::ostringstream msg;
    msg << "eps_prime must be positive, got " << eps_prime;
    throw ConfigError(msg.str());
  }
}

double BayesRisk(const DpExampleParams& params, Level e1, Level e2) {
  params.Validate();
  CheckLevel(e1);
  CheckLevel(e2);
  const int shared = e1 + e2;
  if (shared == 0) return kPriorRisk;
  if (shared == 1) return kPriorRisk * (1.0 - SingleWeight(params.eps_prime));
  return kPriorRisk * (1.0 - 1.0 / (2.0 + 6.0 * InvSq(params.eps_prime)));
}

RiskTable ComputeRiskTable(const DpExampleParams& params) {
  return RiskTable{BayesRisk(params, 0, 0), BayesRisk(params, 1, 0),
                   BayesRisk(params, 1, 1)};
}

EstimatorSpec OptimalEstimator(const DpExampleParams& params, Level e1,
                               Level e2) {
  params.Validate();
  CheckLevel(e1);
  CheckLevel(e2);
  EstimatorSpec spec;
  const double eps = params.eps_prime;
  if (e1 + e2 == 0) return spec;
  const double w = (e1 + e2 == 1) ? SingleWeight(eps) : PairWeight(eps);
  spec.weights = {e1 ? w : 0.0, e2 ? w : 0.0};
  spec.laplace_inverse_scale = eps / w;
  return spec;
}

double EstimatorRisk(const EstimatorSpec& spec) {
  const double w1 = spec.weights[0];
  const double w2 = spec.weights[1];
  const double bias = w1 + w2 - 1.0;
  const double noise = 2.0 * spec.NoiseScale() * spec.NoiseScale();
  return (w1 * w1 + w2 * w2) / 6.0 + bias * bias / 12.0 + noise;
}

double UtilityFromRisk(double risk) { return kRiskSlope * risk + kRiskOffset; }

CoalitionUtility UtilityMatrix(const DpExampleParams& params) {
  const RiskTable r = ComputeRiskTable(params);
  std::vector<double> table = {UtilityFromRisk(r.r00), UtilityFromRisk(r.r10),
                               UtilityFromRisk(r.r10), UtilityFromRisk(r.r11)};
  // U(0,0) = 0 exactly; the fixed normalization is what makes it so.
  if (table[0] != 0.0) throw Error("utility normalization broken: U(0,0) != 0");
  return CoalitionUtility::Tabulated(params.Space(), 2, std::move(table))
      .WithSymmetryGroups({0, 0});
}

FairTables FairMatrices(const DpExampleParams& params, FairnessMode mode,
                        double alpha) {
  const CoalitionUtility u = UtilityMatrix(params);
  FairTables out;
  for (Level e1 = 0; e1 < 2; ++e1) {
    for (Level e2 = 0; e2 < 2; ++e2) {
      const PrivacyVector rho{e1, e2};
      const Allocation a = mode == FairnessMode::kWithPlatform
                               ? ShapleyWithPlatform(u, rho, true)
                               : ShapleyUsersOnly(u, rho, alpha);
      out.utility[e1][e2] = u(rho);
      out.platform[e1][e2] = a.platform_value.value_or(0.0);
      out.user1[e1][e2] = a.user_values[0];
      out.user2[e1][e2] = a.user_values[1];
    }
  }
  return out;
}

}  // namespace dp
}  // namespace fairpriv
