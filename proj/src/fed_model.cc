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
#include <map>
#include <numeric>
#include <sstream>

#include "fairpriv/error.h"

namespace fairpriv {
namespace fed {

void FedParams::Validate() const {
  if (!(s2 >= 0.0) || !std::isfinite(s2)) {
    throw ConfigError("s2 must be finite and >= 0");
  }
  if (!(r2 > 0.0) || !std::isfinite(r2)) {
    throw ConfigError("r2 must be finite and > 0");
  }
  ValidateProfiles(users, 3, /*need_costs=*/false);
}

double WeightScheme::Sum() const {
  double sum = fed_weight;
  for (const auto& [j, w] : direct_weights) sum += w;
  return sum;
}

std::vector<double> WeightScheme::PerUser(const PrivacyVector& rho) const {
  std::vector<double> v(rho.size(), 0.0);
  std::size_t pool = 0;
  for (Level l : rho) pool += (l == kFederated);
  for (std::size_t j = 0; j < rho.size(); ++j) {
    if (rho[j] == kFederated) v[j] = fed_weight / pool;
  }
  for (const auto& [j, w] : direct_weights) v[j] = w;
  return v;
}

AggregateStats ComputeAggregateStats(const FedParams& params,
                                     const PrivacyVector& rho) {
  CheckProfile(PrivacySpace::ThreeLevel(), params.num_users(), rho);
  AggregateStats stats;
  double inv_n = 0.0;
  double inv_v = 0.0;
  for (std::size_t j = 0; j < rho.size(); ++j) {
    const double n = params.users[j].n;
    if (rho[j] == kFederated) {
      stats.pool.push_back(j);
      inv_n += 1.0 / n;
    } else if (rho[j] == kDirect) {
      stats.direct.push_back(j);
      const double v = params.r2 / n + params.s2;
      stats.v_direct.push_back(v);
      inv_v += 1.0 / v;
    }
  }
  if (!stats.pool.empty()) {
    stats.n_bar = stats.pool.size() / inv_n;
    stats.v0 = params.r2 / stats.n_bar + params.s2;
  }
  if (!stats.direct.empty()) stats.v_bar = stats.direct.size() / inv_v;
  return stats;
}

// The closed forms are written in terms of precisions: P0 = N1 / V0 for the
// pool and 1 / V_k for direct users. With D = N1 + N2 V0 / V_bar this is the
// familiar form, e.g. w_i0 = N1 / D when the target shares nothing; the
// precision form also covers an empty pool (P0 = 0) or no direct users.
WeightScheme OptimalWeights(const FedParams& params, const PrivacyVector& rho,
                            std::size_t target) {
  if (target >= params.num_users()) {
    throw DimensionError("target user out of range");
  }
  const AggregateStats st = ComputeAggregateStats(params, rho);
  if (st.pool.empty() && st.direct.empty()) {
    throw DegenerateProfileError(
        "no user shares data; optimal weights are undefined");
  }
  const double s2 = params.s2;
  const double n1 = static_cast<double>(st.pool.size());
  const double pool_precision = st.pool.empty() ? 0.0 : n1 / st.v0;
  const double direct_precision =
      std::accumulate(st.v_direct.begin(), st.v_direct.end(), 0.0,
                      [](double acc, double v) { return acc + 1.0 / v; });

  WeightScheme w;
  w.target = target;
  switch (rho[target]) {
    case kPrivate: {
      // Inverse-variance weighting of every source.
      const double total = pool_precision + direct_precision;
      w.fed_weight = pool_precision / total;
      for (std::size_t k = 0; k < st.direct.size(); ++k) {
        w.direct_weights.emplace_back(st.direct[k],
                                      (1.0 / st.v_direct[k]) / total);
      }
      break;
    }
    case kFederated: {
      // w_i0 = (N1 V_bar + N2 s2) / (N1 V_bar + N2 V0), the remainder split
      // over direct users in proportion to 1 / V_k.
      w.fed_weight =
          (n1 + s2 * direct_precision) / (n1 + st.v0 * direct_precision);
      for (std::size_t k = 0; k < st.direct.size(); ++k) {
        w.direct_weights.emplace_back(
            st.direct[k],
            (1.0 - w.fed_weight) * (1.0 / st.v_direct[k]) / direct_precision);
      }
      break;
    }
    case kDirect: {
      // H: precision of every source other than the target itself.
      const double v_target = params.r2 / params.users[target].n + s2;
      const double others = pool_precision + direct_precision - 1.0 / v_target;
      const double self = (1.0 + others * s2) / (v_target * others + 1.0);
      const double rest = others > 0.0 ? (1.0 - self) / others : 0.0;
      w.fed_weight = rest * pool_precision;
      for (std::size_t k = 0; k < st.direct.size(); ++k) {
        const std::size_t j = st.direct[k];
        w.direct_weights.emplace_back(
            j, j == target ? self : rest / st.v_direct[k]);
      }
      break;
    }
    default:
      throw ConfigError("federated levels are 0, 1 or 2");
  }
  return w;
}

double WeightedError(const FedParams& params, std::size_t target,
                     const std::vector<double>& v) {
  double noise = 0.0;
  double sq = 0.0;
  double sum = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    noise += v[j] * v[j] / params.users[j].n;
    if (j == target) continue;
    sq += v[j] * v[j];
    sum += v[j];
  }
  return params.r2 * noise + params.s2 * (sq + sum * sum);
}

double Emse(const FedParams& params, const PrivacyVector& rho,
            std::size_t target) {
  if (target >= params.num_users()) {
    throw DimensionError("target user out of range");
  }
  CheckProfile(PrivacySpace::ThreeLevel(), params.num_users(), rho);
  if (rho.IsZero()) return params.NoInformationError();
  const WeightScheme w = OptimalWeights(params, rho, target);
  return WeightedError(params, target, w.PerUser(rho));
}

double FedUtility(const FedParams& params, const PrivacyVector& rho) {
  CheckProfile(PrivacySpace::ThreeLevel(), params.num_users(), rho);
  if (rho.IsZero()) return 0.0;
  const double reference = params.NoInformationError();
  double u = 0.0;
  for (std::size_t i = 0; i < params.num_users(); ++i) {
    u += params.users[i].a * std::log(reference / Emse(params, rho, i));
  }
  return u;
}

CoalitionUtility AsCoalitionUtility(const FedParams& params) {
  params.Validate();
  std::map<std::pair<int, double>, int> keys;
  std::vector<int> groups;
  for (const UserProfile& u : params.users) {
    auto [it, inserted] =
        keys.emplace(std::make_pair(u.n, u.a), static_cast<int>(keys.size()));
    groups.push_back(it->second);
  }
  return CoalitionUtility(
             PrivacySpace::ThreeLevel(), params.num_users(),
             [params](const PrivacyVector& rho) {
               return FedUtility(params, rho);
             })
      .WithSymmetryGroups(std::move(groups));
}

}  // namespace fed
}  // namespace fairpriv
