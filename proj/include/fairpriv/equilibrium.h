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

#ifndef FAIRPRIV_EQUILIBRIUM_H_
#define FAIRPRIV_EQUILIBRIUM_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fairpriv/coalition.h"
#include "fairpriv/privacy.h"
#include "fairpriv/profile.h"
#include "fairpriv/valuation.h"

namespace fairpriv {

struct NeOptions {
  // Payoffs within this distance count as ties.
  double tie_tolerance = 1e-9;
  // Require the current level to be the unique best response.
  bool strict = false;
  ValuationOptions valuation;
};

// u_i = alpha * phi_i(rho) - c_i(rho_i), with users-only fair values.
double UserPayoff(const CoalitionUtility& u, std::span<const UserProfile> users,
                  const PrivacyVector& rho, double alpha, std::size_t user,
                  const ValuationOptions& options = {});

// Every level maximizing the user's payoff with the others held fixed.
std::vector<Level> BestResponse(const CoalitionUtility& u,
                                std::span<const UserProfile> users,
                                const PrivacyVector& rho, double alpha,
                                std::size_t user, const NeOptions& options = {});

// Largest gain any single user gets by switching level (0 at an exact NE).
double UnilateralGain(const CoalitionUtility& u,
                      std::span<const UserProfile> users,
                      const PrivacyVector& rho, double alpha,
                      const ValuationOptions& options = {});

bool IsPureNe(const CoalitionUtility& u, std::span<const UserProfile> users,
              const PrivacyVector& rho, double alpha,
              const NeOptions& options = {});

struct PureEquilibrium {
  PrivacyVector profile;
  // Max unilateral gain at `profile`.
  double certificate = 0.0;
};

struct NeResult {
  // Sorted lexicographically.
  std::vector<PureEquilibrium> pure;

  double MaxCertificate() const;
};

// ---------------------------------------------------------------------------
// Symmetric binary games. Users choose between the zero level ("high
// privacy") and one nonzero level ("low privacy").

// U(k): utility when exactly k of N exchangeable users are at the low level.
struct CountUtility {
  std::vector<double> values;  // size N + 1

  std::size_t num_users() const { return values.empty() ? 0 : values.size() - 1; }
  double operator()(std::size_t k) const { return values.at(k); }
  // E[U] when each user independently stays private with probability p.
  double Expected(double p) const;
};

// Count form of a binary utility whose users share one symmetry group.
CountUtility ToCountUtility(const CoalitionUtility& u);

struct AssumptionReport {
  bool monotone = true;
  bool diminishing = true;
  std::vector<std::string> violations;

  bool ok() const { return monotone && diminishing; }
};

// Strict monotonicity and strictly decreasing increments of U(k).
AssumptionReport ValidateAssumptions(const CountUtility& u);

// Fair value of a low-privacy user when k others are also low, at alpha = 1.
double SymmetricLowValue(const CountUtility& u, std::size_t k);

// gamma(p): expected gain in fair value from moving to the low level while
// every other user stays private with probability p.
class GammaProfile {
 public:
  // Throws ConfigError for a utility that is not monotone or makes gamma
  // decrease, when `validate` is set.
  static GammaProfile FromCountUtility(const CountUtility& u,
                                       bool validate = true);
  // low_value[k]: gain of switching to the low level with k others low.
  explicit GammaProfile(std::vector<double> low_value);

  double operator()(double p) const;
  double gamma_min() const { return low_value_.back(); }
  double gamma_max() const { return low_value_.front(); }
  bool flat() const { return gamma_min() == gamma_max(); }
  std::size_t num_users() const { return low_value_.size(); }
  const std::vector<double>& low_value() const { return low_value_; }

  // Smallest p with gamma(p) >= y, by bisection (y clamped to the range).
  double Inverse(double y) const;

 private:
  std::vector<double> low_value_;
};

// Probability of staying private in the symmetric equilibrium.
struct MixedSymmetricStrategy {
  double p = 1.0;
  // Every p in [0, 1] is an equilibrium (flat gamma at c / alpha).
  bool any_p = false;
};

MixedSymmetricStrategy PStar(const GammaProfile& gamma, double c, double alpha);

// [(1-p)(c - alpha gamma)]_+^2 + [-p(c - alpha gamma)]_+^2.
double SymmetricNeResidual(const GammaProfile& gamma, double p, double c,
                           double alpha);

// ---------------------------------------------------------------------------
// Two asymmetric users of a symmetric binary game.

// Mixed strategies as probabilities of the zero level, user 1 first.
struct StrategyPair {
  double p = 1.0;
  double q = 1.0;
  double certificate = 0.0;
  bool verified = true;

  friend bool operator==(const StrategyPair& a, const StrategyPair& b) {
    return a.p == b.p && a.q == b.q;
  }
};

// Position of alpha relative to c / gamma_max and c / gamma_min.
enum class CostBand { kPrivate = 0, kInterior = 1, kEngaged = 2 };

struct TwoPlayerNe {
  std::vector<StrategyPair> points;
  // Bands of each user (two entries when alpha sits on a threshold).
  std::vector<CostBand> bands1;
  std::vector<CostBand> bands2;

  bool AllVerified() const;
};

// Largest gain either user gets from a pure deviation at (p, q).
double TwoPlayerGain(const GammaProfile& gamma, double c1, double c2,
                     double alpha, double p, double q);

// Equilibria from the threshold table; each point is re-checked with
// TwoPlayerGain and marked unverified if the check fails.
TwoPlayerNe AsymTwoPlayerNe(double c1, double c2, double alpha,
                            const GammaProfile& gamma,
                            double tolerance = 1e-9);

}  // namespace fairpriv

#endif  // FAIRPRIV_EQUILIBRIUM_H_
