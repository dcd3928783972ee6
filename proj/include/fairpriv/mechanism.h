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

#ifndef FAIRPRIV_MECHANISM_H_
#define FAIRPRIV_MECHANISM_H_

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fairpriv/coalition.h"
#include "fairpriv/equilibrium.h"
#include "fairpriv/profile.h"
#include "fairpriv/valuation.h"

namespace fairpriv {

// Evenly spaced payment fractions, endpoints included.
struct AlphaGrid {
  double min = 0.0;
  double max = 1.0;
  std::size_t points = 401;

  // Throws ConfigError unless 0 <= min < max <= 1 and points >= 2.
  void Validate() const;
  std::vector<double> Values() const;
};

struct MechanismOptions {
  AlphaGrid grid;
  NeOptions ne;
  // Select the equilibrium worst for the platform instead of the best.
  bool pessimistic = false;
};

// Outcome at one grid point.
struct GridPoint {
  double alpha = 0.0;
  bool has_equilibrium = false;
  PrivacyVector profile;
  double utility = 0.0;
  double objective = 0.0;  // (1 - alpha) * utility
};

struct MechanismSolution {
  double alpha_star = 0.0;
  PrivacyVector profile;
  double utility = 0.0;
  double platform_net = 0.0;
  Allocation payments;
  // Max unilateral gain at the chosen profile, recomputed from scratch.
  double certificate = 0.0;
  std::vector<GridPoint> trace;
};

// Best payment fraction on the grid, each alpha judged by its selected pure
// NE. Ties go to the smaller alpha, then the lexicographically larger
// profile. Throws CertificationError if no grid point has a pure NE.
MechanismSolution OptimizeAlphaGrid(const CoalitionUtility& u,
                                    std::span<const UserProfile> users,
                                    const MechanismOptions& options = {});

// ---------------------------------------------------------------------------
// Symmetric users with a common sensitivity c.

enum class Regime { kNoIncentive = 1, kInterior = 2, kFullParticipation = 3 };

const char* RegimeName(Regime regime);

struct RegimeBoundaries {
  double gamma_max = 0.0;
  double gamma_min = 0.0;
  double c_th = 0.0;
};

struct SymmetricSolution {
  Regime regime = Regime::kNoIncentive;
  double alpha_star = 0.0;
  MixedSymmetricStrategy strategy;
  double utility = 0.0;  // E[U] at the equilibrium
  double platform_net = 0.0;
  // alpha_star was clipped to 1 because gamma_min is too small.
  bool capped = false;
  // In the interior regime, gamma(p*) = c / alpha* at the optimum.
  bool characterization_ok = true;
};

class SymmetricSolver {
 public:
  struct Options {
    std::size_t refine_points = 2001;
    std::size_t threshold_points = 2001;
    double threshold_tolerance = 1e-6;
  };

  explicit SymmetricSolver(CountUtility u) : SymmetricSolver(std::move(u), Options{}) {}
  SymmetricSolver(CountUtility u, Options options);

  const RegimeBoundaries& boundaries() const { return boundaries_; }
  const GammaProfile& gamma() const { return gamma_; }
  const CountUtility& utility() const { return utility_; }

  SymmetricSolution Solve(double c) const;
  // (1 - alpha) E[U] at the symmetric equilibrium for (c, alpha).
  double Objective(double c, double alpha) const;

 private:
  bool FullParticipationOptimal(double c) const;

  CountUtility utility_;
  GammaProfile gamma_;
  Options options_;
  RegimeBoundaries boundaries_;
};

// ---------------------------------------------------------------------------
// Two users of a symmetric binary game with different sensitivities.

// Indexed [user 1 level][user 2 level].
using Matrix2 = std::array<std::array<double, 2>, 2>;

struct TwoGroupSolution {
  double alpha_star = 0.0;
  StrategyPair strategies;
  double expected_utility = 0.0;
  double platform_net = 0.0;
  double user1_payment = 0.0;
  double user2_payment = 0.0;
  // Table equilibria dropped because they failed the best-response check.
  std::size_t unverified = 0;
};

// `phi1` and `phi2` are the users' fair values at alpha = 1. Throws
// SymmetryError unless U and the values are symmetric in the two users.
TwoGroupSolution TwoGroupMechanism(double c1, double c2, const AlphaGrid& grid,
                                   const Matrix2& utility, const Matrix2& phi1,
                                   const Matrix2& phi2,
                                   bool pessimistic = false);

// Gamma of a symmetric two-user game, from user 1's values.
GammaProfile TwoUserGamma(const Matrix2& phi1);

}  // namespace fairpriv

#endif  // FAIRPRIV_MECHANISM_H_
