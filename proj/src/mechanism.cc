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

#include "fairpriv/mechanism.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>

#include "fairpriv/error.h"
#include "fairpriv/partition_game.h"

namespace fairpriv {
namespace {

// Objective differences below this are ties.
constexpr double kObjectiveTie = 1e-12;

std::vector<double> Linspace(double lo, double hi, std::size_t points) {
  std::vector<double> out(points);
  if (points == 1) {
    out[0] = lo;
    return out;
  }
  for (std::size_t i = 0; i < points; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) /
                      static_cast<double>(points - 1);
  }
  out.back() = hi;
  return out;
}

}  // namespace

void AlphaGrid::Validate() const {
  if (!(min >= 0.0 && max <= 1.0 && min < max)) {
    throw ConfigError("alpha grid needs 0 <= min < max <= 1");
  }
  if (points < 2) throw ConfigError("alpha grid needs at least 2 points");
}

std::vector<double> AlphaGrid::Values() const {
  Validate();
  return Linspace(min, max, points);
}

MechanismSolution OptimizeAlphaGrid(const CoalitionUtility& u,
                                    std::span<const UserProfile> users,
                                    const MechanismOptions& options) {
  const std::vector<double> alphas = options.grid.Values();
  const PartitionGame game(
      u, std::vector<UserProfile>(users.begin(), users.end()),
      options.ne.valuation);

  // Partitions in the order the selection rule prefers them.
  std::vector<std::size_t> order(game.num_partitions());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return options.pessimistic ? game.Utility(a) < game.Utility(b)
                               : game.Utility(a) > game.Utility(b);
  });

  std::vector<GridPoint> trace(alphas.size());
  const std::int64_t count = static_cast<std::int64_t>(alphas.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t a = 0; a < count; ++a) {
    GridPoint& point = trace[a];
    point.alpha = alphas[a];
    std::size_t pos = 0;
    while (pos < order.size() &&
           !game.HasEquilibrium(order[pos], point.alpha, options.ne)) {
      ++pos;
    }
    if (pos == order.size()) continue;
    point.has_equilibrium = true;
    point.utility = game.Utility(order[pos]);
    // Among equally good partitions keep the highest profile.
    std::optional<PrivacyVector> best;
    for (; pos < order.size() &&
           std::abs(game.Utility(order[pos]) - point.utility) <= kObjectiveTie;
         ++pos) {
      const auto found = game.EquilibriaIn(order[pos], point.alpha, options.ne);
      if (!found.empty() && (!best || *best < found.back())) {
        best = found.back();
      }
    }
    point.profile = *best;
    point.objective = (1.0 - point.alpha) * point.utility;
  }

  std::optional<std::size_t> chosen;
  for (std::size_t a = 0; a < trace.size(); ++a) {
    if (!trace[a].has_equilibrium) continue;
    if (!chosen ||
        trace[a].objective > trace[*chosen].objective + kObjectiveTie) {
      chosen = a;
    }
  }
  if (!chosen) {
    throw CertificationError("no pure equilibrium at any grid point");
  }

  MechanismSolution out;
  const GridPoint& best = trace[*chosen];
  out.alpha_star = best.alpha;
  out.profile = best.profile;
  out.utility = best.utility;
  out.platform_net = best.objective;
  out.payments =
      ShapleyUsersOnly(u, best.profile, best.alpha, options.ne.valuation);
  out.certificate =
      UnilateralGain(u, users, best.profile, best.alpha, options.ne.valuation);
  out.trace = std::move(trace);
  return out;
}

const char* RegimeName(Regime regime) {
  switch (regime) {
    case Regime::kNoIncentive:
      return "regime1";
    case Regime::kInterior:
      return "regime2";
    case Regime::kFullParticipation:
      return "regime3";
  }
  return "unknown";
}

SymmetricSolver::SymmetricSolver(CountUtility u, Options options)
    : utility_(std::move(u)),
      gamma_(GammaProfile::FromCountUtility(utility_)),
      options_(options) {
  if (options_.refine_points < 2 || options_.threshold_points < 2) {
    throw ConfigError("solver grids need at least 2 points");
  }
  boundaries_.gamma_max = gamma_.gamma_max();
  boundaries_.gamma_min = gamma_.gamma_min();
  if (boundaries_.gamma_min <= 0.0 ||
      utility_(utility_.num_users()) <= 0.0) {
    boundaries_.c_th = 0.0;
    return;
  }
  double lo = 0.0;
  double hi = boundaries_.gamma_min;
  if (FullParticipationOptimal(hi)) {
    boundaries_.c_th = hi;
    return;
  }
  while (hi - lo > options_.threshold_tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (FullParticipationOptimal(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  boundaries_.c_th = lo;
}

// Paying c / gamma_min for full participation beats every smaller alpha.
bool SymmetricSolver::FullParticipationOptimal(double c) const {
  const double full = c / boundaries_.gamma_min;
  const double u_all = utility_(utility_.num_users());
  for (double alpha :
       Linspace(0.0, std::min(full, 1.0), options_.threshold_points)) {
    if (1.0 - alpha <= 1e-15) continue;
    const double u_eq = utility_.Expected(PStar(gamma_, c, alpha).p);
    if ((1.0 - full) / (1.0 - alpha) - u_eq / u_all < -kObjectiveTie) {
      return false;
    }
  }
  return true;
}

double SymmetricSolver::Objective(double c, double alpha) const {
  return (1.0 - alpha) * utility_.Expected(PStar(gamma_, c, alpha).p);
}

SymmetricSolution SymmetricSolver::Solve(double c) const {
  if (!(c >= 0.0) || !std::isfinite(c)) {
    throw ConfigError("c must be finite and >= 0");
  }
  const RegimeBoundaries& b = boundaries_;
  SymmetricSolution out;
  if (c > b.gamma_max) {
    out.regime = Regime::kNoIncentive;
    out.alpha_star = 0.0;
    out.strategy = PStar(gamma_, c, 0.0);
  } else if (c < b.c_th) {
    out.regime = Regime::kFullParticipation;
    out.alpha_star = c / b.gamma_min;
    out.strategy = {0.0, false};
    if (out.alpha_star > 1.0) {
      out.alpha_star = 1.0;
      out.capped = true;
      out.strategy = PStar(gamma_, c, 1.0);
    }
  } else {
    out.regime = Regime::kInterior;
    const double lo = b.gamma_max > 0.0 ? c / b.gamma_max : 0.0;
    const double hi = b.gamma_min > 0.0 ? std::min(1.0, c / b.gamma_min) : 1.0;
    double best_alpha = 0.0;
    double best = -1.0;
    for (double alpha : Linspace(lo, hi, options_.refine_points)) {
      const double value = Objective(c, alpha);
      if (value > best + kObjectiveTie) {
        best = value;
        best_alpha = alpha;
      }
    }
    if (best <= 0.0) best_alpha = 0.0;
    out.alpha_star = best_alpha;
    out.strategy = PStar(gamma_, c, best_alpha);
    out.capped = b.gamma_min <= 0.0 || c / b.gamma_min > 1.0;
    if (best_alpha > 0.0 && best_alpha < hi) {
      out.characterization_ok =
          !out.strategy.any_p &&
          std::abs(gamma_(out.strategy.p) - c / best_alpha) <= 1e-9;
    }
  }
  out.utility = utility_.Expected(out.strategy.p);
  out.platform_net = (1.0 - out.alpha_star) * out.utility;
  return out;
}

GammaProfile TwoUserGamma(const Matrix2& phi1) {
  return GammaProfile({phi1[1][0] - phi1[0][0], phi1[1][1] - phi1[0][1]});
}

TwoGroupSolution TwoGroupMechanism(double c1, double c2, const AlphaGrid& grid,
                                   const Matrix2& utility, const Matrix2& phi1,
                                   const Matrix2& phi2, bool pessimistic) {
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      if (std::abs(utility[a][b] - utility[b][a]) > 1e-12 ||
          std::abs(phi1[a][b] - phi2[b][a]) > 1e-12) {
        throw SymmetryError("two-group mechanism needs a symmetric game");
      }
    }
  }
  const GammaProfile gamma = TwoUserGamma(phi1);
  const std::vector<double> alphas = grid.Values();

  auto bilinear = [](const Matrix2& m, double p, double q) {
    const double x[2] = {p, 1.0 - p};
    const double y[2] = {q, 1.0 - q};
    double sum = 0.0;
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) sum += x[a] * m[a][b] * y[b];
    }
    return sum;
  };

  std::vector<TwoGroupSolution> per_alpha(alphas.size());
  std::vector<char> valid(alphas.size(), 0);
  const std::int64_t count = static_cast<std::int64_t>(alphas.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) {
    const double alpha = alphas[i];
    const TwoPlayerNe ne = AsymTwoPlayerNe(c1, c2, alpha, gamma);
    TwoGroupSolution& best = per_alpha[i];
    for (const StrategyPair& s : ne.points) {
      if (!s.verified) {
        ++best.unverified;
        continue;
      }
      const double eu = bilinear(utility, s.p, s.q);
      const double net = (1.0 - alpha) * eu;
      const bool better = !valid[i] ||
                          (pessimistic ? net < best.platform_net - kObjectiveTie
                                       : net > best.platform_net + kObjectiveTie);
      if (better) {
        const std::size_t dropped = best.unverified;
        best = {alpha,
                s,
                eu,
                net,
                alpha * bilinear(phi1, s.p, s.q),
                alpha * bilinear(phi2, s.p, s.q),
                dropped};
        valid[i] = 1;
      }
    }
  }

  std::optional<std::size_t> chosen;
  std::size_t unverified = 0;
  for (std::size_t i = 0; i < per_alpha.size(); ++i) {
    unverified += per_alpha[i].unverified;
    if (!valid[i]) continue;
    if (!chosen ||
        per_alpha[i].platform_net >
            per_alpha[*chosen].platform_net + kObjectiveTie) {
      chosen = i;
    }
  }
  if (!chosen) throw CertificationError("no verified equilibrium on the grid");
  TwoGroupSolution out = per_alpha[*chosen];
  out.unverified = unverified;
  return out;
}

}  // namespace fairpriv
