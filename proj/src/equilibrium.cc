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

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fairpriv/error.h"
#include "fairpriv/kernels.h"

namespace fairpriv {
namespace {

constexpr int kBisectionSteps = 80;

void CheckUsers(const CoalitionUtility& u, std::span<const UserProfile> users) {
  if (users.size() != u.num_users()) {
    std::ostringstream msg;
    msg << "utility has " << u.num_users() << " users but " << users.size()
        << " profiles were given";
    throw DimensionError(msg.str());
  }
  ValidateProfiles(users, u.space().size());
}

void CheckAlpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw ConfigError("alpha must lie in [0, 1]");
  }
}

// Payoff of every level for one user, others fixed.
std::vector<double> LevelPayoffs(const CoalitionUtility& u,
                                 std::span<const UserProfile> users,
                                 const PrivacyVector& rho, double alpha,
                                 std::size_t user,
                                 const ValuationOptions& options) {
  std::vector<double> pay(u.space().size());
  for (std::size_t l = 0; l < pay.size(); ++l) {
    const Level level = static_cast<Level>(l);
    pay[l] = alpha * UserValue(u, rho.With(user, level), user, options) -
             users[user].Cost(level);
  }
  return pay;
}

double BinomialWeight(std::size_t n, std::size_t k, double prob) {
  return kernels::Choose(static_cast<int>(n), static_cast<int>(k)) *
         std::pow(prob, static_cast<double>(k)) *
         std::pow(1.0 - prob, static_cast<double>(n - k));
}

}  // namespace

double UserPayoff(const CoalitionUtility& u, std::span<const UserProfile> users,
                  const PrivacyVector& rho, double alpha, std::size_t user,
                  const ValuationOptions& options) {
  CheckUsers(u, users);
  CheckAlpha(alpha);
  CheckProfile(u.space(), u.num_users(), rho);
  return alpha * UserValue(u, rho, user, options) - users[user].Cost(rho[user]);
}

std::vector<Level> BestResponse(const CoalitionUtility& u,
                                std::span<const UserProfile> users,
                                const PrivacyVector& rho, double alpha,
                                std::size_t user, const NeOptions& options) {
  CheckUsers(u, users);
  CheckAlpha(alpha);
  CheckProfile(u.space(), u.num_users(), rho);
  const std::vector<double> pay =
      LevelPayoffs(u, users, rho, alpha, user, options.valuation);
  const double best = *std::max_element(pay.begin(), pay.end());
  std::vector<Level> out;
  for (std::size_t l = 0; l < pay.size(); ++l) {
    if (pay[l] >= best - options.tie_tolerance) {
      out.push_back(static_cast<Level>(l));
    }
  }
  return out;
}

double UnilateralGain(const CoalitionUtility& u,
                      std::span<const UserProfile> users,
                      const PrivacyVector& rho, double alpha,
                      const ValuationOptions& options) {
  CheckUsers(u, users);
  CheckAlpha(alpha);
  CheckProfile(u.space(), u.num_users(), rho);
  double gain = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const std::vector<double> pay =
        LevelPayoffs(u, users, rho, alpha, i, options);
    for (double p : pay) gain = std::max(gain, p - pay[rho[i]]);
  }
  return gain;
}

bool IsPureNe(const CoalitionUtility& u, std::span<const UserProfile> users,
              const PrivacyVector& rho, double alpha,
              const NeOptions& options) {
  CheckUsers(u, users);
  CheckAlpha(alpha);
  CheckProfile(u.space(), u.num_users(), rho);
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const std::vector<double> pay =
        LevelPayoffs(u, users, rho, alpha, i, options.valuation);
    for (std::size_t l = 0; l < pay.size(); ++l) {
      if (l == rho[i]) continue;
      const double gain = pay[l] - pay[rho[i]];
      if (options.strict ? gain >= -options.tie_tolerance
                         : gain > options.tie_tolerance) {
        return false;
      }
    }
  }
  return true;
}

double NeResult::MaxCertificate() const {
  double m = 0.0;
  for (const auto& e : pure) m = std::max(m, e.certificate);
  return m;
}

double CountUtility::Expected(double p) const {
  const std::size_t n = num_users();
  double sum = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    sum += BinomialWeight(n, k, 1.0 - p) * values[k];
  }
  return sum;
}

CountUtility ToCountUtility(const CoalitionUtility& u) {
  if (u.space().size() != 2) {
    throw ConfigError("count utilities need a binary privacy space");
  }
  if (u.num_users() > 1 && u.num_groups() != 1) {
    throw SymmetryError("count utilities need all users in one symmetry group");
  }
  CountUtility out;
  PrivacyVector rho = PrivacyVector::Zeros(u.num_users());
  out.values.push_back(u.Evaluate(rho));
  for (std::size_t k = 0; k < u.num_users(); ++k) {
    rho[k] = 1;
    out.values.push_back(u.Evaluate(rho));
  }
  return out;
}

AssumptionReport ValidateAssumptions(const CountUtility& u) {
  AssumptionReport report;
  const std::size_t n = u.num_users();
  for (std::size_t k = 0; k < n; ++k) {
    if (!(u(k + 1) > u(k))) {
      report.monotone = false;
      std::ostringstream msg;
      msg << "U(" << k + 1 << ") = " << u(k + 1) << " is not above U(" << k
          << ") = " << u(k);
      report.violations.push_back(msg.str());
    }
  }
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double first = u(k + 1) - u(k);
    const double second = u(k + 2) - u(k + 1);
    if (!(second < first)) {
      report.diminishing = false;
      std::ostringstream msg;
      msg << "increment " << k + 1 << " -> " << k + 2 << " (" << second
          << ") is not below " << k << " -> " << k + 1 << " (" << first << ")";
      report.violations.push_back(msg.str());
    }
  }
  return report;
}

double SymmetricLowValue(const CountUtility& u, std::size_t k) {
  if (k >= u.num_users()) throw DimensionError("k must be below N");
  // Each size-s coalition of the k other low users appears C(k, s) times and
  // carries weight 1 / ((k + 1) C(k, s)).
  double sum = 0.0;
  for (std::size_t s = 0; s <= k; ++s) sum += u(s + 1) - u(s);
  return sum / static_cast<double>(k + 1);
}

GammaProfile GammaProfile::FromCountUtility(const CountUtility& u,
                                            bool validate) {
  if (u.num_users() == 0) throw ConfigError("count utility needs N >= 1");
  std::vector<double> low(u.num_users());
  for (std::size_t k = 0; k < low.size(); ++k) low[k] = SymmetricLowValue(u, k);
  if (validate) {
    for (std::size_t k = 0; k < u.num_users(); ++k) {
      if (u(k + 1) < u(k)) {
        throw ConfigError("utility is not monotone in the number of users");
      }
    }
    for (std::size_t k = 0; k + 1 < low.size(); ++k) {
      if (low[k + 1] > low[k]) {
        throw ConfigError("gamma is not nondecreasing for this utility");
      }
    }
  }
  return GammaProfile(std::move(low));
}

GammaProfile::GammaProfile(std::vector<double> low_value)
    : low_value_(std::move(low_value)) {
  if (low_value_.empty()) throw ConfigError("gamma needs at least one user");
}

double GammaProfile::operator()(double p) const {
  const std::size_t others = low_value_.size() - 1;
  double sum = 0.0;
  for (std::size_t k = 0; k <= others; ++k) {
    sum += BinomialWeight(others, k, 1.0 - p) * low_value_[k];
  }
  return sum;
}

double GammaProfile::Inverse(double y) const {
  if (y <= gamma_min()) return 0.0;
  if (y >= gamma_max()) return 1.0;
  double lo = 0.0;
  double hi = 1.0;
  for (int step = 0; step < kBisectionSteps; ++step) {
    const double mid = 0.5 * (lo + hi);
    if ((*this)(mid) < y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

MixedSymmetricStrategy PStar(const GammaProfile& gamma, double c,
                             double alpha) {
  CheckAlpha(alpha);
  if (!(c >= 0.0)) throw ConfigError("c must be >= 0");
  if (alpha == 0.0) {
    if (c > 0.0) return {1.0, false};
    return {0.0, true};
  }
  const double y = c / alpha;
  if (gamma.flat() && y == gamma.gamma_max()) return {0.0, true};
  if (y > gamma.gamma_max()) return {1.0, false};
  if (y < gamma.gamma_min()) return {0.0, false};
  return {gamma.Inverse(y), false};
}

double SymmetricNeResidual(const GammaProfile& gamma, double p, double c,
                           double alpha) {
  const double d = c - alpha * gamma(p);
  const double stay = std::max(0.0, (1.0 - p) * d);
  const double move = std::max(0.0, -p * d);
  return stay * stay + move * move;
}

bool TwoPlayerNe::AllVerified() const {
  return std::all_of(points.begin(), points.end(),
                     [](const StrategyPair& s) { return s.verified; });
}

double TwoPlayerGain(const GammaProfile& gamma, double c1, double c2,
                     double alpha, double p, double q) {
  // Relative to full privacy, user 1 earns (1 - p)(alpha gamma(q) - c1).
  const double d1 = alpha * gamma(q) - c1;
  const double d2 = alpha * gamma(p) - c2;
  return std::max({0.0, (1.0 - p) * -d1, p * d1, (1.0 - q) * -d2, q * d2});
}

namespace {

std::vector<CostBand> Bands(double c, double alpha, const GammaProfile& g) {
  const double tol = 1e-12 * std::max(1.0, c);
  const double above_max = alpha * g.gamma_max() - c;
  const double above_min = alpha * g.gamma_min() - c;
  if (above_max < -tol) return {CostBand::kPrivate};
  if (above_min > tol) return {CostBand::kEngaged};
  std::vector<CostBand> out;
  if (std::abs(above_max) <= tol) out.push_back(CostBand::kPrivate);
  out.push_back(CostBand::kInterior);
  if (std::abs(above_min) <= tol) out.push_back(CostBand::kEngaged);
  return out;
}

double Threshold(double c, double alpha, const GammaProfile& g) {
  if (alpha > 0.0) return g.Inverse(c / alpha);
  return c > 0.0 ? 1.0 : 0.0;
}

}  // namespace

TwoPlayerNe AsymTwoPlayerNe(double c1, double c2, double alpha,
                            const GammaProfile& gamma, double tolerance) {
  CheckAlpha(alpha);
  if (!(c1 >= 0.0 && c2 >= 0.0)) throw ConfigError("costs must be >= 0");
  if (gamma.num_users() != 2) {
    throw DimensionError("the two-player table needs a two-user gamma");
  }
  TwoPlayerNe out;
  out.bands1 = Bands(c1, alpha, gamma);
  out.bands2 = Bands(c2, alpha, gamma);
  auto add = [&out](double p, double q) {
    StrategyPair s{p, q};
    if (std::find(out.points.begin(), out.points.end(), s) == out.points.end()) {
      out.points.push_back(s);
    }
  };
  using B = CostBand;
  for (B b1 : out.bands1) {
    for (B b2 : out.bands2) {
      if (b1 == B::kPrivate && b2 == B::kPrivate) {
        add(1.0, 1.0);
      } else if (b1 == B::kEngaged && b2 == B::kEngaged) {
        add(0.0, 0.0);
      } else if (b1 == B::kInterior && b2 == B::kInterior) {
        add(1.0, 0.0);
        add(0.0, 1.0);
        add(Threshold(c2, alpha, gamma), Threshold(c1, alpha, gamma));
      } else if (b1 == B::kPrivate || b2 == B::kEngaged) {
        add(1.0, 0.0);
      } else {
        add(0.0, 1.0);
      }
    }
  }
  for (StrategyPair& s : out.points) {
    s.certificate = TwoPlayerGain(gamma, c1, c2, alpha, s.p, s.q);
    s.verified = s.certificate <= tolerance;
  }
  std::sort(out.points.begin(), out.points.end(),
            [](const StrategyPair& a, const StrategyPair& b) {
              return a.p != b.p ? a.p < b.p : a.q < b.q;
            });
  return out;
}

}  // namespace fairpriv
