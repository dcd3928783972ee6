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

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <utility>

#include "fairpriv/error.h"

namespace fairpriv {
namespace {

// Hard ceiling for subset tables even with the cap overridden.
constexpr std::size_t kMaxSubsetPlayers = 30;

enum class Mode { kUsersOnly, kWithPlatform };

void CheckAlpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    std::ostringstream msg;
    msg << "alpha must lie in [0, 1], got " << alpha;
    throw ConfigError(msg.str());
  }
}

std::vector<std::size_t> ActiveUsers(const PrivacyVector& rho) {
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (rho[i] != 0) active.push_back(i);
  }
  return active;
}

// Weight of a coalition of `s` other active players in the marginal
// contribution of one player, for a game with m active users. Users at the
// zero level are null players and are dropped from the game, which leaves
// every other value unchanged.
std::vector<double> MarginalWeights(std::size_t m, Mode mode) {
  std::vector<double> w(m == 0 ? 1 : m);
  const int mi = static_cast<int>(m);
  for (int s = 0; s < mi; ++s) {
    w[s] = mode == Mode::kUsersOnly
               ? 1.0 / (mi * kernels::Choose(mi - 1, s))
               : 1.0 / ((mi + 1) * kernels::Choose(mi, s + 1));
  }
  return w;
}

std::vector<double> PlatformWeights(std::size_t m) {
  std::vector<double> w(m + 1);
  const int mi = static_cast<int>(m);
  for (int s = 0; s <= mi; ++s) {
    w[s] = 1.0 / ((mi + 1) * kernels::Choose(mi, s));
  }
  return w;
}

bool UseGrouped(const CoalitionUtility& u, const ValuationOptions& options) {
  if (u.num_users() <= options.exact_cap || options.override_cap) return false;
  if (u.has_symmetry_groups()) return true;
  std::ostringstream msg;
  msg << "N = " << u.num_users()
      << " is too large for exact mode (cap " << options.exact_cap
      << "); declare symmetry groups or override the cap";
  throw TooLargeError(msg.str());
}

Allocation ExactAllocation(const CoalitionUtility& u, const PrivacyVector& rho,
                           Mode mode, double alpha,
                           const ValuationOptions& options) {
  const std::vector<std::size_t> active = ActiveUsers(rho);
  if (active.size() > kMaxSubsetPlayers) {
    throw TooLargeError("too many participating users for exact mode");
  }
  const std::size_t m = active.size();
  const std::vector<double> table =
      kernels::SubsetUtilities(u, rho, active, options.exec);
  const std::vector<double> weight = MarginalWeights(m, mode);
  const std::vector<double> sums =
      kernels::MarginalSums(table, m, weight, options.exec);

  Allocation out;
  out.user_values.assign(rho.size(), 0.0);
  const double scale = mode == Mode::kUsersOnly ? alpha : 1.0;
  for (std::size_t b = 0; b < m; ++b) {
    out.user_values[active[b]] = scale * sums[b];
  }
  out.alpha = scale;
  out.total_utility = table.back();
  out.baseline_utility = table.front();
  if (mode == Mode::kWithPlatform) {
    out.platform_value = kernels::WeightedTotal(table, PlatformWeights(m));
  }
  return out;
}

// Exchangeable classes of active users: same symmetry group, same level.
struct ClassLayout {
  std::vector<std::vector<std::size_t>> members;
  std::vector<Level> level;
  std::vector<std::size_t> stride;
  std::size_t cells = 1;
};

ClassLayout BuildClasses(const CoalitionUtility& u, const PrivacyVector& rho) {
  std::map<std::pair<int, Level>, std::size_t> index;
  ClassLayout layout;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (rho[i] == 0) continue;
    const auto key = std::make_pair(u.symmetry_groups()[i], rho[i]);
    auto [it, inserted] = index.emplace(key, layout.members.size());
    if (inserted) {
      layout.members.emplace_back();
      layout.level.push_back(rho[i]);
    }
    layout.members[it->second].push_back(i);
  }
  const double cells = std::accumulate(
      layout.members.begin(), layout.members.end(), 1.0,
      [](double acc, const auto& m) { return acc * (m.size() + 1.0); });
  if (cells > 5e7) throw TooLargeError("too many class configurations");
  for (const auto& m : layout.members) {
    layout.stride.push_back(layout.cells);
    layout.cells *= m.size() + 1;
  }
  return layout;
}

std::vector<std::size_t> DecodeCounts(const ClassLayout& layout,
                                      std::size_t cell) {
  std::vector<std::size_t> k(layout.members.size());
  for (std::size_t c = 0; c < k.size(); ++c) {
    k[c] = cell % (layout.members[c].size() + 1);
    cell /= layout.members[c].size() + 1;
  }
  return k;
}

Allocation GroupedAllocation(const CoalitionUtility& u,
                             const PrivacyVector& rho, Mode mode, double alpha,
                             const ValuationOptions& options) {
  if (!u.has_symmetry_groups()) {
    throw ConfigError("grouped valuation requires symmetry groups");
  }
  CheckProfile(u.space(), u.num_users(), rho);
  if (options.check_symmetry) CheckSymmetryGroups(u, options.seed);

  const ClassLayout layout = BuildClasses(u, rho);
  const std::size_t classes = layout.members.size();
  std::size_t m = 0;
  for (const auto& members : layout.members) m += members.size();

  // Utility of one representative coalition per count vector.
  std::vector<double> table(layout.cells);
  const std::int64_t cells = static_cast<std::int64_t>(layout.cells);
  const bool parallel = options.exec == kernels::Exec::kParallel;
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
  for (std::int64_t cell = 0; cell < cells; ++cell) {
    const std::vector<std::size_t> k = DecodeCounts(layout, cell);
    PrivacyVector coalition = PrivacyVector::Zeros(rho.size());
    for (std::size_t c = 0; c < classes; ++c) {
      for (std::size_t j = 0; j < k[c]; ++j) {
        coalition[layout.members[c][j]] = layout.level[c];
      }
    }
    table[cell] = u.Evaluate(coalition);
  }

  const std::vector<double> weight = MarginalWeights(m, mode);
  std::vector<double> class_value(classes, 0.0);
  double platform = 0.0;
  const std::vector<double> platform_weight =
      mode == Mode::kWithPlatform ? PlatformWeights(m) : std::vector<double>{};
  for (std::size_t cell = 0; cell < layout.cells; ++cell) {
    const std::vector<std::size_t> k = DecodeCounts(layout, cell);
    std::size_t size = 0;
    double multiplicity = 1.0;
    for (std::size_t c = 0; c < classes; ++c) {
      size += k[c];
      multiplicity *= kernels::Choose(static_cast<int>(layout.members[c].size()),
                                      static_cast<int>(k[c]));
    }
    if (mode == Mode::kWithPlatform) {
      platform += multiplicity * platform_weight[size] * table[cell];
    }
    for (std::size_t c = 0; c < classes; ++c) {
      const int mc = static_cast<int>(layout.members[c].size());
      const int kc = static_cast<int>(k[c]);
      if (kc >= mc) continue;
      const double others = multiplicity / kernels::Choose(mc, kc) *
                            kernels::Choose(mc - 1, kc);
      class_value[c] += others * weight[size] *
                        (table[cell + layout.stride[c]] - table[cell]);
    }
  }

  Allocation out;
  out.user_values.assign(rho.size(), 0.0);
  const double scale = mode == Mode::kUsersOnly ? alpha : 1.0;
  for (std::size_t c = 0; c < classes; ++c) {
    for (std::size_t i : layout.members[c]) {
      out.user_values[i] = scale * class_value[c];
    }
  }
  out.alpha = scale;
  out.total_utility = table.back();
  out.baseline_utility = table.front();
  if (mode == Mode::kWithPlatform) out.platform_value = platform;
  return out;
}

}  // namespace

double Allocation::UserSum() const {
  return std::accumulate(user_values.begin(), user_values.end(), 0.0);
}

double Allocation::EfficiencyGap() const {
  if (platform_value) return *platform_value + UserSum() - total_utility;
  return UserSum() - alpha * (total_utility - baseline_utility);
}

Allocation ShapleyWithPlatform(const CoalitionUtility& u,
                               const PrivacyVector& rho, bool platform_joins,
                               const ValuationOptions& options) {
  CheckProfile(u.space(), u.num_users(), rho);
  if (!platform_joins) {
    Allocation out;
    out.user_values.assign(rho.size(), 0.0);
    out.platform_value = 0.0;
    return out;
  }
  if (UseGrouped(u, options)) return GroupedShapleyWithPlatform(u, rho, options);
  return ExactAllocation(u, rho, Mode::kWithPlatform, 1.0, options);
}

Allocation ShapleyUsersOnly(const CoalitionUtility& u, const PrivacyVector& rho,
                            double alpha, const ValuationOptions& options) {
  CheckAlpha(alpha);
  CheckProfile(u.space(), u.num_users(), rho);
  if (UseGrouped(u, options)) return GroupedShapley(u, rho, alpha, options);
  return ExactAllocation(u, rho, Mode::kUsersOnly, alpha, options);
}

Allocation GroupedShapley(const CoalitionUtility& u, const PrivacyVector& rho,
                          double alpha, const ValuationOptions& options) {
  CheckAlpha(alpha);
  return GroupedAllocation(u, rho, Mode::kUsersOnly, alpha, options);
}

Allocation GroupedShapleyWithPlatform(const CoalitionUtility& u,
                                      const PrivacyVector& rho,
                                      const ValuationOptions& options) {
  return GroupedAllocation(u, rho, Mode::kWithPlatform, 1.0, options);
}

double UserValue(const CoalitionUtility& u, const PrivacyVector& rho,
                 std::size_t user, const ValuationOptions& options) {
  CheckProfile(u.space(), u.num_users(), rho);
  if (rho[user] == 0) return 0.0;
  if (UseGrouped(u, options)) {
    return GroupedShapley(u, rho, 1.0, options).user_values[user];
  }
  const std::vector<std::size_t> active = ActiveUsers(rho);
  if (active.size() > kMaxSubsetPlayers) {
    throw TooLargeError("too many participating users for exact mode");
  }
  const std::size_t player =
      std::find(active.begin(), active.end(), user) - active.begin();
  const std::vector<double> table =
      kernels::SubsetUtilities(u, rho, active, options.exec);
  return kernels::MarginalSum(table, active.size(), player,
                              MarginalWeights(active.size(), Mode::kUsersOnly));
}

void CheckSymmetryGroups(const CoalitionUtility& u, std::uint64_t seed,
                         int trials_per_group) {
  if (!u.has_symmetry_groups()) return;
  const auto& groups = u.symmetry_groups();
  std::vector<std::vector<std::size_t>> members(u.num_groups());
  for (std::size_t i = 0; i < groups.size(); ++i) {
    members[groups[i]].push_back(i);
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> level(0,
                                           static_cast<int>(u.space().size()) - 1);
  for (std::size_t g = 0; g < members.size(); ++g) {
    if (members[g].size() < 2) continue;
    const std::size_t size = members[g].size();
    std::uniform_int_distribution<std::size_t> pick(0, size - 1);
    std::uniform_int_distribution<std::size_t> offset(1, size - 1);
    for (int t = 0; t < trials_per_group; ++t) {
      PrivacyVector rho = PrivacyVector::Zeros(u.num_users());
      for (std::size_t i = 0; i < rho.size(); ++i) {
        rho[i] = static_cast<Level>(level(rng));
      }
      const std::size_t ia = pick(rng);
      const std::size_t a = members[g][ia];
      const std::size_t b = members[g][(ia + offset(rng)) % size];
      if (rho[a] == rho[b]) {
        rho[a] = 0;
        rho[b] = u.space().top();
      }
      PrivacyVector swapped = rho;
      std::swap(swapped[a], swapped[b]);
      const double x = u.Evaluate(rho);
      const double y = u.Evaluate(swapped);
      if (std::abs(x - y) > 1e-12 * (1.0 + std::abs(x))) {
        std::ostringstream msg;
        msg << "symmetry group " << g << " violated: swapping users " << a
            << " and " << b << " changes U from " << x << " to " << y;
        throw SymmetryError(msg.str());
      }
    }
  }
}

}  // namespace fairpriv
