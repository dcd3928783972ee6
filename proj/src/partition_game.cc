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

#include "fairpriv/partition_game.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>

#include "fairpriv/error.h"
#include "fairpriv/kernels.h"
#include "fairpriv/valuation.h"

namespace fairpriv {
namespace {

constexpr double kMaxPartitions = 2e7;
constexpr double kMaxLookup = 1e7;

// All tuples of `width` nonnegative counts with sum <= total.
void Compositions(int width, int total, std::vector<int>& prefix,
                  std::vector<std::vector<int>>& out) {
  if (static_cast<int>(prefix.size()) == width) {
    out.push_back(prefix);
    return;
  }
  for (int k = 0; k <= total; ++k) {
    prefix.push_back(k);
    Compositions(width, total - k, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

PartitionGame::PartitionGame(const CoalitionUtility& u,
                             std::vector<UserProfile> users,
                             const ValuationOptions& options)
    : users_(std::move(users)), levels_(u.space().size()) {
  if (users_.size() != u.num_users()) {
    std::ostringstream msg;
    msg << "utility has " << u.num_users() << " users but " << users_.size()
        << " profiles were given";
    throw DimensionError(msg.str());
  }
  ValidateProfiles(users_, levels_);
  if (u.has_symmetry_groups() && options.check_symmetry) {
    CheckSymmetryGroups(u, options.seed);
  }

  const std::size_t n = users_.size();
  group_of_user_.resize(n);
  std::size_t num_groups = 0;
  if (u.has_symmetry_groups()) {
    for (std::size_t i = 0; i < n; ++i) {
      group_of_user_[i] = static_cast<std::size_t>(u.symmetry_groups()[i]);
    }
    num_groups = u.num_groups();
  } else {
    std::iota(group_of_user_.begin(), group_of_user_.end(), std::size_t{0});
    num_groups = n;
  }
  groups_.resize(num_groups);
  for (std::size_t i = 0; i < n; ++i) {
    groups_[group_of_user_[i]].members.push_back(i);
  }

  const Level top = static_cast<Level>(levels_ - 1);
  const int width = static_cast<int>(levels_ - 1);
  double partitions = 1.0;
  for (GroupLayout& group : groups_) {
    std::stable_sort(group.members.begin(), group.members.end(),
                     [&](std::size_t a, std::size_t b) {
                       return users_[a].Cost(top) < users_[b].Cost(top);
                     });
    const int m = static_cast<int>(group.members.size());
    std::vector<int> prefix;
    Compositions(width, m, prefix, group.tuples);
    partitions *= static_cast<double>(group.tuples.size());
    const double cells = std::pow(m + 1.0, width);
    if (partitions > kMaxPartitions || cells > kMaxLookup) {
      throw TooLargeError("too many level-count partitions");
    }
    group.lookup.assign(static_cast<std::size_t>(cells), -1);
    for (std::size_t t = 0; t < group.tuples.size(); ++t) {
      std::size_t code = 0;
      for (int j = width - 1; j >= 0; --j) {
        code = code * (m + 1) + group.tuples[t][j];
      }
      group.lookup[code] = static_cast<int>(t);
    }
  }
  for (const GroupLayout& group : groups_) {
    stride_.push_back(num_partitions_);
    num_partitions_ *= group.tuples.size();
  }

  const bool parallel = options.exec == kernels::Exec::kParallel;
  ComputeUtilities(u, parallel);
  ComputeValues(parallel);
}

std::vector<int> PartitionGame::Counts(std::size_t partition) const {
  const std::size_t width = levels_ - 1;
  std::vector<int> counts(NumClasses());
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    const std::size_t t = partition % groups_[g].tuples.size();
    partition /= groups_[g].tuples.size();
    std::copy(groups_[g].tuples[t].begin(), groups_[g].tuples[t].end(),
              counts.begin() + g * width);
  }
  return counts;
}

std::size_t PartitionGame::Index(const std::vector<int>& counts) const {
  const std::size_t width = levels_ - 1;
  std::size_t index = 0;
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    const std::size_t radix = groups_[g].members.size() + 1;
    std::size_t code = 0;
    for (std::size_t j = width; j-- > 0;) {
      code = code * radix + counts[g * width + j];
    }
    index += stride_[g] * groups_[g].lookup[code];
  }
  return index;
}

std::size_t PartitionGame::PartitionOf(const PrivacyVector& rho) const {
  if (rho.size() != users_.size()) {
    throw DimensionError("profile length does not match the number of users");
  }
  std::vector<int> counts(NumClasses(), 0);
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (rho[i] >= levels_) throw ConfigError("privacy level out of range");
    if (rho[i] != 0) ++counts[group_of_user_[i] * (levels_ - 1) + rho[i] - 1];
  }
  return Index(counts);
}

void PartitionGame::ComputeUtilities(const CoalitionUtility& u, bool parallel) {
  utility_.assign(num_partitions_, 0.0);
  const std::int64_t total = static_cast<std::int64_t>(num_partitions_);
  const std::size_t width = levels_ - 1;
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
  for (std::int64_t p = 0; p < total; ++p) {
    const std::vector<int> counts = Counts(p);
    PrivacyVector rho = PrivacyVector::Zeros(users_.size());
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      std::size_t next = 0;
      for (std::size_t j = 0; j < width; ++j) {
        for (int k = 0; k < counts[g * width + j]; ++k) {
          rho[groups_[g].members[next++]] = static_cast<Level>(j + 1);
        }
      }
    }
    utility_[p] = u.Evaluate(rho);
  }
}

void PartitionGame::ComputeValues(bool parallel) {
  const std::size_t classes = NumClasses();
  values_.assign(num_partitions_ * classes, 0.0);
  const std::int64_t total = static_cast<std::int64_t>(num_partitions_);
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
  for (std::int64_t p = 0; p < total; ++p) {
    const std::vector<int> n = Counts(p);
    std::vector<std::size_t> active;
    int m = 0;
    for (std::size_t c = 0; c < classes; ++c) {
      if (n[c] > 0) active.push_back(c);
      m += n[c];
    }
    if (m == 0) continue;
    std::vector<double> weight(m);
    for (int s = 0; s < m; ++s) {
      weight[s] = 1.0 / (m * kernels::Choose(m - 1, s));
    }
    double* value = values_.data() + p * classes;
    // Odometer over sub-count vectors k <= n.
    std::vector<int> k(classes, 0);
    while (true) {
      int size = 0;
      double multiplicity = 1.0;
      for (std::size_t c : active) {
        size += k[c];
        multiplicity *= kernels::Choose(n[c], k[c]);
      }
      const double base = utility_[Index(k)];
      for (std::size_t c : active) {
        if (k[c] >= n[c]) continue;
        ++k[c];
        const double grown = utility_[Index(k)];
        --k[c];
        const double others = multiplicity / kernels::Choose(n[c], k[c]) *
                              kernels::Choose(n[c] - 1, k[c]);
        value[c] += others * weight[size] * (grown - base);
      }
      std::size_t a = 0;
      while (a < active.size() && k[active[a]] == n[active[a]]) {
        k[active[a]] = 0;
        ++a;
      }
      if (a == active.size()) break;
      ++k[active[a]];
    }
  }
}

double PartitionGame::ClassValue(const std::vector<int>& counts, std::size_t g,
                                 Level level) const {
  if (level == 0) return 0.0;
  return values_[Index(counts) * NumClasses() + g * (levels_ - 1) + level - 1];
}

double PartitionGame::Value(const PrivacyVector& rho, std::size_t user) const {
  const std::size_t p = PartitionOf(rho);
  return ClassValue(Counts(p), group_of_user_.at(user), rho[user]);
}

std::vector<bool> PartitionGame::Happy(const std::vector<int>& counts,
                                       std::size_t g, std::size_t user,
                                       double alpha,
                                       const NeOptions& options) const {
  const std::size_t width = levels_ - 1;
  const UserProfile& profile = users_[user];
  int nonzero = 0;
  for (std::size_t j = 0; j < width; ++j) nonzero += counts[g * width + j];
  const int zero = static_cast<int>(groups_[g].members.size()) - nonzero;

  std::vector<bool> happy(levels_, false);
  for (std::size_t l = 0; l < levels_; ++l) {
    const int here = l == 0 ? zero : counts[g * width + l - 1];
    if (here == 0) continue;
    const Level from = static_cast<Level>(l);
    const double stay =
        alpha * ClassValue(counts, g, from) - profile.Cost(from);
    bool ok = true;
    for (std::size_t t = 0; t < levels_ && ok; ++t) {
      if (t == l) continue;
      const Level to = static_cast<Level>(t);
      std::vector<int> moved = counts;
      if (l != 0) --moved[g * width + l - 1];
      if (t != 0) ++moved[g * width + t - 1];
      const double gain =
          alpha * ClassValue(moved, g, to) - profile.Cost(to) - stay;
      ok = options.strict ? gain < -options.tie_tolerance
                          : gain <= options.tie_tolerance;
    }
    happy[l] = ok;
  }
  return happy;
}

std::vector<PrivacyVector> PartitionGame::EquilibriaIn(
    std::size_t partition, double alpha, const NeOptions& options,
    bool first_only) const {
  const std::vector<int> counts = Counts(partition);
  const std::size_t width = levels_ - 1;

  // Per group: every assignment of levels to members (in member order).
  std::vector<std::vector<std::vector<Level>>> per_group(groups_.size());
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    const std::vector<std::size_t>& members = groups_[g].members;
    const std::size_t m = members.size();
    std::vector<int> remaining(levels_);
    int nonzero = 0;
    for (std::size_t j = 0; j < width; ++j) {
      remaining[j + 1] = counts[g * width + j];
      nonzero += remaining[j + 1];
    }
    remaining[0] = static_cast<int>(m) - nonzero;

    std::vector<std::vector<bool>> happy(m);
    for (std::size_t r = 0; r < m; ++r) {
      happy[r] = Happy(counts, g, members[r], alpha, options);
    }
    // happy_from[r][l]: members r.. that could take level l.
    std::vector<std::vector<int>> happy_from(m + 1,
                                             std::vector<int>(levels_, 0));
    for (std::size_t r = m; r-- > 0;) {
      for (std::size_t l = 0; l < levels_; ++l) {
        happy_from[r][l] = happy_from[r + 1][l] + (happy[r][l] ? 1 : 0);
      }
    }

    std::vector<Level> current(m);
    auto& found = per_group[g];
    auto search = [&](auto&& self, std::size_t r) -> void {
      if (first_only && !found.empty()) return;
      if (r == m) {
        found.push_back(current);
        return;
      }
      for (std::size_t l = 0; l < levels_; ++l) {
        if (remaining[l] > happy_from[r][l]) return;
      }
      for (std::size_t l = 0; l < levels_; ++l) {
        if (remaining[l] == 0 || !happy[r][l]) continue;
        --remaining[l];
        current[r] = static_cast<Level>(l);
        self(self, r + 1);
        ++remaining[l];
      }
    };
    search(search, 0);
    if (found.empty()) return {};
  }

  std::vector<PrivacyVector> out;
  PrivacyVector rho = PrivacyVector::Zeros(users_.size());
  auto expand = [&](auto&& self, std::size_t g) -> void {
    if (g == groups_.size()) {
      out.push_back(rho);
      return;
    }
    for (const std::vector<Level>& assignment : per_group[g]) {
      for (std::size_t r = 0; r < assignment.size(); ++r) {
        rho[groups_[g].members[r]] = assignment[r];
      }
      self(self, g + 1);
      if (first_only) return;
    }
  };
  expand(expand, 0);
  std::sort(out.begin(), out.end());
  return out;
}

bool PartitionGame::HasEquilibrium(std::size_t partition, double alpha,
                                   const NeOptions& options) const {
  return !EquilibriaIn(partition, alpha, options, /*first_only=*/true).empty();
}

std::vector<PrivacyVector> PartitionGame::Equilibria(
    double alpha, const NeOptions& options) const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw ConfigError("alpha must lie in [0, 1]");
  }
  std::vector<std::vector<PrivacyVector>> found(num_partitions_);
  const std::int64_t total = static_cast<std::int64_t>(num_partitions_);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t p = 0; p < total; ++p) {
    found[p] = EquilibriaIn(p, alpha, options);
  }
  std::vector<PrivacyVector> out;
  for (auto& list : found) {
    out.insert(out.end(), list.begin(), list.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

double PartitionGame::Certificate(const PrivacyVector& rho,
                                  double alpha) const {
  const std::vector<int> counts = Counts(PartitionOf(rho));
  const std::size_t width = levels_ - 1;
  double gain = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const std::size_t g = group_of_user_[i];
    const UserProfile& profile = users_[i];
    const double stay =
        alpha * ClassValue(counts, g, rho[i]) - profile.Cost(rho[i]);
    for (std::size_t t = 0; t < levels_; ++t) {
      if (t == rho[i]) continue;
      const Level to = static_cast<Level>(t);
      std::vector<int> moved = counts;
      if (rho[i] != 0) --moved[g * width + rho[i] - 1];
      if (t != 0) ++moved[g * width + t - 1];
      gain = std::max(gain, alpha * ClassValue(moved, g, to) -
                                profile.Cost(to) - stay);
    }
  }
  return gain;
}

NeResult FindPureNe(const CoalitionUtility& u,
                    std::span<const UserProfile> users, double alpha,
                    const NeOptions& options) {
  const PartitionGame game(u, std::vector<UserProfile>(users.begin(), users.end()),
                           options.valuation);
  NeResult result;
  for (PrivacyVector& rho : game.Equilibria(alpha, options)) {
    const double certificate = game.Certificate(rho, alpha);
    result.pure.push_back({std::move(rho), certificate});
  }
  return result;
}

}  // namespace fairpriv
