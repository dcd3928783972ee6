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

#include "fairpriv/coalition.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "fairpriv/error.h"

namespace fairpriv {

CoalitionUtility::CoalitionUtility(PrivacySpace space, std::size_t num_users,
                                   Evaluator evaluator)
    : space_(std::move(space)),
      num_users_(num_users),
      evaluator_(std::make_shared<const Evaluator>(std::move(evaluator))) {
  if (num_users_ == 0) throw ConfigError("coalition utility needs N >= 1");
  if (num_users_ > 62) throw ConfigError("at most 62 users are supported");
  if (!*evaluator_) throw ConfigError("coalition utility without evaluator");
}

CoalitionUtility CoalitionUtility::Tabulated(PrivacySpace space,
                                             std::size_t num_users,
                                             std::vector<double> table) {
  const double cells = std::pow(static_cast<double>(space.size()),
                                static_cast<double>(num_users));
  if (cells > 1 << 24) {
    throw ConfigError("tabulated utility too large; use an evaluator");
  }
  if (static_cast<double>(table.size()) != cells) {
    std::ostringstream msg;
    msg << "utility table has " << table.size() << " entries, expected "
        << static_cast<std::size_t>(cells);
    throw DimensionError(msg.str());
  }
  for (double v : table) {
    if (!std::isfinite(v)) throw ConfigError("utility table entry not finite");
  }
  const std::size_t radix = space.size();
  auto shared = std::make_shared<const std::vector<double>>(std::move(table));
  return CoalitionUtility(
      std::move(space), num_users,
      [shared, radix](const PrivacyVector& rho) {
        return (*shared)[EncodeProfile(rho, radix)];
      });
}

CoalitionUtility CoalitionUtility::WithSymmetryGroups(
    std::vector<int> group_of_user) const {
  if (group_of_user.size() != num_users_) {
    throw DimensionError("symmetry group list must have one entry per user");
  }
  std::map<int, int> relabel;
  for (int& g : group_of_user) {
    auto [it, inserted] =
        relabel.emplace(g, static_cast<int>(relabel.size()));
    g = it->second;
  }
  CoalitionUtility out = *this;
  out.groups_ = std::move(group_of_user);
  out.num_groups_ = relabel.size();
  return out;
}

double CoalitionUtility::operator()(const PrivacyVector& rho) const {
  CheckProfile(space_, num_users_, rho);
  return Evaluate(rho);
}

double CoalitionUtility::WithPlatform(bool platform_joins,
                                      const PrivacyVector& rho) const {
  return platform_joins ? (*this)(rho) : 0.0;
}

PrivacyVector CoalitionUtility::Canonical(const PrivacyVector& rho) const {
  if (groups_.empty()) return rho;
  std::vector<std::vector<Level>> by_group(num_groups_);
  for (std::size_t i = 0; i < num_users_; ++i) {
    by_group[groups_[i]].push_back(rho[i]);
  }
  for (auto& levels : by_group) std::sort(levels.begin(), levels.end());
  std::vector<std::size_t> next(num_groups_, 0);
  std::vector<Level> out(num_users_);
  for (std::size_t i = 0; i < num_users_; ++i) {
    const int g = groups_[i];
    out[i] = by_group[g][next[g]++];
  }
  return PrivacyVector(std::move(out));
}

CoalitionUtility operator+(const CoalitionUtility& a,
                           const CoalitionUtility& b) {
  if (!(a.space_ == b.space_) || a.num_users_ != b.num_users_) {
    throw DimensionError("cannot add utilities over different games");
  }
  auto ea = a.evaluator_;
  auto eb = b.evaluator_;
  CoalitionUtility sum(a.space_, a.num_users_,
                       [ea, eb](const PrivacyVector& rho) {
                         return (*ea)(rho) + (*eb)(rho);
                       });
  if (a.groups_ == b.groups_ && a.has_symmetry_groups()) {
    sum = sum.WithSymmetryGroups(a.groups_);
  }
  return sum;
}

UtilityCache::UtilityCache(const CoalitionUtility& utility)
    : utility_(utility) {
  const double codes =
      std::pow(static_cast<double>(utility.space().size()),
               static_cast<double>(utility.num_users()));
  if (codes > 1.8e19) {
    throw ConfigError("profile space too large for the utility cache");
  }
}

double UtilityCache::operator()(const PrivacyVector& rho) {
  const PrivacyVector canonical = utility_.Canonical(rho);
  const std::uint64_t key = EncodeProfile(canonical, utility_.space().size());
  auto it = values_.find(key);
  if (it != values_.end()) return it->second;
  const double value = utility_.Evaluate(canonical);
  values_.emplace(key, value);
  return value;
}

}  // namespace fairpriv
