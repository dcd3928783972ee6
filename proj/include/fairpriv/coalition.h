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

#ifndef FAIRPRIV_COALITION_H_
#define FAIRPRIV_COALITION_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <unordered_map>
#include <vector>

#include "fairpriv/privacy.h"

namespace fairpriv {

// Platform utility U(rho) as a function of every user's privacy level.
//
// The evaluator must be deterministic and safe to call concurrently. Users
// outside a coalition are represented by the zero level, so U(rho_S) is just
// the evaluator applied to rho.Restricted(S).
//
// Optional symmetry groups partition the users such that permuting levels
// among members of one group leaves U unchanged. Grouped valuation and the
// equilibrium tree search exploit them.
class CoalitionUtility {
 public:
  using Evaluator = std::function<double(const PrivacyVector&)>;

  CoalitionUtility(PrivacySpace space, std::size_t num_users,
                   Evaluator evaluator);

  // Dense table over space^N, indexed by EncodeProfile (user 0 is the most
  // significant digit). For two users this is the row-major matrix
  // U[level of user 1][level of user 2].
  static CoalitionUtility Tabulated(PrivacySpace space, std::size_t num_users,
                                    std::vector<double> table);

  // Returns a copy with `group_of_user[i]` as the symmetry group of user i.
  // Group ids are relabeled to 0..G-1 in order of first appearance.
  CoalitionUtility WithSymmetryGroups(std::vector<int> group_of_user) const;

  // Validated evaluation.
  double operator()(const PrivacyVector& rho) const;
  // Unchecked evaluation for inner loops.
  double Evaluate(const PrivacyVector& rho) const { return (*evaluator_)(rho); }
  // U(z, rho): zero when the platform stays out.
  double WithPlatform(bool platform_joins, const PrivacyVector& rho) const;

  std::size_t num_users() const { return num_users_; }
  const PrivacySpace& space() const { return space_; }
  bool has_symmetry_groups() const { return !groups_.empty(); }
  // Group id per user; empty when no groups are declared.
  const std::vector<int>& symmetry_groups() const { return groups_; }
  std::size_t num_groups() const { return num_groups_; }

  // Levels sorted within each symmetry group (identity without groups).
  PrivacyVector Canonical(const PrivacyVector& rho) const;

  // Pointwise sum, used to exercise additivity.
  friend CoalitionUtility operator+(const CoalitionUtility& a,
                                    const CoalitionUtility& b);

 private:
  PrivacySpace space_;
  std::size_t num_users_;
  std::shared_ptr<const Evaluator> evaluator_;
  std::vector<int> groups_;
  std::size_t num_groups_ = 0;
};

// Memoizes U on the canonical form of its argument. Not thread-safe; use one
// per task.
class UtilityCache {
 public:
  explicit UtilityCache(const CoalitionUtility& utility);

  double operator()(const PrivacyVector& rho);
  std::size_t size() const { return values_.size(); }
  const CoalitionUtility& utility() const { return utility_; }

 private:
  const CoalitionUtility& utility_;
  std::unordered_map<std::uint64_t, double> values_;
};

}  // namespace fairpriv

#endif  // FAIRPRIV_COALITION_H_
