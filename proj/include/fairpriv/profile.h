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

#ifndef FAIRPRIV_PROFILE_H_
#define FAIRPRIV_PROFILE_H_

#include <cstddef>
#include <span>
#include <vector>

#include "fairpriv/privacy.h"

namespace fairpriv {

// One user: sample count, importance weight and privacy sensitivity.
struct UserProfile {
  int n = 1;
  double a = 1.0;
  // Cost of each privacy level, indexed by Level; cost[0] must be 0.
  std::vector<double> cost;

  double Cost(Level level) const { return cost.at(level); }
};

// Throws ConfigError naming the offending user if a profile is malformed for
// a space with `num_levels` levels. `need_costs` = false accepts empty cost
// tables (valuation-only use).
void ValidateProfiles(std::span<const UserProfile> users,
                      std::size_t num_levels, bool need_costs = true);

// Same sensitivity c at every nonzero level of a binary space.
UserProfile BinaryCostProfile(double c);

}  // namespace fairpriv

#endif  // FAIRPRIV_PROFILE_H_
