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

#include "fairpriv/profile.h"

#include <cmath>
#include <sstream>

#include "fairpriv/error.h"

namespace fairpriv {

void ValidateProfiles(std::span<const UserProfile> users,
                      std::size_t num_levels, bool need_costs) {
  if (users.empty()) throw ConfigError("users: at least one user required");
  for (std::size_t i = 0; i < users.size(); ++i) {
    const UserProfile& u = users[i];
    std::ostringstream where;
    where << "users[" << i << "]";
    if (u.n < 1) throw ConfigError(where.str() + ".n must be >= 1");
    if (!(u.a > 0.0) || !std::isfinite(u.a)) {
      throw ConfigError(where.str() + ".a must be positive");
    }
    if (u.cost.empty() && !need_costs) continue;
    if (u.cost.size() != num_levels) {
      std::ostringstream msg;
      msg << where.str() << ".c must list " << num_levels << " costs";
      throw ConfigError(msg.str());
    }
    if (u.cost[0] != 0.0) throw ConfigError(where.str() + ".c[0] must be 0");
    for (double c : u.cost) {
      if (!std::isfinite(c) || c < 0.0) {
        throw ConfigError(where.str() + ".c entries must be finite and >= 0");
      }
    }
  }
}

UserProfile BinaryCostProfile(double c) {
  UserProfile p;
  p.cost = {0.0, c};
  return p;
}

}  // namespace fairpriv
