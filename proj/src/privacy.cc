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

#include "fairpriv/privacy.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fairpriv/error.h"

namespace fairpriv {

PrivacySpace::PrivacySpace(std::vector<double> levels)
    : levels_(std::move(levels)) {
  if (levels_.size() < 2) {
    throw ConfigError("privacy space needs at least two levels");
  }
  if (levels_.size() > std::numeric_limits<Level>::max()) {
    throw ConfigError("privacy space has too many levels");
  }
  if (levels_.front() != 0.0) {
    throw ConfigError("privacy space must start at the zero level");
  }
  for (std::size_t i = 1; i < levels_.size(); ++i) {
    if (std::isnan(levels_[i]) || !(levels_[i] > levels_[i - 1])) {
      throw ConfigError("privacy levels must be strictly increasing");
    }
  }
}

PrivacySpace PrivacySpace::Binary(double top) { return PrivacySpace({0.0, top}); }

PrivacySpace PrivacySpace::ThreeLevel() { return PrivacySpace({0.0, 1.0, 2.0}); }

std::optional<Level> PrivacySpace::IndexOf(double value) const {
  auto it = std::find(levels_.begin(), levels_.end(), value);
  if (it == levels_.end()) return std::nullopt;
  return static_cast<Level>(it - levels_.begin());
}

PrivacyVector PrivacyVector::Zeros(std::size_t num_users) {
  return PrivacyVector(std::vector<Level>(num_users, 0));
}

PrivacyVector PrivacyVector::Filled(std::size_t num_users, Level level) {
  return PrivacyVector(std::vector<Level>(num_users, level));
}

PrivacyVector PrivacyVector::Restricted(std::uint64_t mask) const {
  PrivacyVector out = *this;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!((mask >> i) & 1u)) out.entries_[i] = 0;
  }
  return out;
}

std::uint64_t PrivacyVector::SupportMask() const {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i] != 0) mask |= std::uint64_t{1} << i;
  }
  return mask;
}

bool PrivacyVector::IsZero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](Level l) { return l == 0; });
}

PrivacyVector PrivacyVector::With(std::size_t user, Level level) const {
  PrivacyVector out = *this;
  out.entries_.at(user) = level;
  return out;
}

void CheckProfile(const PrivacySpace& space, std::size_t num_users,
                  const PrivacyVector& rho) {
  if (rho.size() != num_users) {
    std::ostringstream msg;
    msg << "privacy vector has " << rho.size() << " entries, expected "
        << num_users;
    throw DimensionError(msg.str());
  }
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (rho[i] >= space.size()) {
      std::ostringstream msg;
      msg << "rho[" << i << "] = " << int{rho[i]}
          << " is not a level of the privacy space";
      throw ConfigError(msg.str());
    }
  }
}

std::string ToString(const PrivacyVector& rho) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (i) out << ',';
    out << int{rho[i]};
  }
  out << ')';
  return out.str();
}

std::uint64_t EncodeProfile(const PrivacyVector& rho, std::size_t radix) {
  std::uint64_t code = 0;
  for (Level l : rho) code = code * radix + l;
  return code;
}

PrivacyVector DecodeProfile(std::uint64_t code, std::size_t num_users,
                            std::size_t radix) {
  std::vector<Level> entries(num_users);
  for (std::size_t i = num_users; i-- > 0;) {
    entries[i] = static_cast<Level>(code % radix);
    code /= radix;
  }
  return PrivacyVector(std::move(entries));
}

}  // namespace fairpriv
