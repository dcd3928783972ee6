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

#ifndef FAIRPRIV_PRIVACY_H_
#define FAIRPRIV_PRIVACY_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace fairpriv {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Index of a privacy level inside a PrivacySpace. Index 0 is always the
// zero level ("no data shared").
using Level = std::uint8_t;

// Ordered set of admissible privacy levels. Values are non-negative and may
// include +infinity as the top level.
class PrivacySpace {
 public:
  // Throws ConfigError unless `levels` is strictly increasing, starts at 0 and
  // has at least two entries.
  explicit PrivacySpace(std::vector<double> levels);

  // {0, top}.
  static PrivacySpace Binary(double top);
  // {0, 1, 2}: private, federated, direct.
  static PrivacySpace ThreeLevel();

  std::size_t size() const { return levels_.size(); }
  double value(Level level) const { return levels_.at(level); }
  Level top() const { return static_cast<Level>(levels_.size() - 1); }
  const std::vector<double>& levels() const { return levels_; }
  std::optional<Level> IndexOf(double value) const;

  friend bool operator==(const PrivacySpace&, const PrivacySpace&) = default;

 private:
  std::vector<double> levels_;
};

// Per-user privacy levels, stored as indices into a PrivacySpace.
class PrivacyVector {
 public:
  PrivacyVector() = default;
  explicit PrivacyVector(std::vector<Level> entries)
      : entries_(std::move(entries)) {}
  PrivacyVector(std::initializer_list<Level> entries) : entries_(entries) {}

  // All users at the zero level.
  static PrivacyVector Zeros(std::size_t num_users);
  // All users at `level`.
  static PrivacyVector Filled(std::size_t num_users, Level level);

  std::size_t size() const { return entries_.size(); }
  Level operator[](std::size_t i) const { return entries_[i]; }
  Level& operator[](std::size_t i) { return entries_[i]; }
  const std::vector<Level>& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  // Users outside `mask` (bit i set means user i is kept) are set to level 0.
  PrivacyVector Restricted(std::uint64_t mask) const;
  // Bit i set iff user i is above the zero level.
  std::uint64_t SupportMask() const;
  bool IsZero() const;
  // Copy with entry `user` replaced by `level`.
  PrivacyVector With(std::size_t user, Level level) const;

  friend bool operator==(const PrivacyVector&, const PrivacyVector&) = default;
  friend auto operator<=>(const PrivacyVector&, const PrivacyVector&) = default;

 private:
  std::vector<Level> entries_;
};

// Throws DimensionError / ConfigError if `rho` does not fit `num_users` users
// drawn from `space`.
void CheckProfile(const PrivacySpace& space, std::size_t num_users,
                  const PrivacyVector& rho);

// "(0,2,1)".
std::string ToString(const PrivacyVector& rho);

// Mixed-radix index of `rho` with user 0 as the most significant digit.
std::uint64_t EncodeProfile(const PrivacyVector& rho, std::size_t radix);
PrivacyVector DecodeProfile(std::uint64_t code, std::size_t num_users,
                            std::size_t radix);

}  // namespace fairpriv

#endif  // FAIRPRIV_PRIVACY_H_
