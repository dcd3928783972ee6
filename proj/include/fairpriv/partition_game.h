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

#ifndef FAIRPRIV_PARTITION_GAME_H_
#define FAIRPRIV_PARTITION_GAME_H_

// Pure equilibria of games whose users fall into symmetry groups.
//
// A partition records, for each group, how many members sit at each level.
// Fair values depend on the partition only, so they are computed once per
// partition; a user's deviation lands in a neighboring partition. For a fixed
// partition the groups decouple, and members are assigned to levels by a
// depth-first search in order of increasing sensitivity.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fairpriv/coalition.h"
#include "fairpriv/equilibrium.h"
#include "fairpriv/profile.h"

namespace fairpriv {

class PartitionGame {
 public:
  // Users without symmetry groups each form a group of their own.
  PartitionGame(const CoalitionUtility& u, std::vector<UserProfile> users,
                const ValuationOptions& options = {});

  std::size_t num_partitions() const { return num_partitions_; }
  std::size_t num_users() const { return users_.size(); }
  // U at any profile of the partition.
  double Utility(std::size_t partition) const { return utility_[partition]; }
  // Partition index of a concrete profile.
  std::size_t PartitionOf(const PrivacyVector& rho) const;
  // Fair value (alpha = 1) of `user` at `rho`.
  double Value(const PrivacyVector& rho, std::size_t user) const;

  // All pure NEs, sorted.
  std::vector<PrivacyVector> Equilibria(double alpha,
                                        const NeOptions& options = {}) const;
  // NEs inside one partition, sorted; with `first_only` stops at the first.
  std::vector<PrivacyVector> EquilibriaIn(std::size_t partition, double alpha,
                                          const NeOptions& options,
                                          bool first_only = false) const;
  bool HasEquilibrium(std::size_t partition, double alpha,
                      const NeOptions& options = {}) const;

  // Max unilateral gain from the stored fair values.
  double Certificate(const PrivacyVector& rho, double alpha) const;

 private:
  struct GroupLayout {
    std::vector<std::size_t> members;  // sorted by sensitivity
    // Valid count tuples (users at levels 1..L-1), in enumeration order.
    std::vector<std::vector<int>> tuples;
    // Dense mixed-radix code of a tuple -> position in `tuples`.
    std::vector<int> lookup;
  };

  std::size_t NumClasses() const { return groups_.size() * (levels_ - 1); }
  std::vector<int> Counts(std::size_t partition) const;
  std::size_t Index(const std::vector<int>& counts) const;
  // Value of group g's members at `level` in the partition with `counts`.
  double ClassValue(const std::vector<int>& counts, std::size_t g,
                    Level level) const;
  // Levels at which `user` (in group g) has no profitable deviation.
  std::vector<bool> Happy(const std::vector<int>& counts, std::size_t g,
                          std::size_t user, double alpha,
                          const NeOptions& options) const;
  void ComputeUtilities(const CoalitionUtility& u, bool parallel);
  void ComputeValues(bool parallel);

  std::vector<UserProfile> users_;
  std::size_t levels_ = 0;
  std::vector<GroupLayout> groups_;
  std::vector<std::size_t> group_of_user_;
  std::vector<std::size_t> stride_;
  std::size_t num_partitions_ = 1;
  std::vector<double> utility_;
  // values_[partition * NumClasses() + g * (L-1) + level - 1]
  std::vector<double> values_;
};

// Algorithm-style search for every pure NE at `alpha`, with certificates
// computed from the partition values.
NeResult FindPureNe(const CoalitionUtility& u,
                    std::span<const UserProfile> users, double alpha,
                    const NeOptions& options = {});

}  // namespace fairpriv

#endif  // FAIRPRIV_PARTITION_GAME_H_
