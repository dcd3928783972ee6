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

#include "fairpriv/kernels.h"

#include <bit>

#include <omp.h>

namespace fairpriv {
namespace kernels {
namespace {

PrivacyVector MaskProfile(const PrivacyVector& rho,
                          std::span<const std::size_t> active,
                          std::uint64_t mask) {
  PrivacyVector out = PrivacyVector::Zeros(rho.size());
  for (std::size_t b = 0; b < active.size(); ++b) {
    if ((mask >> b) & 1u) out[active[b]] = rho[active[b]];
  }
  return out;
}

double MarginalSumImpl(std::span<const double> table, std::size_t m,
                       std::size_t player, std::span<const double> weight) {
  const std::uint64_t bit = std::uint64_t{1} << player;
  const std::uint64_t count = std::uint64_t{1} << m;
  double sum = 0.0;
  for (std::uint64_t s = 0; s < count; ++s) {
    if (s & bit) continue;
    sum += weight[std::popcount(s)] * (table[s | bit] - table[s]);
  }
  return sum;
}

}  // namespace

double Choose(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  double result = 1.0;
  for (int i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
  }
  return result;
}

std::vector<double> SubsetUtilitiesSerial(
    const CoalitionUtility& u, const PrivacyVector& rho,
    std::span<const std::size_t> active) {
  const std::uint64_t count = std::uint64_t{1} << active.size();
  std::vector<double> table(count);
  for (std::uint64_t s = 0; s < count; ++s) {
    table[s] = u.Evaluate(MaskProfile(rho, active, s));
  }
  return table;
}

std::vector<double> SubsetUtilitiesParallel(
    const CoalitionUtility& u, const PrivacyVector& rho,
    std::span<const std::size_t> active) {
  const std::int64_t count = std::int64_t{1} << active.size();
  std::vector<double> table(count);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t s = 0; s < count; ++s) {
    table[s] = u.Evaluate(MaskProfile(rho, active, s));
  }
  return table;
}

std::vector<double> SubsetUtilities(const CoalitionUtility& u,
                                    const PrivacyVector& rho,
                                    std::span<const std::size_t> active,
                                    Exec exec) {
  return exec == Exec::kSerial ? SubsetUtilitiesSerial(u, rho, active)
                               : SubsetUtilitiesParallel(u, rho, active);
}

std::vector<double> MarginalSumsSerial(std::span<const double> table,
                                       std::size_t m,
                                       std::span<const double> weight) {
  std::vector<double> out(m);
  for (std::size_t k = 0; k < m; ++k) {
    out[k] = MarginalSumImpl(table, m, k, weight);
  }
  return out;
}

std::vector<double> MarginalSumsParallel(std::span<const double> table,
                                         std::size_t m,
                                         std::span<const double> weight) {
  std::vector<double> out(m);
  const std::int64_t players = static_cast<std::int64_t>(m);
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < players; ++k) {
    out[k] = MarginalSumImpl(table, m, static_cast<std::size_t>(k), weight);
  }
  return out;
}

std::vector<double> MarginalSums(std::span<const double> table, std::size_t m,
                                 std::span<const double> weight, Exec exec) {
  return exec == Exec::kSerial ? MarginalSumsSerial(table, m, weight)
                               : MarginalSumsParallel(table, m, weight);
}

double MarginalSum(std::span<const double> table, std::size_t m,
                   std::size_t player, std::span<const double> weight) {
  return MarginalSumImpl(table, m, player, weight);
}

double WeightedTotal(std::span<const double> table,
                     std::span<const double> weight) {
  double sum = 0.0;
  for (std::uint64_t s = 0; s < table.size(); ++s) {
    sum += weight[std::popcount(s)] * table[s];
  }
  return sum;
}

}  // namespace kernels
}  // namespace fairpriv
