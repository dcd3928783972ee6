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

#ifndef FAIRPRIV_KERNELS_H_
#define FAIRPRIV_KERNELS_H_

// Data-parallel inner loops of the subset-sum valuation. Every kernel has a
// serial reference version and an OpenMP version; both produce bit-identical
// results because each output element is accumulated in the same order.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fairpriv/coalition.h"
#include "fairpriv/privacy.h"

namespace fairpriv {
namespace kernels {

enum class Exec { kSerial, kParallel };

// n choose k as a double (exact for the sizes used here).
double Choose(int n, int k);

// table[mask] = U(rho restricted to {active[b] : bit b of mask set}).
std::vector<double> SubsetUtilitiesSerial(const CoalitionUtility& u,
                                          const PrivacyVector& rho,
                                          std::span<const std::size_t> active);
std::vector<double> SubsetUtilitiesParallel(
    const CoalitionUtility& u, const PrivacyVector& rho,
    std::span<const std::size_t> active);
std::vector<double> SubsetUtilities(const CoalitionUtility& u,
                                    const PrivacyVector& rho,
                                    std::span<const std::size_t> active,
                                    Exec exec);

// out[k] = sum over masks S without bit k of
//          weight[|S|] * (table[S | k] - table[S]),
// for the m players indexed by the bits of the table.
std::vector<double> MarginalSumsSerial(std::span<const double> table,
                                       std::size_t m,
                                       std::span<const double> weight);
std::vector<double> MarginalSumsParallel(std::span<const double> table,
                                         std::size_t m,
                                         std::span<const double> weight);
std::vector<double> MarginalSums(std::span<const double> table, std::size_t m,
                                 std::span<const double> weight, Exec exec);

// Single-player version of MarginalSums.
double MarginalSum(std::span<const double> table, std::size_t m,
                   std::size_t player, std::span<const double> weight);

// sum over masks S of weight[|S|] * table[S].
double WeightedTotal(std::span<const double> table,
                     std::span<const double> weight);

}  // namespace kernels
}  // namespace fairpriv

#endif  // FAIRPRIV_KERNELS_H_
