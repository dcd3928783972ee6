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

// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "fairpriv/fed_model.h"
#include "fairpriv/kernels.h"
#include "fairpriv/valuation.h"

namespace fairpriv {
namespace {

fed::FedParams Params(std::size_t n) {
  fed::FedParams p;
  p.s2 = 1.0;
  p.r2 = 10.0;
  for (std::size_t i = 0; i < n; ++i) {
    p.users.push_back({static_cast<int>(10 + 7 * i), 1.0, {}});
  }
  return p;
}

PrivacyVector Profile(std::size_t n) {
  PrivacyVector rho = PrivacyVector::Zeros(n);
  for (std::size_t i = 0; i < n; ++i) rho[i] = static_cast<Level>(1 + i % 2);
  return rho;
}

void BM_SubsetUtilities(benchmark::State& state, kernels::Exec exec) {
  const std::size_t n = state.range(0);
  const CoalitionUtility u = fed::AsCoalitionUtility(Params(n));
  const PrivacyVector rho = Profile(n);
  std::vector<std::size_t> active(n);
  std::iota(active.begin(), active.end(), std::size_t{0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::SubsetUtilities(u, rho, active, exec));
  }
  state.SetItemsProcessed(state.iterations() * (int64_t{1} << n));
}

void BM_MarginalSums(benchmark::State& state, kernels::Exec exec) {
  const std::size_t m = state.range(0);
  std::vector<double> table(std::size_t{1} << m);
  for (std::size_t s = 0; s < table.size(); ++s) {
    table[s] = std::log1p(static_cast<double>(__builtin_popcountll(s)));
  }
  std::vector<double> weight(m, 1.0 / m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::MarginalSums(table, m, weight, exec));
  }
  state.SetItemsProcessed(state.iterations() * table.size() * m);
}

void BM_ShapleyUsersOnly(benchmark::State& state, kernels::Exec exec) {
  const std::size_t n = state.range(0);
  const CoalitionUtility u = fed::AsCoalitionUtility(Params(n));
  const PrivacyVector rho = Profile(n);
  ValuationOptions options;
  options.exec = exec;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ShapleyUsersOnly(u, rho, 1.0, options));
  }
}

BENCHMARK_CAPTURE(BM_SubsetUtilities, serial, kernels::Exec::kSerial)
    ->DenseRange(8, 14, 2);
BENCHMARK_CAPTURE(BM_SubsetUtilities, parallel, kernels::Exec::kParallel)
    ->DenseRange(8, 14, 2);
BENCHMARK_CAPTURE(BM_MarginalSums, serial, kernels::Exec::kSerial)
    ->DenseRange(10, 20, 5);
BENCHMARK_CAPTURE(BM_MarginalSums, parallel, kernels::Exec::kParallel)
    ->DenseRange(10, 20, 5);
BENCHMARK_CAPTURE(BM_ShapleyUsersOnly, serial, kernels::Exec::kSerial)
    ->Arg(12);
BENCHMARK_CAPTURE(BM_ShapleyUsersOnly, parallel, kernels::Exec::kParallel)
    ->Arg(12);

}  // namespace
}  // namespace fairpriv

BENCHMARK_MAIN();
