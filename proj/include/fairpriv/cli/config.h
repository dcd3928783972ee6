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

#ifndef FAIRPRIV_CLI_CONFIG_H_
#define FAIRPRIV_CLI_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fairpriv/coalition.h"
#include "fairpriv/mechanism.h"
#include "fairpriv/privacy.h"
#include "fairpriv/profile.h"
#include "json.hpp"

namespace fairpriv {
namespace cli {

enum class ModelKind { kDpExample, kFederated, kTabulated };
enum class NeMode { kPure, kTwoPlayer, kSymmetric };
enum class MechanismKind { kGrid, kSymmetric, kTwoGroup };

// Values swept by `mechanism --sweep`: one or two cost parameters over a
// common range (two parameters span a square grid).
struct SweepSpec {
  std::vector<std::string> params;  // subset of {"c", "c1", "c2"}
  double min = 0.0;
  double max = 1.0;
  std::size_t points = 101;
};

struct ExperimentConfig {
  ModelKind model = ModelKind::kDpExample;
  double eps_prime = kInfinity;
  double s2 = 1.0;
  double r2 = 1.0;
  std::vector<double> levels{0.0, 1.0};
  std::vector<double> table;
  std::vector<int> groups;
  std::vector<UserProfile> users;
  std::optional<std::vector<Level>> rho;
  double alpha = 1.0;
  AlphaGrid alpha_grid;
  int theorem = 2;
  bool strict_ne = false;
  bool pessimistic = false;
  std::uint64_t seed = 7;
  NeMode ne_mode = NeMode::kPure;
  MechanismKind mechanism = MechanismKind::kGrid;
  std::optional<double> c;
  std::optional<double> c1;
  std::optional<double> c2;
  std::optional<SweepSpec> sweep;
  // Compact dump of the parsed document, hashed into result metadata.
  std::string canonical;

  std::size_t num_users() const;
  PrivacySpace Space() const;
};

// Throws ConfigError naming the offending field. Unknown keys are errors.
ExperimentConfig ParseConfig(const nlohmann::json& doc);
ExperimentConfig ParseConfigText(const std::string& text);
ExperimentConfig LoadConfig(const std::string& path);

// "min:max:points".
AlphaGrid ParseGrid(const std::string& spec);
// "c", "c=0:1:101", "c1,c2=0:1:21".
SweepSpec ParseSweep(const std::string& spec);
// "2,1,0" (level indices).
std::vector<Level> ParseProfile(const std::string& spec);

CoalitionUtility BuildUtility(const ExperimentConfig& config);

// 64-bit FNV-1a of the canonical config, as 16 hex digits.
std::string ConfigHash(const ExperimentConfig& config);

}  // namespace cli
}  // namespace fairpriv

#endif  // FAIRPRIV_CLI_CONFIG_H_
