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

#ifndef FAIRPRIV_CLI_COMMANDS_H_
#define FAIRPRIV_CLI_COMMANDS_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fairpriv/cli/config.h"
#include "fairpriv/cli/result_table.h"

namespace fairpriv {
namespace cli {

inline constexpr char kVersion[] = "0.1.0";

enum ExitCode {
  kExitOk = 0,
  kExitConfig = 2,
  kExitDimension = 3,
  kExitCertification = 4,
};

// Command-line overrides applied on top of the config file.
struct Overrides {
  std::optional<int> theorem;
  std::optional<double> alpha;
  std::optional<std::string> alpha_grid;
  std::optional<std::string> sweep;
  std::optional<std::string> rho;
  std::optional<std::string> ne_mode;
  std::optional<std::uint64_t> seed;
  std::optional<double> eps_prime;
  bool strict_ne = false;
  bool pessimistic = false;
  bool trace = false;
};

void ApplyOverrides(const Overrides& o, ExperimentConfig& config);

ResultTable CmdValue(const ExperimentConfig& config);
// Throws CertificationError if a reported equilibrium fails its check.
ResultTable CmdEquilibrium(const ExperimentConfig& config);
ResultTable CmdMechanism(const ExperimentConfig& config, bool trace = false);
ResultTable CmdDpExample(const ExperimentConfig& config);

// Full command-line entry point; returns the process exit code.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace cli
}  // namespace fairpriv

#endif  // FAIRPRIV_CLI_COMMANDS_H_
