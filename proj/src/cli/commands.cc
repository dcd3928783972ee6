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

#include "fairpriv/cli/commands.h"

#include <chrono>
#include <cstdint>
#include <ctime>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "fairpriv/dp_example.h"
#include "fairpriv/equilibrium.h"
#include "fairpriv/error.h"
#include "fairpriv/mechanism.h"
#include "fairpriv/partition_game.h"
#include "fairpriv/valuation.h"

namespace fairpriv {
namespace cli {
namespace {

constexpr double kCertificateTolerance = 1e-9;

ValuationOptions Valuation(const ExperimentConfig& config) {
  ValuationOptions options;
  options.seed = config.seed;
  return options;
}

NeOptions Ne(const ExperimentConfig& config) {
  NeOptions options;
  options.strict = config.strict_ne;
  options.valuation = Valuation(config);
  return options;
}

std::string UserLabel(std::size_t i) { return "u" + std::to_string(i + 1); }

PrivacyVector RequireRho(const ExperimentConfig& config) {
  if (!config.rho) throw ConfigError("rho is required (config field or --rho)");
  return PrivacyVector(*config.rho);
}

void RequireCosts(const ExperimentConfig& config) {
  ValidateProfiles(config.users, config.Space().size(), /*need_costs=*/true);
}

void CheckTwoUserBinary(const CoalitionUtility& u) {
  if (u.num_users() != 2 || u.space().size() != 2) {
    throw DimensionError("this mode needs two users and a binary space");
  }
}

// Fair value of `user` at every cell, indexed [user 1 level][user 2 level].
Matrix2 ValueMatrix(const CoalitionUtility& u, std::size_t user,
                    const ValuationOptions& options) {
  Matrix2 m{};
  for (Level a = 0; a < 2; ++a) {
    for (Level b = 0; b < 2; ++b) m[a][b] = UserValue(u, {a, b}, user, options);
  }
  return m;
}

Matrix2 UtilityMatrix(const CoalitionUtility& u) {
  Matrix2 m{};
  for (Level a = 0; a < 2; ++a) {
    for (Level b = 0; b < 2; ++b) m[a][b] = u({a, b});
  }
  return m;
}

double CostOf(const ExperimentConfig& config, std::optional<double> given,
              std::size_t user) {
  if (given) return *given;
  if (config.c) return *config.c;
  const UserProfile& p = config.users.at(user);
  if (p.cost.size() == 2) return p.cost[1];
  throw ConfigError("sensitivity missing: set c, c1/c2 or users[].c");
}

std::vector<double> SweepValues(const SweepSpec& s) {
  std::vector<double> out(s.points);
  for (std::size_t i = 0; i < s.points; ++i) {
    out[i] = s.points == 1 ? s.min
                           : s.min + (s.max - s.min) * static_cast<double>(i) /
                                         static_cast<double>(s.points - 1);
  }
  return out;
}

ResultTable SymmetricMechanism(const ExperimentConfig& config) {
  const CoalitionUtility u = BuildUtility(config);
  const SymmetricSolver solver(ToCountUtility(u));
  std::vector<double> costs;
  if (config.sweep) {
    for (const std::string& p : config.sweep->params) {
      if (p != "c") throw ConfigError("the symmetric mechanism sweeps c only");
    }
    costs = SweepValues(*config.sweep);
  } else {
    costs = {CostOf(config, std::nullopt, 0)};
  }
  std::vector<SymmetricSolution> solved(costs.size());
  const std::int64_t count = static_cast<std::int64_t>(costs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) solved[i] = solver.Solve(costs[i]);

  ResultTable table({"c", "regime", "alpha_star", "p_star", "utility",
                     "platform_net", "gamma_min", "gamma_max", "c_th",
                     "characterization_ok"});
  const RegimeBoundaries& b = solver.boundaries();
  for (std::size_t i = 0; i < costs.size(); ++i) {
    const SymmetricSolution& s = solved[i];
    table.AddRow({costs[i], std::string(RegimeName(s.regime)), s.alpha_star,
                  s.strategy.p, s.utility, s.platform_net, b.gamma_min,
                  b.gamma_max, b.c_th, s.characterization_ok ? 1.0 : 0.0});
  }
  return table;
}

ResultTable TwoGroup(const ExperimentConfig& config) {
  const CoalitionUtility u = BuildUtility(config);
  CheckTwoUserBinary(u);
  const ValuationOptions options = Valuation(config);
  const Matrix2 utility = UtilityMatrix(u);
  const Matrix2 phi1 = ValueMatrix(u, 0, options);
  const Matrix2 phi2 = ValueMatrix(u, 1, options);

  std::vector<std::pair<double, double>> pairs;
  if (config.sweep) {
    const std::vector<double> v = SweepValues(*config.sweep);
    const auto& params = config.sweep->params;
    if (params.size() == 2) {
      for (double x : v) {
        for (double y : v) pairs.emplace_back(x, y);
      }
    } else if (params[0] == "c") {
      for (double x : v) pairs.emplace_back(x, x);
    } else if (params[0] == "c1") {
      const double c2 = CostOf(config, config.c2, 1);
      for (double x : v) pairs.emplace_back(x, c2);
    } else {
      const double c1 = CostOf(config, config.c1, 0);
      for (double y : v) pairs.emplace_back(c1, y);
    }
  } else {
    pairs.emplace_back(CostOf(config, config.c1, 0),
                       CostOf(config, config.c2, 1));
  }

  std::vector<TwoGroupSolution> solved(pairs.size());
  const std::int64_t count = static_cast<std::int64_t>(pairs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    solved[i] = TwoGroupMechanism(pairs[i].first, pairs[i].second,
                                  config.alpha_grid, utility, phi1, phi2,
                                  config.pessimistic);
  }
  ResultTable table({"c1", "c2", "alpha_star", "p", "q", "expected_utility",
                     "platform_share", "user1_payment", "user2_payment",
                     "unverified_cells"});
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const TwoGroupSolution& s = solved[i];
    table.AddRow({pairs[i].first, pairs[i].second, s.alpha_star,
                  s.strategies.p, s.strategies.q, s.expected_utility,
                  s.platform_net, s.user1_payment, s.user2_payment,
                  static_cast<double>(s.unverified)});
  }
  return table;
}

std::string Timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

}  // namespace

void ApplyOverrides(const Overrides& o, ExperimentConfig& config) {
  std::ostringstream extra;
  if (o.theorem) {
    if (*o.theorem != 1 && *o.theorem != 2) {
      throw ConfigError("--theorem must be 1 or 2");
    }
    config.theorem = *o.theorem;
    extra << "|theorem=" << *o.theorem;
  }
  if (o.alpha) {
    if (!(*o.alpha >= 0.0 && *o.alpha <= 1.0)) {
      throw ConfigError("--alpha must lie in [0, 1]");
    }
    config.alpha = *o.alpha;
    extra << "|alpha=" << FormatNumber(*o.alpha);
  }
  if (o.alpha_grid) {
    config.alpha_grid = ParseGrid(*o.alpha_grid);
    extra << "|alpha_grid=" << *o.alpha_grid;
  }
  if (o.sweep) {
    config.sweep = ParseSweep(*o.sweep);
    extra << "|sweep=" << *o.sweep;
  }
  if (o.rho) {
    config.rho = ParseProfile(*o.rho);
    extra << "|rho=" << *o.rho;
  }
  if (o.ne_mode) {
    if (*o.ne_mode == "pure") {
      config.ne_mode = NeMode::kPure;
    } else if (*o.ne_mode == "two-player" || *o.ne_mode == "two_player") {
      config.ne_mode = NeMode::kTwoPlayer;
    } else if (*o.ne_mode == "symmetric") {
      config.ne_mode = NeMode::kSymmetric;
    } else {
      throw ConfigError("--mode must be pure, two-player or symmetric");
    }
    extra << "|mode=" << *o.ne_mode;
  }
  if (o.seed) {
    config.seed = *o.seed;
    extra << "|seed=" << *o.seed;
  }
  if (o.eps_prime) {
    if (!(*o.eps_prime > 0.0)) throw ConfigError("--eps-prime must be > 0");
    config.eps_prime = *o.eps_prime;
    extra << "|eps_prime=" << FormatNumber(*o.eps_prime);
  }
  if (o.strict_ne) {
    config.strict_ne = true;
    extra << "|strict_ne";
  }
  if (o.pessimistic) {
    config.pessimistic = true;
    extra << "|pessimistic";
  }
  config.canonical += extra.str();
}

ResultTable CmdValue(const ExperimentConfig& config) {
  const CoalitionUtility u = BuildUtility(config);
  const PrivacyVector rho = RequireRho(config);
  const ValuationOptions options = Valuation(config);
  const Allocation a =
      config.theorem == 1 ? ShapleyWithPlatform(u, rho, true, options)
                          : ShapleyUsersOnly(u, rho, config.alpha, options);
  ResultTable table({"player", "level", "value"});
  const std::string none = "-";
  double sum = a.UserSum();
  if (a.platform_value) {
    table.AddRow({std::string("platform"), none, *a.platform_value});
    sum += *a.platform_value;
  }
  for (std::size_t i = 0; i < rho.size(); ++i) {
    table.AddRow({UserLabel(i), static_cast<double>(rho[i]), a.user_values[i]});
  }
  table.AddRow({std::string("sum"), none, sum});
  table.AddRow({std::string("utility"), none, a.total_utility});
  table.SetMeta("theorem", std::to_string(config.theorem));
  table.SetMeta("alpha", FormatNumber(a.alpha));
  table.SetMeta("efficiency_gap", FormatNumber(a.EfficiencyGap()));
  return table;
}

ResultTable CmdEquilibrium(const ExperimentConfig& config) {
  const CoalitionUtility u = BuildUtility(config);
  bool certified = true;
  ResultTable table;
  switch (config.ne_mode) {
    case NeMode::kPure: {
      RequireCosts(config);
      const NeResult ne = FindPureNe(u, config.users, config.alpha, Ne(config));
      table = ResultTable({"index", "rho", "utility", "certificate"});
      for (std::size_t k = 0; k < ne.pure.size(); ++k) {
        const PrivacyVector& rho = ne.pure[k].profile;
        const double certificate = UnilateralGain(u, config.users, rho,
                                                  config.alpha, Valuation(config));
        if (config.strict_ne
                ? !IsPureNe(u, config.users, rho, config.alpha, Ne(config))
                : certificate > kCertificateTolerance) {
          certified = false;
        }
        table.AddRow({static_cast<double>(k), ToString(rho), u(rho),
                      certificate});
      }
      break;
    }
    case NeMode::kTwoPlayer: {
      CheckTwoUserBinary(u);
      const GammaProfile gamma =
          TwoUserGamma(ValueMatrix(u, 0, Valuation(config)));
      const double c1 = CostOf(config, config.c1, 0);
      const double c2 = CostOf(config, config.c2, 1);
      const TwoPlayerNe ne = AsymTwoPlayerNe(c1, c2, config.alpha, gamma,
                                             kCertificateTolerance);
      table = ResultTable({"p", "q", "certificate", "verified"});
      for (const StrategyPair& s : ne.points) {
        table.AddRow({s.p, s.q, s.certificate, s.verified ? 1.0 : 0.0});
      }
      certified = ne.AllVerified();
      table.SetMeta("c1", FormatNumber(c1));
      table.SetMeta("c2", FormatNumber(c2));
      break;
    }
    case NeMode::kSymmetric: {
      const GammaProfile gamma = GammaProfile::FromCountUtility(ToCountUtility(u));
      const double c = CostOf(config, std::nullopt, 0);
      const MixedSymmetricStrategy s = PStar(gamma, c, config.alpha);
      const double residual = SymmetricNeResidual(gamma, s.p, c, config.alpha);
      table = ResultTable({"p", "any_p", "gamma_at_p", "residual"});
      table.AddRow({s.p, s.any_p ? 1.0 : 0.0, gamma(s.p), residual});
      certified = residual <= kCertificateTolerance;
      table.SetMeta("c", FormatNumber(c));
      break;
    }
  }
  table.SetMeta("alpha", FormatNumber(config.alpha));
  table.SetMeta("certified", certified ? "true" : "false");
  return table;
}

ResultTable CmdMechanism(const ExperimentConfig& config, bool trace) {
  ResultTable table;
  switch (config.mechanism) {
    case MechanismKind::kSymmetric:
      table = SymmetricMechanism(config);
      break;
    case MechanismKind::kTwoGroup:
      table = TwoGroup(config);
      break;
    case MechanismKind::kGrid: {
      if (config.sweep) throw ConfigError("--sweep needs a symmetric or two_group mechanism");
      RequireCosts(config);
      const CoalitionUtility u = BuildUtility(config);
      MechanismOptions options;
      options.grid = config.alpha_grid;
      options.ne = Ne(config);
      options.pessimistic = config.pessimistic;
      const MechanismSolution s = OptimizeAlphaGrid(u, config.users, options);
      if (trace) {
        table = ResultTable({"alpha", "has_equilibrium", "rho", "utility",
                             "objective"});
        for (const GridPoint& p : s.trace) {
          table.AddRow({p.alpha, p.has_equilibrium ? 1.0 : 0.0,
                        p.has_equilibrium ? ToString(p.profile) : "-",
                        p.utility, p.objective});
        }
      } else {
        std::vector<std::string> columns = {"alpha_star", "rho", "utility",
                                            "platform_net", "certificate"};
        std::vector<Cell> row = {s.alpha_star, ToString(s.profile), s.utility,
                                 s.platform_net, s.certificate};
        for (std::size_t i = 0; i < s.payments.user_values.size(); ++i) {
          columns.push_back("pay_" + UserLabel(i));
          row.emplace_back(s.payments.user_values[i]);
        }
        table = ResultTable(columns);
        table.AddRow(std::move(row));
      }
      table.SetMeta("alpha_star", FormatNumber(s.alpha_star));
      table.SetMeta("certified",
                    s.certificate <= kCertificateTolerance ? "true" : "false");
      break;
    }
  }
  return table;
}

ResultTable CmdDpExample(const ExperimentConfig& config) {
  const dp::DpExampleParams params{config.eps_prime};
  params.Validate();
  const dp::FairTables t1 = dp::FairMatrices(params, FairnessMode::kWithPlatform);
  const dp::FairTables t2 = dp::FairMatrices(params, FairnessMode::kUsersOnly);
  ResultTable table({"e1", "e2", "w1", "w2", "eta", "risk", "utility",
                     "platform_thm1", "u1_thm1", "u2_thm1", "u1_thm2",
                     "u2_thm2"});
  for (Level a = 0; a < 2; ++a) {
    for (Level b = 0; b < 2; ++b) {
      const dp::EstimatorSpec e = dp::OptimalEstimator(params, a, b);
      table.AddRow({params.Space().value(a), params.Space().value(b),
                    e.weights[0], e.weights[1], e.laplace_inverse_scale,
                    dp::BayesRisk(params, a, b), t1.utility[a][b],
                    t1.platform[a][b], t1.user1[a][b], t1.user2[a][b],
                    t2.user1[a][b], t2.user2[a][b]});
    }
  }
  table.SetMeta("eps_prime", FormatNumber(config.eps_prime));
  return table;
}

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Fair payments for private data"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string config_path;
  std::string format = "csv";
  bool reproducible = false;
  Overrides o;

  auto common = [&](CLI::App* sub, bool config_required) {
    auto* opt = sub->add_option("config", config_path, "JSON config file");
    if (config_required) opt->required();
    sub->add_option("--format", format, "csv or jsonl")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    sub->add_flag("--reproducible", reproducible, "omit the timestamp");
    sub->add_option("--seed", o.seed, "seed of randomized checks");
  };
  auto* value = app.add_subcommand("value", "fair values at a profile");
  common(value, true);
  value->add_option("--theorem", o.theorem, "1: platform is a player, 2: users only");
  value->add_option("--alpha", o.alpha, "payment fraction (theorem 2)");
  value->add_option("--rho", o.rho, "level indices, e.g. 2,1,0");

  auto* equilibrium = app.add_subcommand("equilibrium", "Nash equilibria at alpha");
  common(equilibrium, true);
  equilibrium->add_option("--alpha", o.alpha, "payment fraction");
  equilibrium->add_option("--mode", o.ne_mode, "pure, two-player or symmetric");
  equilibrium->add_flag("--strict-ne", o.strict_ne, "strict equilibria only");

  auto* mechanism = app.add_subcommand("mechanism", "optimal payment fraction");
  common(mechanism, true);
  mechanism->add_option("--alpha-grid", o.alpha_grid, "min:max:points");
  mechanism->add_option("--sweep", o.sweep, "c[=min:max:points] or c1,c2[=...]");
  mechanism->add_flag("--strict-ne", o.strict_ne, "strict equilibria only");
  mechanism->add_flag("--pessimistic", o.pessimistic,
                      "select the platform's worst equilibrium");
  mechanism->add_flag("--trace", o.trace, "emit the whole alpha landscape");

  auto* dp_cmd = app.add_subcommand("dp-example", "two-user DP example tables");
  common(dp_cmd, false);
  dp_cmd->add_option("--eps-prime", o.eps_prime, "nonzero privacy level");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    ExperimentConfig config;
    if (!config_path.empty()) {
      config = LoadConfig(config_path);
    } else {
      config = ParseConfigText(R"({"model": "dp_example"})");
    }
    ApplyOverrides(o, config);

    ResultTable table;
    std::string command;
    if (*value) {
      command = "value";
      table = CmdValue(config);
    } else if (*equilibrium) {
      command = "equilibrium";
      table = CmdEquilibrium(config);
    } else if (*mechanism) {
      command = "mechanism";
      table = CmdMechanism(config, o.trace);
    } else {
      command = "dp-example";
      table = CmdDpExample(config);
    }
    table.SetMeta("command", command);
    table.SetMeta("config_hash", ConfigHash(config));
    table.SetMeta("version", kVersion);
    table.SetMeta("seed", std::to_string(config.seed));
    if (!reproducible) table.SetMeta("timestamp", Timestamp());
    out << (format == "jsonl" ? table.ToJsonLines() : table.ToCsv());
    if (table.Meta("certified") == "false") {
      err << "error: an equilibrium failed its certificate\n";
      return kExitCertification;
    }
    return kExitOk;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDimension;
  } catch (const CertificationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitCertification;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace cli
}  // namespace fairpriv
