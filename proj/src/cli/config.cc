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

#include "fairpriv/cli/config.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "fairpriv/dp_example.h"
#include "fairpriv/error.h"
#include "fairpriv/fed_model.h"

namespace fairpriv {
namespace cli {
namespace {

using nlohmann::json;

const std::set<std::string>& KnownKeys() {
  static const std::set<std::string> keys = {
      "description", "model",     "eps_prime",   "s2",       "r2",
      "levels",      "table",     "groups",      "users",    "rho",
      "alpha",       "alpha_grid", "theorem",    "strict_ne", "pessimistic",
      "seed",        "ne_mode",   "mechanism",   "c",        "c1",
      "c2",          "sweep"};
  return keys;
}

double Number(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_number()) throw ConfigError(key + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(key + " must be finite");
  return x;
}

bool Bool(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_boolean()) throw ConfigError(key + " must be true or false");
  return v.get<bool>();
}

std::string String(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_string()) throw ConfigError(key + " must be a string");
  return v.get<std::string>();
}

std::vector<double> NumberArray(const json& v, const std::string& key) {
  if (!v.is_array()) throw ConfigError(key + " must be an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) {
      throw ConfigError(key + "[" + std::to_string(i) + "] must be a number");
    }
    out.push_back(v[i].get<double>());
  }
  return out;
}

std::vector<int> IntArray(const json& v, const std::string& key) {
  if (!v.is_array()) throw ConfigError(key + " must be an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_integer()) {
      throw ConfigError(key + "[" + std::to_string(i) + "] must be an integer");
    }
    out.push_back(v[i].get<int>());
  }
  return out;
}

std::vector<UserProfile> ParseUsers(const json& v) {
  if (!v.is_array() || v.empty()) {
    throw ConfigError("users must be a nonempty array");
  }
  std::vector<UserProfile> users;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string where = "users[" + std::to_string(i) + "]";
    const json& u = v[i];
    if (!u.is_object()) throw ConfigError(where + " must be an object");
    UserProfile p;
    for (const auto& [key, value] : u.items()) {
      if (key == "n") {
        if (!value.is_number_integer()) {
          throw ConfigError(where + ".n must be an integer");
        }
        p.n = value.get<int>();
      } else if (key == "a") {
        if (!value.is_number()) throw ConfigError(where + ".a must be a number");
        p.a = value.get<double>();
      } else if (key == "c") {
        p.cost = NumberArray(value, where + ".c");
      } else {
        throw ConfigError("unknown field " + where + "." + key);
      }
    }
    users.push_back(std::move(p));
  }
  return users;
}

AlphaGrid ParseGridValue(const json& v) {
  if (v.is_string()) return ParseGrid(v.get<std::string>());
  if (!v.is_object()) {
    throw ConfigError("alpha_grid must be \"min:max:points\" or an object");
  }
  AlphaGrid g;
  for (const auto& [key, value] : v.items()) {
    if (key == "min") {
      g.min = Number(v, key);
    } else if (key == "max") {
      g.max = Number(v, key);
    } else if (key == "points") {
      if (!value.is_number_integer() || value.get<long long>() < 2) {
        throw ConfigError("alpha_grid.points must be an integer >= 2");
      }
      g.points = value.get<std::size_t>();
    } else {
      throw ConfigError("unknown field alpha_grid." + key);
    }
  }
  g.Validate();
  return g;
}

double ParseDouble(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError(what + ": cannot parse '" + text + "' as a number");
  }
  if (used != text.size()) {
    throw ConfigError(what + ": cannot parse '" + text + "' as a number");
  }
  return x;
}

std::vector<std::string> Split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, sep)) out.push_back(part);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

std::size_t ExperimentConfig::num_users() const { return users.size(); }

PrivacySpace ExperimentConfig::Space() const {
  switch (model) {
    case ModelKind::kDpExample:
      return PrivacySpace::Binary(eps_prime);
    case ModelKind::kFederated:
      return PrivacySpace::ThreeLevel();
    case ModelKind::kTabulated:
      return PrivacySpace(levels);
  }
  throw ConfigError("unknown model");
}

AlphaGrid ParseGrid(const std::string& spec) {
  const std::vector<std::string> parts = Split(spec, ':');
  if (parts.size() != 3) {
    throw ConfigError("alpha grid must look like min:max:points, got '" +
                      spec + "'");
  }
  AlphaGrid g;
  g.min = ParseDouble(parts[0], "alpha grid min");
  g.max = ParseDouble(parts[1], "alpha grid max");
  const double points = ParseDouble(parts[2], "alpha grid points");
  if (points != std::floor(points) || points < 2) {
    throw ConfigError("alpha grid points must be an integer >= 2");
  }
  g.points = static_cast<std::size_t>(points);
  g.Validate();
  return g;
}

SweepSpec ParseSweep(const std::string& spec) {
  SweepSpec s;
  const std::size_t eq = spec.find('=');
  s.params = Split(spec.substr(0, eq), ',');
  if (s.params.empty() || s.params.size() > 2) {
    throw ConfigError("sweep names one or two parameters, got '" + spec + "'");
  }
  for (const std::string& p : s.params) {
    if (p != "c" && p != "c1" && p != "c2") {
      throw ConfigError("sweep parameter must be c, c1 or c2, got '" + p + "'");
    }
  }
  if (eq != std::string::npos) {
    const std::vector<std::string> parts = Split(spec.substr(eq + 1), ':');
    if (parts.size() != 3) {
      throw ConfigError("sweep range must look like min:max:points");
    }
    s.min = ParseDouble(parts[0], "sweep min");
    s.max = ParseDouble(parts[1], "sweep max");
    const double points = ParseDouble(parts[2], "sweep points");
    if (points != std::floor(points) || points < 1) {
      throw ConfigError("sweep points must be a positive integer");
    }
    s.points = static_cast<std::size_t>(points);
  }
  if (!(s.min >= 0.0) || s.max < s.min) {
    throw ConfigError("sweep range needs 0 <= min <= max");
  }
  return s;
}

std::vector<Level> ParseProfile(const std::string& spec) {
  std::vector<Level> out;
  for (const std::string& part : Split(spec, ',')) {
    const double x = ParseDouble(part, "rho");
    if (x != std::floor(x) || x < 0 || x > 255) {
      throw ConfigError("rho entries must be level indices, got '" + part + "'");
    }
    out.push_back(static_cast<Level>(x));
  }
  if (out.empty()) throw ConfigError("rho must not be empty");
  return out;
}

ExperimentConfig ParseConfig(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!KnownKeys().count(key)) throw ConfigError("unknown field " + key);
  }
  ExperimentConfig c;
  c.canonical = doc.dump();

  if (!doc.contains("model")) throw ConfigError("model is required");
  const std::string model = String(doc, "model");
  if (model == "dp_example") {
    c.model = ModelKind::kDpExample;
  } else if (model == "federated") {
    c.model = ModelKind::kFederated;
  } else if (model == "tabulated") {
    c.model = ModelKind::kTabulated;
  } else {
    throw ConfigError("model must be dp_example, federated or tabulated");
  }

  if (doc.contains("eps_prime")) {
    const json& e = doc.at("eps_prime");
    if (e.is_string() && e.get<std::string>() == "inf") {
      c.eps_prime = kInfinity;
    } else {
      c.eps_prime = Number(doc, "eps_prime");
      if (!(c.eps_prime > 0.0)) throw ConfigError("eps_prime must be > 0");
    }
  }
  if (doc.contains("s2")) c.s2 = Number(doc, "s2");
  if (doc.contains("r2")) c.r2 = Number(doc, "r2");
  if (doc.contains("levels")) c.levels = NumberArray(doc.at("levels"), "levels");
  if (doc.contains("table")) c.table = NumberArray(doc.at("table"), "table");
  if (doc.contains("groups")) c.groups = IntArray(doc.at("groups"), "groups");
  if (doc.contains("users")) c.users = ParseUsers(doc.at("users"));
  if (doc.contains("rho")) {
    std::vector<Level> rho;
    for (int x : IntArray(doc.at("rho"), "rho")) {
      if (x < 0 || x > 255) throw ConfigError("rho entries must be level indices");
      rho.push_back(static_cast<Level>(x));
    }
    c.rho = rho;
  }
  if (doc.contains("alpha")) {
    c.alpha = Number(doc, "alpha");
    if (c.alpha < 0.0 || c.alpha > 1.0) {
      throw ConfigError("alpha must lie in [0, 1]");
    }
  }
  if (doc.contains("alpha_grid")) c.alpha_grid = ParseGridValue(doc.at("alpha_grid"));
  if (doc.contains("theorem")) {
    const json& t = doc.at("theorem");
    if (!t.is_number_integer() || (t.get<int>() != 1 && t.get<int>() != 2)) {
      throw ConfigError("theorem must be 1 or 2");
    }
    c.theorem = t.get<int>();
  }
  if (doc.contains("strict_ne")) c.strict_ne = Bool(doc, "strict_ne");
  if (doc.contains("pessimistic")) c.pessimistic = Bool(doc, "pessimistic");
  if (doc.contains("seed")) {
    const json& s = doc.at("seed");
    if (!s.is_number_unsigned()) throw ConfigError("seed must be an integer >= 0");
    c.seed = s.get<std::uint64_t>();
  }
  if (doc.contains("ne_mode")) {
    const std::string m = String(doc, "ne_mode");
    if (m == "pure") {
      c.ne_mode = NeMode::kPure;
    } else if (m == "two_player") {
      c.ne_mode = NeMode::kTwoPlayer;
    } else if (m == "symmetric") {
      c.ne_mode = NeMode::kSymmetric;
    } else {
      throw ConfigError("ne_mode must be pure, two_player or symmetric");
    }
  }
  if (doc.contains("mechanism")) {
    const std::string m = String(doc, "mechanism");
    if (m == "grid") {
      c.mechanism = MechanismKind::kGrid;
    } else if (m == "symmetric") {
      c.mechanism = MechanismKind::kSymmetric;
    } else if (m == "two_group") {
      c.mechanism = MechanismKind::kTwoGroup;
    } else {
      throw ConfigError("mechanism must be grid, symmetric or two_group");
    }
  }
  for (const char* key : {"c", "c1", "c2"}) {
    if (!doc.contains(key)) continue;
    const double x = Number(doc, key);
    if (x < 0.0) throw ConfigError(std::string(key) + " must be >= 0");
    (key[1] == '\0' ? c.c : key[1] == '1' ? c.c1 : c.c2) = x;
  }
  if (doc.contains("sweep")) c.sweep = ParseSweep(String(doc, "sweep"));

  switch (c.model) {
    case ModelKind::kDpExample:
      if (c.users.empty()) {
        c.users = {BinaryCostProfile(c.c1.value_or(c.c.value_or(0.0))),
                   BinaryCostProfile(c.c2.value_or(c.c.value_or(0.0)))};
      }
      if (c.users.size() != 2) {
        throw ConfigError("users: the dp_example model has exactly 2 users");
      }
      break;
    case ModelKind::kFederated:
      if (c.users.empty()) throw ConfigError("users is required");
      fed::FedParams{c.s2, c.r2, c.users}.Validate();
      break;
    case ModelKind::kTabulated: {
      if (c.table.empty()) throw ConfigError("table is required");
      const PrivacySpace space(c.levels);
      if (c.users.empty()) {
        std::size_t n = 0;
        double cells = 1.0;
        while (cells < static_cast<double>(c.table.size())) {
          cells *= static_cast<double>(space.size());
          ++n;
        }
        c.users.assign(n, UserProfile{});
      }
      break;
    }
  }
  ValidateProfiles(c.users, c.Space().size(), /*need_costs=*/false);
  return c;
}

ExperimentConfig ParseConfigText(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return ParseConfig(doc);
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseConfigText(buf.str());
}

CoalitionUtility BuildUtility(const ExperimentConfig& config) {
  switch (config.model) {
    case ModelKind::kDpExample:
      return dp::UtilityMatrix({config.eps_prime});
    case ModelKind::kFederated:
      return fed::AsCoalitionUtility({config.s2, config.r2, config.users});
    case ModelKind::kTabulated: {
      CoalitionUtility u = CoalitionUtility::Tabulated(
          PrivacySpace(config.levels), config.num_users(), config.table);
      if (config.groups.empty()) return u;
      if (config.groups.size() != config.num_users()) {
        throw DimensionError("groups must list one group per user");
      }
      return u.WithSymmetryGroups(config.groups);
    }
  }
  throw ConfigError("unknown model");
}

std::string ConfigHash(const ExperimentConfig& config) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : config.canonical) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace cli
}  // namespace fairpriv
