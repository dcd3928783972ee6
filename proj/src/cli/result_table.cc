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

#include "fairpriv/cli/result_table.h"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "fairpriv/error.h"
#include "json.hpp"

namespace fairpriv {
namespace cli {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string Quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

// Numbers stay unquoted; quoted fields are always text.
Cell ParseField(const std::string& field, bool quoted) {
  if (quoted) return field;
  if (field == "inf") return std::numeric_limits<double>::infinity();
  if (field == "-inf") return -std::numeric_limits<double>::infinity();
  if (field == "nan") return std::numeric_limits<double>::quiet_NaN();
  try {
    std::size_t used = 0;
    const double x = std::stod(field, &used);
    if (used == field.size()) return x;
  } catch (const std::exception&) {
  }
  return field;
}

std::vector<Cell> SplitCsvLine(const std::string& line) {
  std::vector<Cell> out;
  std::string field;
  bool quoted = false;
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (in_quotes) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (ch == '"') {
        in_quotes = false;
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      in_quotes = true;
      quoted = true;
    } else if (ch == ',') {
      out.push_back(ParseField(field, quoted));
      field.clear();
      quoted = false;
    } else {
      field += ch;
    }
  }
  if (in_quotes) throw ConfigError("unterminated quote in CSV line");
  out.push_back(ParseField(field, quoted));
  return out;
}

std::string CellText(const Cell& cell) {
  if (const double* x = std::get_if<double>(&cell)) return FormatNumber(*x);
  return std::get<std::string>(cell);
}

}  // namespace

std::string FormatNumber(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  // Avoid "-0".
  if (std::string(buf) == "-0") return "0";
  return buf;
}

ResultTable::ResultTable(std::vector<std::string> columns)
    : columns_(std::move(columns)) {}

void ResultTable::AddRow(std::vector<Cell> row) {
  if (row.size() != columns_.size()) {
    std::ostringstream msg;
    msg << "row has " << row.size() << " cells but the table has "
        << columns_.size() << " columns";
    throw DimensionError(msg.str());
  }
  rows_.push_back(std::move(row));
}

void ResultTable::SetMeta(const std::string& key, const std::string& value) {
  for (auto& [k, v] : metadata_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  metadata_.emplace_back(key, value);
}

std::string ResultTable::Meta(const std::string& key) const {
  for (const auto& [k, v] : metadata_) {
    if (k == key) return v;
  }
  return "";
}

std::size_t ResultTable::ColumnIndex(const std::string& column) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i] == column) return i;
  }
  throw ConfigError("no column named " + column);
}

double ResultTable::Number(std::size_t row, const std::string& column) const {
  const Cell& cell = rows_.at(row).at(ColumnIndex(column));
  if (const double* x = std::get_if<double>(&cell)) return *x;
  throw ConfigError("column " + column + " is not numeric");
}

std::string ResultTable::Text(std::size_t row, const std::string& column) const {
  return CellText(rows_.at(row).at(ColumnIndex(column)));
}

std::string ResultTable::ToCsv() const {
  std::ostringstream out;
  for (const auto& [k, v] : metadata_) out << "# " << k << "=" << v << "\n";
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    out << (i ? "," : "") << columns_[i];
  }
  out << "\n";
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      if (const double* x = std::get_if<double>(&row[i])) {
        out << FormatNumber(*x);
      } else {
        out << Quote(std::get<std::string>(row[i]));
      }
    }
    out << "\n";
  }
  return out.str();
}

std::string ResultTable::ToJsonLines() const {
  std::ostringstream out;
  ordered_json meta = ordered_json::object();
  for (const auto& [k, v] : metadata_) meta[k] = v;
  ordered_json head = {{"meta", meta}, {"columns", columns_}};
  out << head.dump() << "\n";
  for (const auto& row : rows_) {
    out << "{";
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << ordered_json(columns_[i]).dump() << ":";
      if (const double* x = std::get_if<double>(&row[i])) {
        out << (std::isfinite(*x) ? FormatNumber(*x)
                                  : ordered_json(FormatNumber(*x)).dump());
      } else {
        out << ordered_json(std::get<std::string>(row[i])).dump();
      }
    }
    out << "}\n";
  }
  return out.str();
}

ResultTable ResultTable::ParseCsv(std::string_view text) {
  ResultTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      const std::size_t eq = line.find('=');
      if (eq == std::string::npos) throw ConfigError("malformed metadata line");
      table.SetMeta(line.substr(2, eq - 2), line.substr(eq + 1));
    } else if (!header) {
      for (const Cell& c : SplitCsvLine(line)) {
        table.columns_.push_back(CellText(c));
      }
      header = true;
    } else {
      table.AddRow(SplitCsvLine(line));
    }
  }
  return table;
}

ResultTable ResultTable::ParseJsonLines(std::string_view text) {
  ResultTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ordered_json doc;
    try {
      doc = ordered_json::parse(line);
    } catch (const ordered_json::parse_error& e) {
      throw ConfigError(std::string("malformed JSON line: ") + e.what());
    }
    if (!header) {
      if (!doc.contains("meta") || !doc.contains("columns")) {
        throw ConfigError("first JSON line must hold meta and columns");
      }
      for (const auto& [k, v] : doc["meta"].items()) {
        table.SetMeta(k, v.get<std::string>());
      }
      table.columns_ = doc["columns"].get<std::vector<std::string>>();
      header = true;
      continue;
    }
    std::vector<Cell> row;
    for (const std::string& column : table.columns_) {
      if (!doc.contains(column)) throw ConfigError("row lacks column " + column);
      const ordered_json& v = doc[column];
      if (v.is_number()) {
        row.emplace_back(v.get<double>());
      } else {
        row.push_back(ParseField(v.get<std::string>(), false));
      }
    }
    table.AddRow(std::move(row));
  }
  return table;
}

void ResultTable::Validate() const {
  if (columns_.empty()) throw ConfigError("result table has no columns");
  for (const auto& row : rows_) {
    if (row.size() != columns_.size()) {
      throw ConfigError("result rows differ in width");
    }
  }
  for (const char* key : {"config_hash", "version"}) {
    if (Meta(key).empty()) {
      throw ConfigError(std::string("result metadata lacks ") + key);
    }
  }
}

}  // namespace cli
}  // namespace fairpriv
