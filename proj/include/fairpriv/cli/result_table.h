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

#ifndef FAIRPRIV_CLI_RESULT_TABLE_H_
#define FAIRPRIV_CLI_RESULT_TABLE_H_

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace fairpriv {
namespace cli {

using Cell = std::variant<double, std::string>;

// Rows of named columns plus `# key=value` metadata.
class ResultTable {
 public:
  ResultTable() = default;
  explicit ResultTable(std::vector<std::string> columns);

  // Throws DimensionError if the row width differs from the header.
  void AddRow(std::vector<Cell> row);
  void SetMeta(const std::string& key, const std::string& value);

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }
  const std::vector<std::pair<std::string, std::string>>& metadata() const {
    return metadata_;
  }
  // Metadata value or "" when absent.
  std::string Meta(const std::string& key) const;
  double Number(std::size_t row, const std::string& column) const;
  std::string Text(std::size_t row, const std::string& column) const;

  std::string ToCsv() const;
  std::string ToJsonLines() const;
  static ResultTable ParseCsv(std::string_view text);
  static ResultTable ParseJsonLines(std::string_view text);

  // Nonempty header, constant row width, config_hash and version present.
  // Throws ConfigError.
  void Validate() const;

 private:
  std::size_t ColumnIndex(const std::string& column) const;

  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<std::pair<std::string, std::string>> metadata_;
};

// Twelve significant digits; "inf", "-inf" and "nan" for non-finite values.
std::string FormatNumber(double value);

}  // namespace cli
}  // namespace fairpriv

#endif  // FAIRPRIV_CLI_RESULT_TABLE_H_
