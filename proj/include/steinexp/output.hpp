// Copyright 2026 The steinexp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Tabular results and their three serializations. Floats are printed with
// %.*g at a fixed number of significant digits and rationals as "p/q", so
// identical tables serialize to identical bytes.

#ifndef STEINEXP_OUTPUT_HPP_
#define STEINEXP_OUTPUT_HPP_

#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "steinexp/rational.hpp"

namespace steinexp {

using Cell = std::variant<std::monostate, long, double, Rational, std::string, bool>;

struct Table {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> notes;

  // Throws std::invalid_argument if the row width differs from columns.
  void add(std::vector<Cell> row);
};

std::string format_double(double x, int digits);
std::string format_cell(const Cell& c, int digits);

enum class Format { kTable, kCsv, kJson };

// Throws std::invalid_argument for anything but table, csv, json.
Format parse_format(const std::string& name);

void write_text(const Table& t, std::ostream& os, int digits);
// Header row, then one line-feed terminated line per row. Notes are not
// part of the CSV.
void write_csv(const Table& t, std::ostream& os, int digits);
// {"title", "columns", "rows": [{column: value}], "notes"}.
void write_json(const Table& t, std::ostream& os, int digits);
void write_table(const Table& t, Format f, std::ostream& os, int digits);

// One (n, t, quantity) measurement. `exact` is set when the value is a
// rational computed exactly; `value` is always its float image.
struct SweepRow {
  long n = 0;
  std::optional<Rational> t;
  std::string quantity;
  std::optional<Rational> exact;
  double value = 0.0;
};

// Columns n,t,quantity,exact,value.
Table sweep_table(const std::vector<SweepRow>& rows);

// Writes sweep_table(rows) as CSV to path; an empty list gives a header-only
// file. Throws std::runtime_error if the path cannot be written.
void emit_csv(const std::vector<SweepRow>& rows, const std::string& path, int digits = 12);

}  // namespace steinexp

#endif  // STEINEXP_OUTPUT_HPP_
