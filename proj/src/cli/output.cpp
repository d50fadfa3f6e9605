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

#include "steinexp/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace steinexp {

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw std::invalid_argument("table row has " + std::to_string(row.size()) +
                                " cells, expected " + std::to_string(columns.size()));
  rows.push_back(std::move(row));
}

std::string format_double(double x, int digits) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", std::clamp(digits, 1, 17), x);
  return buf;
}

std::string format_cell(const Cell& c, int digits) {
  struct Visitor {
    int digits;
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(long v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v, digits); }
    std::string operator()(const Rational& v) const { return to_string(v); }
    std::string operator()(const std::string& v) const { return v; }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
  };
  return std::visit(Visitor{digits}, c);
}

Format parse_format(const std::string& name) {
  if (name == "table") return Format::kTable;
  if (name == "csv") return Format::kCsv;
  if (name == "json") return Format::kJson;
  throw std::invalid_argument("unknown format '" + name + "'");
}

void write_text(const Table& t, std::ostream& os, int digits) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width(t.columns.size());
  for (std::size_t j = 0; j < t.columns.size(); ++j) width[j] = t.columns[j].size();
  for (const auto& row : t.rows) {
    auto& out = cells.emplace_back();
    for (std::size_t j = 0; j < row.size(); ++j) {
      out.push_back(format_cell(row[j], digits));
      width[j] = std::max(width[j], out.back().size());
    }
  }
  auto line = [&](const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (j) s += "  ";
      s += v[j];
      if (j + 1 < v.size()) s.append(width[j] - v[j].size(), ' ');
    }
    os << s << '\n';
  };
  if (!t.title.empty()) os << t.title << '\n';
  line(t.columns);
  for (const auto& c : cells) line(c);
  for (const auto& n : t.notes) os << "note: " << n << '\n';
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

nlohmann::ordered_json json_cell(const Cell& c, int digits) {
  if (std::holds_alternative<std::monostate>(c)) return nullptr;
  if (const auto* v = std::get_if<long>(&c)) return *v;
  if (const auto* v = std::get_if<bool>(&c)) return *v;
  if (const auto* v = std::get_if<double>(&c)) {
    if (!std::isfinite(*v)) return format_double(*v, digits);
    return std::strtod(format_double(*v, digits).c_str(), nullptr);
  }
  return format_cell(c, digits);
}

}  // namespace

void write_csv(const Table& t, std::ostream& os, int digits) {
  for (std::size_t j = 0; j < t.columns.size(); ++j)
    os << (j ? "," : "") << csv_field(t.columns[j]);
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t j = 0; j < row.size(); ++j)
      os << (j ? "," : "") << csv_field(format_cell(row[j], digits));
    os << '\n';
  }
}

void write_json(const Table& t, std::ostream& os, int digits) {
  nlohmann::ordered_json doc;
  doc["title"] = t.title;
  doc["columns"] = t.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t j = 0; j < row.size(); ++j) obj[t.columns[j]] = json_cell(row[j], digits);
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  doc["notes"] = t.notes;
  os << doc.dump(2) << '\n';
}

void write_table(const Table& t, Format f, std::ostream& os, int digits) {
  switch (f) {
    case Format::kTable: write_text(t, os, digits); break;
    case Format::kCsv: write_csv(t, os, digits); break;
    case Format::kJson: write_json(t, os, digits); break;
  }
}

Table sweep_table(const std::vector<SweepRow>& rows) {
  Table t;
  t.columns = {"n", "t", "quantity", "exact", "value"};
  for (const auto& r : rows) {
    t.add({r.n, r.t ? Cell(*r.t) : Cell(std::monostate{}), r.quantity,
           r.exact ? Cell(*r.exact) : Cell(std::monostate{}), r.value});
  }
  return t;
}

void emit_csv(const std::vector<SweepRow>& rows, const std::string& path, int digits) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  write_csv(sweep_table(rows), f, digits);
  f.flush();
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
}

}  // namespace steinexp
