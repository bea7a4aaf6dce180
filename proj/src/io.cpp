// Copyright 2026 The Framekit Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "framekit/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "framekit/error.hpp"

namespace framekit {

std::string FormatNumber(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

namespace {

std::string Pretty(double value) {
  char buf[40];
  // Avoid printing "-0.0000".
  if (std::abs(value) < 5e-5) value = 0.0;
  std::snprintf(buf, sizeof(buf), "%10.4f", value);
  return buf;
}

double ParseField(std::string_view field) {
  auto parse = [&](std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      throw Error(ErrorCode::kParse,
                  "cannot parse number '" + std::string(field) + "'");
    }
    return v;
  };
  if (const auto slash = field.find('/'); slash != std::string_view::npos) {
    const double den = parse(field.substr(slash + 1));
    if (den == 0.0) {
      throw Error(ErrorCode::kParse,
                  "zero denominator in '" + std::string(field) + "'");
    }
    return parse(field.substr(0, slash)) / den;
  }
  return parse(field);
}

std::vector<std::vector<double>> Transpose(
    const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {};
  const std::size_t cols = rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != cols) {
      throw Error(ErrorCode::kParse, "CSV lines have different lengths");
    }
  }
  std::vector<std::vector<double>> out(cols, std::vector<double>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) out[j][i] = rows[i][j];
  }
  return out;
}

NormSequence IncrementsOf(const std::vector<std::vector<double>>& steps) {
  std::vector<double> mu;
  double previous = 0.0;
  for (const auto& row : steps) {
    const double sum = std::accumulate(row.begin(), row.end(), 0.0);
    double d = sum - previous;
    // Rounding in the sums can leave a tiny negative increment.
    if (d < 0.0 && d > -1e-12 * std::max(1.0, sum)) d = 0.0;
    mu.push_back(d);
    previous = sum;
  }
  return NormSequence(std::move(mu));
}

template <typename Writer>
void WriteLine(std::ostream& out, std::size_t count, bool pretty,
               Writer value_at) {
  for (std::size_t i = 0; i < count; ++i) {
    if (i > 0) out << (pretty ? " " : ",");
    out << (pretty ? Pretty(value_at(i)) : FormatNumber(value_at(i)));
  }
  out << '\n';
}

}  // namespace

std::vector<double> ParseNumberList(std::string_view text) {
  std::vector<double> out;
  std::size_t i = 0;
  auto is_sep = [](char c) {
    return c == ',' || c == ' ' || c == '\t' || c == '\r' || c == ';';
  };
  while (i < text.size()) {
    while (i < text.size() && is_sep(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_sep(text[j])) ++j;
    if (j > i) out.push_back(ParseField(text.substr(i, j - i)));
    i = j;
  }
  return out;
}

std::vector<std::vector<double>> ReadNumberRows(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    rows.push_back(ParseNumberList(line));
  }
  return rows;
}

Frame ReadFrameCsv(std::istream& in) {
  const auto rows = ReadNumberRows(in);
  if (rows.empty()) throw Error(ErrorCode::kParse, "frame CSV is empty");
  const auto cols = Transpose(rows);
  Matrix f(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      f(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rows[i][j];
    }
  }
  return Frame(std::move(f));
}

void WriteFrameCsv(std::ostream& out, const Frame& frame, bool pretty) {
  const Matrix& f = frame.matrix();
  for (Eigen::Index i = 0; i < f.rows(); ++i) {
    WriteLine(out, frame.N(), pretty, [&](std::size_t j) {
      return f(i, static_cast<Eigen::Index>(j));
    });
  }
}

Frame FrameFromJson(const Json& j) {
  try {
    const auto M = j.at("M").get<std::size_t>();
    const auto columns = j.at("columns").get<std::vector<std::vector<double>>>();
    if (j.contains("N") && j.at("N").get<std::size_t>() != columns.size()) {
      throw Error(ErrorCode::kDimensionMismatch, "N does not match columns");
    }
    Matrix f(static_cast<Eigen::Index>(M),
             static_cast<Eigen::Index>(columns.size()));
    for (std::size_t n = 0; n < columns.size(); ++n) {
      if (columns[n].size() != M) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "frame column " + std::to_string(n + 1) +
                        " does not have M entries");
      }
      for (std::size_t m = 0; m < M; ++m) {
        f(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n)) =
            columns[n][m];
      }
    }
    return Frame(std::move(f));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("frame JSON: ") + e.what());
  }
}

Json FrameToJson(const Frame& frame) {
  Json columns = Json::array();
  for (std::size_t n = 0; n < frame.N(); ++n) {
    const Vector c = frame.column(n);
    columns.push_back(std::vector<double>(c.data(), c.data() + c.size()));
  }
  return Json{{"M", frame.M()}, {"N", frame.N()}, {"columns", columns}};
}

OuterEigenstepTable ReadOuterCsv(std::istream& in,
                                 const std::optional<NormSequence>& mu) {
  const auto rows = ReadNumberRows(in);
  if (rows.empty()) throw Error(ErrorCode::kParse, "table CSV is empty");
  auto steps = Transpose(rows);
  for (auto& column : steps) {
    std::sort(column.begin(), column.end(), std::greater<>());
  }
  NormSequence norms = mu ? *mu : IncrementsOf(steps);
  if (norms.size() != steps.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "number of norms differs from the number of table columns");
  }
  return OuterEigenstepTable::FromSteps(std::move(steps), std::move(norms));
}

void WriteOuterCsv(std::ostream& out, const OuterEigenstepTable& table,
                   bool pretty) {
  for (std::size_t r = 0; r < table.M; ++r) {
    const std::size_t m = table.M - 1 - r;
    WriteLine(out, table.N, pretty,
              [&](std::size_t n) { return table.rows[n + 1][m]; });
  }
}

InnerEigenstepTable ReadInnerCsv(std::istream& in,
                                 const std::optional<NormSequence>& mu) {
  InnerEigenstepTable table;
  table.rows = ReadNumberRows(in);
  if (table.rows.empty()) throw Error(ErrorCode::kParse, "table CSV is empty");
  table.N = table.rows.size();
  for (std::size_t n = 0; n < table.N; ++n) {
    if (table.rows[n].size() != n + 1) {
      throw Error(ErrorCode::kParse, "inner table line " + std::to_string(n + 1) +
                                         " must have " + std::to_string(n + 1) +
                                         " entries");
    }
  }
  table.mu = mu ? *mu : IncrementsOf(table.rows);
  if (table.mu.size() != table.N) {
    throw Error(ErrorCode::kDimensionMismatch,
                "number of norms differs from the number of table rows");
  }
  table.lambda = table.rows.back();
  return table;
}

void WriteInnerCsv(std::ostream& out, const InnerEigenstepTable& table,
                   bool pretty) {
  for (const auto& row : table.rows) {
    WriteLine(out, row.size(), pretty, [&](std::size_t m) { return row[m]; });
  }
}

Json OuterToJson(const OuterEigenstepTable& table) {
  Json rows = Json::array();
  for (std::size_t n = 1; n <= table.N; ++n) rows.push_back(table.rows[n]);
  return Json{{"kind", "outer"},
              {"M", table.M},
              {"N", table.N},
              {"mu", table.mu.values()},
              {"lambda", table.lambda},
              {"rows", rows}};
}

OuterEigenstepTable OuterFromJson(const Json& j) {
  try {
    auto steps = j.at("rows").get<std::vector<std::vector<double>>>();
    NormSequence mu = j.contains("mu")
                          ? NormSequence(j.at("mu").get<std::vector<double>>())
                          : IncrementsOf(steps);
    OuterEigenstepTable table =
        OuterEigenstepTable::FromSteps(std::move(steps), std::move(mu));
    if (j.contains("lambda")) {
      table.lambda = j.at("lambda").get<std::vector<double>>();
    }
    if ((j.contains("M") && j.at("M").get<std::size_t>() != table.M) ||
        (j.contains("N") && j.at("N").get<std::size_t>() != table.N)) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "M or N does not match the rows");
    }
    return table;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("table JSON: ") + e.what());
  }
}

Json InnerToJson(const InnerEigenstepTable& table) {
  return Json{{"kind", "inner"},
              {"N", table.N},
              {"mu", table.mu.values()},
              {"lambda", table.lambda},
              {"rows", table.rows}};
}

InnerEigenstepTable InnerFromJson(const Json& j) {
  try {
    InnerEigenstepTable table;
    table.rows = j.at("rows").get<std::vector<std::vector<double>>>();
    table.N = table.rows.size();
    table.mu = j.contains("mu")
                   ? NormSequence(j.at("mu").get<std::vector<double>>())
                   : IncrementsOf(table.rows);
    table.lambda = j.contains("lambda")
                       ? j.at("lambda").get<std::vector<double>>()
                       : (table.rows.empty() ? std::vector<double>{}
                                             : table.rows.back());
    if (j.contains("N") && j.at("N").get<std::size_t>() != table.N) {
      throw Error(ErrorCode::kDimensionMismatch, "N does not match the rows");
    }
    return table;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("table JSON: ") + e.what());
  }
}

Json ReportToJson(const ValidationReport& report) {
  Json j{{"ok", report.ok}};
  if (!report.ok) {
    j["clause"] = report.clause;
    j["n"] = report.n;
    j["m"] = report.m;
    j["message"] = report.message;
  }
  return j;
}

}  // namespace framekit
