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

// Text formats for frames and eigenstep tables.
//
// Outer table CSV: M lines by N columns, column n holding the spectrum after
// n vectors, written smallest eigenvalue first (the layout of the usual
// MATLAB session). Columns are sorted on input, so either order reads back.
// Inner table CSV: line n holds the n entries of row n.
// Frame CSV: M lines by N columns, column n is f_n.
//
// Lines starting with '#' are comments. Fields are separated by commas or
// whitespace; a field may be a fraction such as 2/3. Numbers are written with
// 17 significant digits, or 4 decimals with `pretty`.

#ifndef FRAMEKIT_IO_HPP_
#define FRAMEKIT_IO_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "framekit/eigensteps.hpp"
#include "framekit/frame.hpp"

namespace framekit {

using Json = nlohmann::ordered_json;

std::string FormatNumber(double value);

/// Parses "1, 2/3, 0.5" (commas or whitespace). Throws ErrorCode::kParse.
std::vector<double> ParseNumberList(std::string_view text);

/// Rows of numbers from CSV text; comment and blank lines are dropped.
std::vector<std::vector<double>> ReadNumberRows(std::istream& in);

Frame ReadFrameCsv(std::istream& in);
void WriteFrameCsv(std::ostream& out, const Frame& frame, bool pretty = false);
Frame FrameFromJson(const Json& j);
Json FrameToJson(const Frame& frame);

/// Without `mu` the norms are the increments of the column sums.
OuterEigenstepTable ReadOuterCsv(std::istream& in,
                                 const std::optional<NormSequence>& mu = {});
void WriteOuterCsv(std::ostream& out, const OuterEigenstepTable& table,
                   bool pretty = false);
InnerEigenstepTable ReadInnerCsv(std::istream& in,
                                 const std::optional<NormSequence>& mu = {});
void WriteInnerCsv(std::ostream& out, const InnerEigenstepTable& table,
                   bool pretty = false);

/// {"kind": "outer", "M", "N", "mu", "rows"}; rows are n = 1..N.
Json OuterToJson(const OuterEigenstepTable& table);
OuterEigenstepTable OuterFromJson(const Json& j);
/// {"kind": "inner", "N", "mu", "rows"}.
Json InnerToJson(const InnerEigenstepTable& table);
InnerEigenstepTable InnerFromJson(const Json& j);

Json ReportToJson(const ValidationReport& report);

}  // namespace framekit

#endif  // FRAMEKIT_IO_HPP_
