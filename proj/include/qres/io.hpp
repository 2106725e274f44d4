// Copyright 2026 The qres Authors
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

// JSON file formats for states, operators and channels, plus the CSV writer.
//
//   State      {"dims":[...], "re":[[...]], "im":[[...]]}
//   PureState  {"dims":[...], "amp_re":[...], "amp_im":[...]}
//   Operator   same layout as State
//   Channel    {"in_dims":[...], "out_dims":[...], "kraus":[{"re":..., "im":...}, ...]}

#pragma once

#include "qres/channels.hpp"
#include "qres/roof.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace qres {

using Json = nlohmann::json;

/// Malformed input. line/column are 1-based; 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(what), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Parses JSON text; syntax errors carry the line and column of the failure.
Json parse_json(const std::string& text, const std::string& source = "<input>");
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

Json matrix_to_json(const Matrix& m, const Dims& dims);
Matrix matrix_from_json(const Json& j, Dims* dims_out);

Json to_json(const State& s);
Json to_json(const PureState& psi);
Json to_json(const Operator& op);
Json to_json(const KrausChannel& ch);

/// Accepts either the density-matrix or the amplitude layout.
State state_from_json(const Json& j);
PureState pure_state_from_json(const Json& j);
Operator operator_from_json(const Json& j);
KrausChannel channel_from_json(const Json& j);

/// "%.15g".
std::string format_double(double x);

/// Optional "# <metadata json>" line, then the header and the rows; LF endings.
void write_csv(std::ostream& out, const Json& metadata, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

struct CsvTable {
  Json metadata;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

CsvTable read_csv(std::istream& in);

Json to_json(const FuzzReport& report);

}  // namespace qres
