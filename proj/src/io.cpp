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

#include "qres/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace qres {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field \"") + key + "\"");
  return *it;
}

Dims dims_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("dims must be a nonempty array");
  Dims d;
  for (const auto& x : j) {
    if (!x.is_number_unsigned() || x.get<std::size_t>() == 0) {
      throw ParseError("dims entries must be positive integers");
    }
    d.push_back(x.get<std::size_t>());
  }
  return d;
}

double number(const Json& x) {
  if (!x.is_number()) throw ParseError("expected a number");
  return x.get<double>();
}

Matrix real_matrix(const Json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw ParseError(std::string(what) + " must be a nonempty 2-D array");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array()) throw ParseError(std::string(what) + " must be a 2-D array");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ParseError(std::string(what) + " rows must all have the same length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = number(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

Json real_rows(const Matrix& m, bool imag) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(imag ? m(r, c).imag() : m(r, c).real());
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix complex_matrix(const Json& j) {
  const Matrix re = real_matrix(field(j, "re"), "re");
  const Matrix im = real_matrix(field(j, "im"), "im");
  if (re.rows() != im.rows() || re.cols() != im.cols()) {
    throw ParseError("re and im must have the same shape");
  }
  return re.real().cast<cplx>() + cplx(0.0, 1.0) * im.real().cast<cplx>();
}

}  // namespace

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::ostringstream msg;
    msg << source << ":" << line << ":" << column << ": malformed JSON";
    throw ParseError(msg.str(), line, column);
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str(), path);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << text;
  if (!out) throw ParseError("write failed for " + path);
}

Json matrix_to_json(const Matrix& m, const Dims& dims) {
  return Json{{"dims", dims}, {"re", real_rows(m, false)}, {"im", real_rows(m, true)}};
}

Matrix matrix_from_json(const Json& j, Dims* dims_out) {
  const Dims dims = dims_from_json(field(j, "dims"));
  Matrix m = complex_matrix(j);
  if (m.rows() != m.cols()) throw ParseError("matrix must be square");
  if (product(dims) != static_cast<std::size_t>(m.rows())) {
    throw ParseError("product of dims does not match the matrix size");
  }
  if (dims_out) *dims_out = dims;
  return m;
}

Json to_json(const State& s) { return matrix_to_json(s.rho(), s.dims()); }

Json to_json(const Operator& op) { return matrix_to_json(op.matrix(), op.dims()); }

Json to_json(const PureState& psi) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i) {
    re.push_back(psi.amplitudes()(i).real());
    im.push_back(psi.amplitudes()(i).imag());
  }
  return Json{{"dims", psi.dims()}, {"amp_re", re}, {"amp_im", im}};
}

Json to_json(const KrausChannel& ch) {
  Json ops = Json::array();
  for (const auto& k : ch.kraus_ops()) {
    ops.push_back(Json{{"re", real_rows(k, false)}, {"im", real_rows(k, true)}});
  }
  return Json{{"in_dims", ch.input_dims()}, {"out_dims", ch.output_dims()}, {"kraus", ops}};
}

PureState pure_state_from_json(const Json& j) {
  const Dims dims = dims_from_json(field(j, "dims"));
  const Json& re = field(j, "amp_re");
  const Json& im = field(j, "amp_im");
  if (!re.is_array() || !im.is_array() || re.size() != im.size()) {
    throw ParseError("amp_re and amp_im must be arrays of equal length");
  }
  if (re.size() != product(dims)) throw ParseError("amplitude count does not match dims");
  Vector v(static_cast<Eigen::Index>(re.size()));
  for (std::size_t i = 0; i < re.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = cplx(number(re[i]), number(im[i]));
  }
  return PureState(std::move(v), dims);
}

State state_from_json(const Json& j) {
  if (j.is_object() && j.contains("amp_re")) return State::from_pure(pure_state_from_json(j));
  Dims dims;
  Matrix rho = matrix_from_json(j, &dims);
  return State(std::move(rho), dims);
}

Operator operator_from_json(const Json& j) {
  Dims dims;
  Matrix m = matrix_from_json(j, &dims);
  return Operator(std::move(m), dims);
}

KrausChannel channel_from_json(const Json& j) {
  const Dims in = dims_from_json(field(j, "in_dims"));
  const Dims out = dims_from_json(field(j, "out_dims"));
  const Json& ops = field(j, "kraus");
  if (!ops.is_array() || ops.empty()) throw ParseError("kraus must be a nonempty array");
  std::vector<Matrix> kraus;
  for (const auto& k : ops) kraus.push_back(complex_matrix(k));
  return KrausChannel(std::move(kraus), in, out);
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

void write_csv(std::ostream& out, const Json& metadata, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  if (!metadata.is_null()) out << "# " << metadata.dump() << '\n';
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw DimensionError("CSV row width does not match header");
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
}

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  bool have_header = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0 && !have_header) {
      t.metadata = parse_json(line.substr(2), "csv metadata");
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!have_header) {
      t.header = cells;
      have_header = true;
      continue;
    }
    if (cells.size() != t.header.size()) {
      throw ParseError("CSV row width does not match header", line_no, 1);
    }
    std::vector<double> row;
    for (const auto& c : cells) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(c, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != c.size() || c.empty()) throw ParseError("CSV cell is not a number", line_no, 1);
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  if (!have_header) throw ParseError("CSV has no header row");
  return t;
}

Json to_json(const FuzzReport& report) {
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    Json kraus = Json::array();
    for (const auto& k : v.kraus) {
      kraus.push_back(Json{{"re", real_rows(k, false)}, {"im", real_rows(k, true)}});
    }
    violations.push_back(Json{{"seed_index", v.seed_index},
                              {"psi", to_json(v.psi)},
                              {"kraus", kraus},
                              {"lhs", v.lhs},
                              {"rhs", v.rhs}});
  }
  return Json{{"strategy", report.strategy},
              {"trials", report.trials},
              {"seed", report.seed},
              {"tolerances", Json{{"monotonicity", report.tolerance}}},
              {"violations", violations}};
}

}  // namespace qres
