// Copyright 2026 The affinv Authors
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

#include "affinv/io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "affinv/errors.hpp"

namespace affinv {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view token, double& out) {
  token = trim(token);
  if (token.empty()) return false;
  if (token.front() == '+') token.remove_prefix(1);
  const char* first = token.data();
  const char* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

// Splits a line on whitespace, remembering the 1-based column of each token.
struct Token {
  std::string_view text;
  int column;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) tokens.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return tokens;
}

}  // namespace

std::string format_real(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string write_matrix_text(const Matrix& m) {
  std::string out = std::to_string(m.rows()) + "\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ' ';
      out += format_real(m(i, j));
    }
    out += '\n';
  }
  return out;
}

Matrix read_matrix_text(std::istream& in) {
  std::string line;
  int line_no = 0;
  auto next_content_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!trim(line).empty()) return true;
    }
    return false;
  };

  if (!next_content_line()) throw ParseError("matrix text: empty input", 1, 1);
  const std::vector<Token> header = tokenize(line);
  int n = 0;
  {
    const std::string_view t = header.front().text;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), n);
    if (header.size() != 1 || ec != std::errc() || ptr != t.data() + t.size()) {
      throw ParseError("matrix text: first line must be a single dimension", line_no,
                       header.front().column);
    }
  }
  if (n < 1 || n > kMaxDim) {
    throw ParseError("matrix text: dimension " + std::to_string(n) + " outside [1, " +
                         std::to_string(kMaxDim) + "]",
                     line_no, header.front().column);
  }

  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    if (!next_content_line()) {
      throw ParseError("matrix text: expected " + std::to_string(n) + " rows, got " +
                           std::to_string(i),
                       line_no + 1, 1);
    }
    const std::vector<Token> row = tokenize(line);
    if (static_cast<int>(row.size()) != n) {
      throw ParseError("matrix text: expected " + std::to_string(n) + " values, got " +
                           std::to_string(row.size()),
                       line_no, 1);
    }
    for (int j = 0; j < n; ++j) {
      double v = 0.0;
      if (!parse_double(row[j].text, v)) {
        throw ParseError("matrix text: not a number: '" + std::string(row[j].text) + "'",
                         line_no, row[j].column);
      }
      m(i, j) = v;
    }
  }
  if (next_content_line()) {
    throw ParseError("matrix text: trailing content after " + std::to_string(n) + " rows",
                     line_no, 1);
  }
  return m;
}

Matrix parse_matrix_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_matrix_text(in);
}

std::vector<std::vector<double>> read_csv_rows(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  bool first_content = true;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;

    std::vector<double> values;
    bool numeric = true;
    int bad_column = 0;
    std::string bad_field;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      const std::string_view field =
          std::string_view(line).substr(start, comma == std::string::npos ? std::string::npos
                                                                          : comma - start);
      double v = 0.0;
      if (parse_double(field, v)) {
        values.push_back(v);
      } else if (numeric) {
        numeric = false;
        bad_column = static_cast<int>(values.size()) + 1;
        bad_field = std::string(trim(field));
      }
      if (comma == std::string::npos) break;
      start = comma + 1;
    }

    if (!numeric) {
      if (first_content) {
        first_content = false;  // header line
        continue;
      }
      throw ParseError("csv: not a number: '" + bad_field + "'", line_no, bad_column);
    }
    first_content = false;
    if (rows.empty()) {
      width = values.size();
    } else if (values.size() != width) {
      throw ParseError("csv: expected " + std::to_string(width) + " columns, got " +
                           std::to_string(values.size()),
                       line_no, static_cast<int>(std::min(values.size(), width)) + 1);
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw ParseError("csv: no data rows", line_no == 0 ? 1 : line_no, 1);
  return rows;
}

}  // namespace affinv
