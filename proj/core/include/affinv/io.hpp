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

#ifndef AFFINV_IO_HPP_
#define AFFINV_IO_HPP_

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "affinv/linalg.hpp"

namespace affinv {

// Matrix text format:
//
//   n
//   m11 m12 ... m1n
//   ...
//   mn1 mn2 ... mnn
//
// Values are whitespace separated; the writer prints 17 significant digits so
// that read(write(M)) == M bit for bit.
std::string write_matrix_text(const Matrix& m);
Matrix read_matrix_text(std::istream& in);
Matrix parse_matrix_text(std::string_view text);

// %.17g formatting of a single value.
std::string format_real(double value);

// Dense rows read from CSV: one point per row, comma separated decimals, an
// optional non-numeric header line. Blank lines are ignored. All rows must
// have the same column count. Throws ParseError with line/column on failure.
std::vector<std::vector<double>> read_csv_rows(std::istream& in);

}  // namespace affinv

#endif  // AFFINV_IO_HPP_
