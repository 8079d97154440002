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

#ifndef AFFINV_ERRORS_HPP_
#define AFFINV_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace affinv {

// Base for every error raised by the library. Callers that only care about
// "the input broke a contract" can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// A matrix failed the symmetric positive definite gate.
class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

// A matrix failed the well-conditioned invertibility gate.
class NotInvertible : public Error {
 public:
  using Error::Error;
};

class NotOrthogonal : public Error {
 public:
  using Error::Error;
};

// decompose_sl was handed a matrix whose determinant is not 1.
class DeterminantGateError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Kernel families that cannot be represented in floating point.
class UnsupportedKernel : public Error {
 public:
  using Error::Error;
};

// A subset whose covariance is singular; mcd_estimate skips these.
class DegenerateSubset : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace affinv

#endif  // AFFINV_ERRORS_HPP_
