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

#ifndef AFFINV_GROUP_HPP_
#define AFFINV_GROUP_HPP_

#include <vector>

#include "affinv/cost.hpp"
#include "affinv/linalg.hpp"

namespace affinv {

// E_ij(lambda): the identity with `lambda` at row i, column j. Indices are
// 1-based, matching the "E i j lambda" text format.
struct ElementaryMatrix {
  int n = 0;
  int i = 0;
  int j = 0;
  double lambda = 0.0;

  // Throws InvalidArgument on i == j or out-of-range indices.
  Matrix to_matrix() const;
  ElementaryMatrix inverse() const { return {n, i, j, -lambda}; }
};

// (A, B) with A B A^-1 B^-1 equal to some target.
struct CommutatorPair {
  InvertibleMatrix a_factor;
  InvertibleMatrix b_factor;
};

// The realized E_ij(lambda). det is exactly 1 (unit triangular).
InvertibleMatrix elementary(int n, int i, int j, double lambda);

// A B A^-1 B^-1.
InvertibleMatrix commutator(const InvertibleMatrix& a, const InvertibleMatrix& b);

// B^T A^T B^-1 A^-1. Lies in the cost kernel subgroup of every affine
// invariant f.
InvertibleMatrix transpose_commutator(const InvertibleMatrix& a, const InvertibleMatrix& b);

// Witnesses E_ij(lambda) as a commutator.
//   n >= 3: [E_ik(lambda), E_kj(1)] with k the smallest index outside {i, j}.
//   n == 2: [D, E_ij(lambda / 3)] with D = diag(2, 1/2) oriented so that
//           D E_ij(mu) D^-1 = E_ij(4 mu); then [D, E_ij(mu)] = E_ij(3 mu).
CommutatorPair elementary_as_commutator(int n, int i, int j, double lambda);

// Product of the realized factors, left to right. Identity for an empty list.
Matrix product(const std::vector<ElementaryMatrix>& factors, int n);

// Determinant gate for decompose_sl.
inline constexpr double kSlDeterminantTolerance = 1e-8;
// Pivots smaller than this are treated as zero and filled in from another row.
inline constexpr double kPivotFloor = 1e-10;

// Writes A (det A = 1) as an ordered product of elementary matrices using
// row-addition elimination only (no swaps, no scalings). Throws
// DeterminantGateError when |det A - 1| > 1e-8 and NotInvertible when a
// pivot cannot be reached.
std::vector<ElementaryMatrix> decompose_sl(const InvertibleMatrix& a);

// A is in K_f = {A : f(A^T A) = f(I)}.
bool kernel_membership(const InvertibleMatrix& a, const CostFunction& f,
                       double rel_tol = kCostTolerance);

}  // namespace affinv

#endif  // AFFINV_GROUP_HPP_
