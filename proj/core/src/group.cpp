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

#include "affinv/group.hpp"

#include <cmath>
#include <string>

#include "affinv/errors.hpp"

namespace affinv {
namespace {

void check_indices(int n, int i, int j) {
  if (n < 1 || n > kMaxDim) throw DimensionError("elementary: bad dimension");
  if (i < 1 || i > n || j < 1 || j > n) {
    throw InvalidArgument("elementary: indices (" + std::to_string(i) + ", " +
                          std::to_string(j) + ") outside [1, " + std::to_string(n) + "]");
  }
  if (i == j) throw InvalidArgument("elementary: i == j is not an elementary matrix");
}

void require_same_dim(const InvertibleMatrix& a, const InvertibleMatrix& b,
                      const char* what) {
  if (a.dim() != b.dim()) {
    throw DimensionError(std::string(what) + ": dimension mismatch");
  }
}

}  // namespace

Matrix ElementaryMatrix::to_matrix() const {
  check_indices(n, i, j);
  Matrix m = Matrix::Identity(n, n);
  m(i - 1, j - 1) = lambda;
  return m;
}

InvertibleMatrix elementary(int n, int i, int j, double lambda) {
  return InvertibleMatrix(ElementaryMatrix{n, i, j, lambda}.to_matrix());
}

InvertibleMatrix commutator(const InvertibleMatrix& a, const InvertibleMatrix& b) {
  require_same_dim(a, b, "commutator");
  const Matrix a_inv = a.matrix().partialPivLu().inverse();
  const Matrix b_inv = b.matrix().partialPivLu().inverse();
  return InvertibleMatrix(a.matrix() * b.matrix() * a_inv * b_inv);
}

InvertibleMatrix transpose_commutator(const InvertibleMatrix& a, const InvertibleMatrix& b) {
  require_same_dim(a, b, "transpose_commutator");
  const Matrix a_inv = a.matrix().partialPivLu().inverse();
  const Matrix b_inv = b.matrix().partialPivLu().inverse();
  return InvertibleMatrix(b.matrix().transpose() * a.matrix().transpose() * b_inv * a_inv);
}

CommutatorPair elementary_as_commutator(int n, int i, int j, double lambda) {
  check_indices(n, i, j);
  if (n < 2) throw DimensionError("elementary_as_commutator: needs n >= 2");
  if (n >= 3) {
    int k = 1;
    while (k == i || k == j) ++k;
    return CommutatorPair{elementary(n, i, k, lambda), elementary(n, k, j, 1.0)};
  }
  Matrix d = Matrix::Zero(2, 2);
  d(i - 1, i - 1) = 2.0;
  d(j - 1, j - 1) = 0.5;
  return CommutatorPair{InvertibleMatrix(d), elementary(2, i, j, lambda / 3.0)};
}

Matrix product(const std::vector<ElementaryMatrix>& factors, int n) {
  if (n < 1 || n > kMaxDim) throw DimensionError("product: bad dimension");
  Matrix p = Matrix::Identity(n, n);
  for (const ElementaryMatrix& e : factors) {
    if (e.n != n) throw DimensionError("product: factor dimension mismatch");
    check_indices(e.n, e.i, e.j);
    // Right-multiplying by E_ij(l) adds l * column i to column j.
    p.col(e.j - 1) += e.lambda * p.col(e.i - 1);
  }
  return p;
}

std::vector<ElementaryMatrix> decompose_sl(const InvertibleMatrix& a) {
  const double d = a.determinant();
  if (!(std::abs(d - 1.0) <= kSlDeterminantTolerance)) {
    throw DeterminantGateError("decompose_sl: det = " + std::to_string(d) +
                               ", expected 1 within 1e-8");
  }
  const int n = a.dim();
  Matrix w = a.matrix();
  // Row operations applied so far, as E_rs(c) meaning row r += c * row s.
  // W_final = O_m ... O_1 A, so A = O_1^-1 ... O_m^-1 (W_final = I).
  std::vector<ElementaryMatrix> inverses;
  auto add_row = [&](int target, int source, double c) {
    if (c == 0.0) return;
    w.row(target) += c * w.row(source);
    inverses.push_back(ElementaryMatrix{n, target + 1, source + 1, -c});
  };
  auto largest_below = [&](int col) {
    int best = -1;
    double best_abs = 0.0;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(w(r, col)) > best_abs) {
        best_abs = std::abs(w(r, col));
        best = r;
      }
    }
    return std::pair{best, best_abs};
  };

  // Forward sweep: unit pivots and zeros below, columns 0..n-2.
  for (int c = 0; c + 1 < n; ++c) {
    auto [r, r_abs] = largest_below(c);
    if (std::abs(w(c, c)) <= kPivotFloor) {
      if (r < 0 || r_abs <= kPivotFloor) {
        throw NotInvertible("decompose_sl: pivot in column " + std::to_string(c + 1) +
                            " unreachable");
      }
      add_row(c, r, 1.0);
    }
    if (w(c, c) != 1.0) {
      // Needs a helper row below with a usable entry in this column.
      std::tie(r, r_abs) = largest_below(c);
      if (r < 0 || r_abs <= kPivotFloor) {
        add_row(c + 1, c, 1.0);
        r = c + 1;
      }
      add_row(c, r, (1.0 - w(c, c)) / w(r, c));
    }
    for (int below = c + 1; below < n; ++below) add_row(below, c, -w(below, c));
  }

  // Back sweep: clear above the diagonal. The last pivot equals det(A) up to
  // round-off and is absorbed as exactly 1.
  for (int c = n - 1; c >= 1; --c) {
    const double pivot = w(c, c);
    for (int above = 0; above < c; ++above) add_row(above, c, -w(above, c) / pivot);
  }
  return inverses;
}

bool kernel_membership(const InvertibleMatrix& a, const CostFunction& f, double rel_tol) {
  const SymPosDefMatrix gram = congruence(SymPosDefMatrix::identity(a.dim()), a);
  return equal(f(gram), f(SymPosDefMatrix::identity(a.dim())), rel_tol);
}

}  // namespace affinv
