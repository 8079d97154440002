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

#ifndef AFFINV_LINALG_HPP_
#define AFFINV_LINALG_HPP_

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace affinv {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Desk-scale ceiling on every matrix dimension.
inline constexpr int kMaxDim = 64;

// Relative symmetry slack and smallest/largest eigenvalue ratio accepted by
// the positive definite gate.
inline constexpr double kSymmetryTolerance = 1e-10;
inline constexpr double kPdEigenRatio = 1e-10;
// |det| must be at least this fraction of sigma_max^n.
inline constexpr double kInvertibleDetRatio = 1e-8;
inline constexpr double kOrthogonalityTolerance = 1e-10;

// A dense symmetric positive definite matrix. Construction runs the PD gate
// (symmetry, Cholesky success and an eigenvalue-ratio floor), so every live
// value is usable as an element of PD(n).
class SymPosDefMatrix {
 public:
  // Throws DimensionError or NotPositiveDefinite.
  explicit SymPosDefMatrix(Matrix entries);

  static SymPosDefMatrix identity(int n);
  // s * I; s must be positive and finite.
  static SymPosDefMatrix scalar(int n, double s);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const { return entries_; }
  double operator()(int i, int j) const { return entries_(i, j); }

 private:
  Matrix entries_;
};

// An element of GL(n) that passes the conditioning gate
// |det A| >= 1e-8 * sigma_max(A)^n.
class InvertibleMatrix {
 public:
  explicit InvertibleMatrix(Matrix entries);

  static InvertibleMatrix identity(int n);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const { return entries_; }
  double operator()(int i, int j) const { return entries_(i, j); }

  double determinant() const;
  InvertibleMatrix inverse() const;
  InvertibleMatrix transpose() const;

 private:
  Matrix entries_;
};

class OrthogonalMatrix {
 public:
  explicit OrthogonalMatrix(Matrix entries);

  static OrthogonalMatrix identity(int n);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const { return entries_; }
  InvertibleMatrix as_invertible() const { return InvertibleMatrix(entries_); }

 private:
  Matrix entries_;
};

// A = left * diag(singular) * right, singular values nonincreasing.
struct SvdTriple {
  OrthogonalMatrix left;
  Vector singular;
  OrthogonalMatrix right;

  Matrix reconstruct() const;
};

InvertibleMatrix operator*(const InvertibleMatrix& a, const InvertibleMatrix& b);

// A^T M A, symmetrized. Throws DimensionError on mismatch and
// NotPositiveDefinite if round-off destroyed definiteness.
SymPosDefMatrix congruence(const SymPosDefMatrix& m, const InvertibleMatrix& a);

// The unique positive definite square root.
SymPosDefMatrix sqrt_pd(const SymPosDefMatrix& m);

// ln det(M) from the Cholesky factor.
double log_det(const SymPosDefMatrix& m);

// exp(log_det(M)). Meant for small demos; overflows long before kMaxDim.
double det(const SymPosDefMatrix& m);

double trace(const SymPosDefMatrix& m);

SvdTriple svd_decompose(const InvertibleMatrix& a);

// Eigenvalues in increasing order.
Vector eigenvalues(const SymPosDefMatrix& m);

// max_ij |a_ij - b_ij|.
double max_abs_diff(const Matrix& a, const Matrix& b);

// ||a - b||_F / max(||b||_F, tiny).
double relative_frobenius_error(const Matrix& approx, const Matrix& exact);

// Seeded samplers. Every sampler is a pure function of (n, seed).
SymPosDefMatrix random_pd(int n, std::uint64_t seed);
InvertibleMatrix random_gl(int n, std::uint64_t seed);
OrthogonalMatrix random_orthogonal(int n, std::uint64_t seed);
InvertibleMatrix random_sl(int n, std::uint64_t seed);

// sigma_max / sigma_min from a full SVD.
double condition_number(const Matrix& a);

// random_gl / random_sl redrawn until the 2-norm condition number is at most
// max_condition. Attempt t reseeds from (seed, t), so the result is still a
// pure function of (n, seed, max_condition). Throws NotInvertible after 1000
// rejected draws.
InvertibleMatrix random_gl_conditioned(int n, std::uint64_t seed, double max_condition);
InvertibleMatrix random_sl_conditioned(int n, std::uint64_t seed, double max_condition);

// n x n matrix of independent standard normals drawn from `seed`.
Matrix gaussian_matrix(int n, std::uint64_t seed);

}  // namespace affinv

#endif  // AFFINV_LINALG_HPP_
