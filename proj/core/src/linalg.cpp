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

#include "affinv/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "affinv/errors.hpp"
#include "affinv/random.hpp"

namespace affinv {
namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(what) + ": matrix is " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected square");
  }
  if (m.rows() < 1 || m.rows() > kMaxDim) {
    throw DimensionError(std::string(what) + ": dimension " +
                         std::to_string(m.rows()) + " outside [1, " +
                         std::to_string(kMaxDim) + "]");
  }
  if (!m.allFinite()) {
    throw InvalidArgument(std::string(what) + ": non-finite entry");
  }
}

void require_same_dim(int a, int b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" +
                         std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

Matrix symmetrized(const Matrix& r) { return 0.5 * (r + r.transpose()); }

}  // namespace

// ---------------------------------------------------------------------------
// SymPosDefMatrix

SymPosDefMatrix::SymPosDefMatrix(Matrix entries) : entries_(std::move(entries)) {
  require_square(entries_, "SymPosDefMatrix");
  const double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
  const double asym = (entries_ - entries_.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTolerance * scale) {
    throw NotPositiveDefinite("SymPosDefMatrix: asymmetry " +
                              std::to_string(asym) + " exceeds tolerance");
  }
  Eigen::LLT<Matrix> llt(entries_);
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite("SymPosDefMatrix: Cholesky factorization failed");
  }
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(entries_,
                                                  Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) {
    throw NotPositiveDefinite("SymPosDefMatrix: eigenvalue solve failed");
  }
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > kPdEigenRatio * hi)) {
    throw NotPositiveDefinite("SymPosDefMatrix: eigenvalue ratio " +
                              std::to_string(lo / hi) + " below 1e-10");
  }
}

SymPosDefMatrix SymPosDefMatrix::identity(int n) {
  if (n < 1 || n > kMaxDim) throw DimensionError("identity: bad dimension");
  return SymPosDefMatrix(Matrix::Identity(n, n));
}

SymPosDefMatrix SymPosDefMatrix::scalar(int n, double s) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw InvalidArgument("scalar: s must be positive and finite");
  }
  if (n < 1 || n > kMaxDim) throw DimensionError("scalar: bad dimension");
  return SymPosDefMatrix(s * Matrix::Identity(n, n));
}

// ---------------------------------------------------------------------------
// InvertibleMatrix

InvertibleMatrix::InvertibleMatrix(Matrix entries) : entries_(std::move(entries)) {
  require_square(entries_, "InvertibleMatrix");
  const Eigen::JacobiSVD<Matrix> svd(entries_);
  const Vector& sigma = svd.singularValues();
  const double top = sigma(0);
  if (!(top > 0.0)) throw NotInvertible("InvertibleMatrix: zero matrix");
  // prod(sigma_i / sigma_max) = |det| / sigma_max^n, without overflow.
  double ratio = 1.0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) ratio *= sigma(i) / top;
  if (!(ratio >= kInvertibleDetRatio)) {
    throw NotInvertible("InvertibleMatrix: |det| / sigma_max^n = " +
                        std::to_string(ratio) + " below 1e-8");
  }
}

InvertibleMatrix InvertibleMatrix::identity(int n) {
  if (n < 1 || n > kMaxDim) throw DimensionError("identity: bad dimension");
  return InvertibleMatrix(Matrix::Identity(n, n));
}

double InvertibleMatrix::determinant() const {
  return entries_.partialPivLu().determinant();
}

InvertibleMatrix InvertibleMatrix::inverse() const {
  return InvertibleMatrix(entries_.partialPivLu().inverse());
}

InvertibleMatrix InvertibleMatrix::transpose() const {
  return InvertibleMatrix(entries_.transpose());
}

InvertibleMatrix operator*(const InvertibleMatrix& a, const InvertibleMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "operator*");
  return InvertibleMatrix(a.matrix() * b.matrix());
}

// ---------------------------------------------------------------------------
// OrthogonalMatrix

OrthogonalMatrix::OrthogonalMatrix(Matrix entries) : entries_(std::move(entries)) {
  require_square(entries_, "OrthogonalMatrix");
  const Eigen::Index n = entries_.rows();
  const double err =
      (entries_.transpose() * entries_ - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (err > kOrthogonalityTolerance) {
    throw NotOrthogonal("OrthogonalMatrix: ||Q^T Q - I||_max = " +
                        std::to_string(err));
  }
}

OrthogonalMatrix OrthogonalMatrix::identity(int n) {
  if (n < 1 || n > kMaxDim) throw DimensionError("identity: bad dimension");
  return OrthogonalMatrix(Matrix::Identity(n, n));
}

Matrix SvdTriple::reconstruct() const {
  return left.matrix() * singular.asDiagonal() * right.matrix();
}

// ---------------------------------------------------------------------------
// Operations

SymPosDefMatrix congruence(const SymPosDefMatrix& m, const InvertibleMatrix& a) {
  require_same_dim(m.dim(), a.dim(), "congruence");
  const Matrix r = a.matrix().transpose() * m.matrix() * a.matrix();
  return SymPosDefMatrix(symmetrized(r));
}

SymPosDefMatrix sqrt_pd(const SymPosDefMatrix& m) {
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(m.matrix());
  if (eig.info() != Eigen::Success) {
    throw NotPositiveDefinite("sqrt_pd: eigendecomposition failed");
  }
  const Matrix& v = eig.eigenvectors();
  const Vector root = eig.eigenvalues().cwiseSqrt();
  return SymPosDefMatrix(symmetrized(v * root.asDiagonal() * v.transpose()));
}

double log_det(const SymPosDefMatrix& m) {
  const Eigen::LLT<Matrix> llt(m.matrix());
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite("log_det: Cholesky factorization failed");
  }
  const Matrix& l = llt.matrixLLT();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) sum += std::log(l(i, i));
  return 2.0 * sum;
}

double det(const SymPosDefMatrix& m) { return std::exp(log_det(m)); }

double trace(const SymPosDefMatrix& m) { return m.matrix().trace(); }

SvdTriple svd_decompose(const InvertibleMatrix& a) {
  const Eigen::JacobiSVD<Matrix> svd(a.matrix(),
                                     Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success) {
    throw NotInvertible("svd_decompose: SVD did not converge");
  }
  return SvdTriple{OrthogonalMatrix(svd.matrixU()), svd.singularValues(),
                   OrthogonalMatrix(svd.matrixV().transpose())};
}

Vector eigenvalues(const SymPosDefMatrix& m) {
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(m.matrix(),
                                                  Eigen::EigenvaluesOnly);
  return eig.eigenvalues();
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

double relative_frobenius_error(const Matrix& approx, const Matrix& exact) {
  if (approx.rows() != exact.rows() || approx.cols() != exact.cols()) {
    throw DimensionError("relative_frobenius_error: shape mismatch");
  }
  const double denom = std::max(exact.norm(), 1e-300);
  return (approx - exact).norm() / denom;
}

// ---------------------------------------------------------------------------
// Samplers

namespace {

constexpr int kMaxResample = 100;

void require_sampler_dim(int n, const char* what) {
  if (n < 1 || n > kMaxDim) {
    throw DimensionError(std::string(what) + ": dimension " + std::to_string(n) +
                         " outside [1, " + std::to_string(kMaxDim) + "]");
  }
}

}  // namespace

Matrix gaussian_matrix(int n, std::uint64_t seed) {
  require_sampler_dim(n, "gaussian_matrix");
  NormalSource normal(seed);
  Matrix g(n, n);
  // Row-major fill so the draw order does not depend on Eigen's storage.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = normal();
  return g;
}

SymPosDefMatrix random_pd(int n, std::uint64_t seed) {
  require_sampler_dim(n, "random_pd");
  const Matrix g = gaussian_matrix(n, derive_seed(seed, {0x7064}));
  Matrix gram = g.transpose() * g;
  const double shift = 1e-3 * gram.trace() / n;
  gram.diagonal().array() += shift;
  return SymPosDefMatrix(symmetrized(gram));
}

InvertibleMatrix random_gl(int n, std::uint64_t seed) {
  require_sampler_dim(n, "random_gl");
  for (int attempt = 0; attempt < kMaxResample; ++attempt) {
    Matrix g = gaussian_matrix(n, derive_seed(seed, {0x676c, static_cast<std::uint64_t>(attempt)}));
    try {
      return InvertibleMatrix(std::move(g));
    } catch (const NotInvertible&) {
      // resample
    }
  }
  throw NotInvertible("random_gl: invertibility gate failed " +
                      std::to_string(kMaxResample) + " times for n = " +
                      std::to_string(n));
}

OrthogonalMatrix random_orthogonal(int n, std::uint64_t seed) {
  require_sampler_dim(n, "random_orthogonal");
  for (int attempt = 0; attempt < kMaxResample; ++attempt) {
    const Matrix g = gaussian_matrix(n, derive_seed(seed, {0x6f72, static_cast<std::uint64_t>(attempt)}));
    const Eigen::HouseholderQR<Matrix> qr(g);
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    Matrix q = qr.householderQ() * Matrix::Identity(n, n);
    bool degenerate = false;
    for (int j = 0; j < n; ++j) {
      if (r(j, j) == 0.0) degenerate = true;
      if (r(j, j) < 0.0) q.col(j) *= -1.0;
    }
    if (degenerate) continue;
    try {
      return OrthogonalMatrix(std::move(q));
    } catch (const NotOrthogonal&) {
      // resample
    }
  }
  throw NotOrthogonal("random_orthogonal: sampling failed for n = " +
                      std::to_string(n));
}

InvertibleMatrix random_sl(int n, std::uint64_t seed) {
  require_sampler_dim(n, "random_sl");
  for (int attempt = 0; attempt < kMaxResample; ++attempt) {
    const InvertibleMatrix base =
        random_gl(n, derive_seed(seed, {0x736c, static_cast<std::uint64_t>(attempt)}));
    Matrix m = base.matrix();
    m.col(0) /= base.determinant();
    try {
      return InvertibleMatrix(std::move(m));
    } catch (const NotInvertible&) {
      // rescaling a column can break the conditioning gate; resample
    }
  }
  throw NotInvertible("random_sl: sampling failed for n = " + std::to_string(n));
}

double condition_number(const Matrix& a) {
  const Eigen::JacobiSVD<Matrix> svd(a);
  const Vector& sigma = svd.singularValues();
  return sigma(0) / sigma(sigma.size() - 1);
}

namespace {

constexpr int kMaxConditionedDraws = 1000;

template <typename Sampler>
InvertibleMatrix conditioned_draw(int n, std::uint64_t seed, double cap, Sampler&& sampler,
                                  const char* what) {
  if (!(cap >= 1.0)) throw InvalidArgument(std::string(what) + ": max_condition must be >= 1");
  for (int attempt = 0; attempt < kMaxConditionedDraws; ++attempt) {
    InvertibleMatrix a = sampler(n, derive_seed(seed, {static_cast<std::uint64_t>(attempt)}));
    if (condition_number(a.matrix()) <= cap) return a;
  }
  throw NotInvertible(std::string(what) + ": no sample under the condition cap after " +
                      std::to_string(kMaxConditionedDraws) + " draws");
}

}  // namespace

InvertibleMatrix random_gl_conditioned(int n, std::uint64_t seed, double max_condition) {
  return conditioned_draw(n, seed, max_condition, random_gl, "random_gl_conditioned");
}

InvertibleMatrix random_sl_conditioned(int n, std::uint64_t seed, double max_condition) {
  return conditioned_draw(n, seed, max_condition, random_sl, "random_sl_conditioned");
}

}  // namespace affinv
