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

#ifndef AFFINV_MCD_HPP_
#define AFFINV_MCD_HPP_

#include <cstdint>
#include <istream>
#include <optional>
#include <vector>

#include "affinv/cost.hpp"
#include "affinv/linalg.hpp"

namespace affinv {

// k points in R^n, one per row.
class Dataset {
 public:
  // Throws InvalidArgument when there are no points or n is out of range.
  explicit Dataset(Matrix points);

  static Dataset from_rows(const std::vector<std::vector<double>>& rows);
  static Dataset read_csv(std::istream& in);

  int dim() const { return static_cast<int>(points_.cols()); }
  int size() const { return static_cast<int>(points_.rows()); }
  const Matrix& points() const { return points_; }
  Vector point(int index) const { return points_.row(index).transpose(); }

 private:
  Matrix points_;
};

using IndexList = std::vector<int>;

enum class CovarianceNormalization { kByCount, kByCountMinusOne };

struct EstimateResult {
  Vector mean;
  IndexList subset;  // strictly increasing, 0-based
  CostValue cost_value;
  std::int64_t subsets_examined = 0;
  // Subsets skipped because their covariance failed the PD gate.
  std::int64_t degenerate_skipped = 0;
  // Canonical cost of the best subset that lost, when one exists.
  std::optional<double> runner_up_cost;
};

// Exhaustive search guard on C(k, h).
inline constexpr std::int64_t kMaxSubsets = 1'000'000;

// Arithmetic mean of the selected points.
Vector subset_mean(const Dataset& x, const IndexList& subset);

// (1/h) sum (x_i - m)(x_i - m)^T over the subset (1/(h-1) with
// kByCountMinusOne). Throws InvalidArgument when |S| <= n and
// DegenerateSubset when the scatter matrix is not positive definite.
SymPosDefMatrix subset_covariance(
    const Dataset& x, const IndexList& subset,
    CovarianceNormalization norm = CovarianceNormalization::kByCount);

// C(k, h), saturating at INT64_MAX.
std::int64_t binomial(int k, int h);

// Minimum covariance determinant location estimate (generalized to any cost):
// the mean of the h-subset whose covariance minimizes f's canonical value.
// Subsets are enumerated in lexicographic order; degenerate ones are skipped;
// ties within kCostTolerance go to the lexicographically smallest subset.
EstimateResult mcd_estimate(
    const Dataset& x, int h, const CostFunction& f,
    CovarianceNormalization norm = CovarianceNormalization::kByCount);

// x_i -> A x_i + b.
Dataset affine_transform_dataset(const Dataset& x, const InvertibleMatrix& a, const Vector& b);

struct EquivarianceCheck {
  bool equivariant = false;
  Vector lhs;  // T(A X + b)
  Vector rhs;  // A T(X) + b
  bool subsets_agree = false;
};

inline constexpr double kEquivarianceTolerance = 1e-8;

EquivarianceCheck check_equivariance(const Dataset& x, int h, const InvertibleMatrix& a,
                                     const Vector& b, const CostFunction& f);

}  // namespace affinv

#endif  // AFFINV_MCD_HPP_
