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

#include "affinv/mcd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "affinv/errors.hpp"
#include "affinv/io.hpp"

namespace affinv {
namespace {

void validate_subset(const Dataset& x, const IndexList& subset) {
  if (subset.empty()) throw InvalidArgument("subset: empty index list");
  for (int index : subset) {
    if (index < 0 || index >= x.size()) {
      throw InvalidArgument("subset: index " + std::to_string(index) + " outside [0, " +
                            std::to_string(x.size()) + ")");
    }
  }
}

// Advances `c` (strictly increasing, values in [0, k)) to the next
// h-combination in lexicographic order. Returns false after the last one.
bool next_combination(IndexList& c, int k) {
  const int h = static_cast<int>(c.size());
  int pos = h - 1;
  while (pos >= 0 && c[pos] == k - h + pos) --pos;
  if (pos < 0) return false;
  ++c[pos];
  for (int i = pos + 1; i < h; ++i) c[i] = c[i - 1] + 1;
  return true;
}

}  // namespace

Dataset::Dataset(Matrix points) : points_(std::move(points)) {
  if (points_.rows() < 1) throw InvalidArgument("Dataset: needs at least one point");
  if (points_.cols() < 1 || points_.cols() > kMaxDim) {
    throw InvalidArgument("Dataset: point dimension " + std::to_string(points_.cols()) +
                          " outside [1, " + std::to_string(kMaxDim) + "]");
  }
  if (!points_.allFinite()) throw InvalidArgument("Dataset: non-finite coordinate");
}

Dataset Dataset::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw InvalidArgument("Dataset: needs at least one point");
  const std::size_t n = rows.front().size();
  Matrix points(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != n) {
      throw InvalidArgument("Dataset: row " + std::to_string(i) + " has " +
                            std::to_string(rows[i].size()) + " coordinates, expected " +
                            std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) {
      points(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return Dataset(std::move(points));
}

Dataset Dataset::read_csv(std::istream& in) { return from_rows(read_csv_rows(in)); }

Vector subset_mean(const Dataset& x, const IndexList& subset) {
  validate_subset(x, subset);
  Vector sum = Vector::Zero(x.dim());
  for (int index : subset) sum += x.points().row(index).transpose();
  return sum / static_cast<double>(subset.size());
}

SymPosDefMatrix subset_covariance(const Dataset& x, const IndexList& subset,
                                  CovarianceNormalization norm) {
  validate_subset(x, subset);
  const int h = static_cast<int>(subset.size());
  if (h <= x.dim()) {
    throw InvalidArgument("subset_covariance: " + std::to_string(h) + " points in R^" +
                          std::to_string(x.dim()) + " always give a singular covariance");
  }
  const Vector m = subset_mean(x, subset);
  Matrix scatter = Matrix::Zero(x.dim(), x.dim());
  for (int index : subset) {
    const Vector d = x.points().row(index).transpose() - m;
    scatter.noalias() += d * d.transpose();
  }
  const double denom = norm == CovarianceNormalization::kByCount ? h : h - 1;
  scatter /= denom;
  scatter = 0.5 * (scatter + scatter.transpose());
  try {
    return SymPosDefMatrix(std::move(scatter));
  } catch (const NotPositiveDefinite& e) {
    throw DegenerateSubset(std::string("subset_covariance: degenerate subset: ") + e.what());
  }
}

std::int64_t binomial(int k, int h) {
  if (h < 0 || k < 0 || h > k) return 0;
  h = std::min(h, k - h);
  // C(k, i) = C(k, i-1) * (k - i + 1) / i stays integral at every step.
  std::int64_t c = 1;
  for (int i = 1; i <= h; ++i) {
    const std::int64_t num = k - i + 1;
    if (c > std::numeric_limits<std::int64_t>::max() / num) {
      return std::numeric_limits<std::int64_t>::max();
    }
    c = c * num / i;
  }
  return c;
}

EstimateResult mcd_estimate(const Dataset& x, int h, const CostFunction& f,
                            CovarianceNormalization norm) {
  const int k = x.size();
  const int n = x.dim();
  if (h < n + 1 || h > k) {
    throw InvalidArgument("mcd_estimate: h = " + std::to_string(h) + " outside [n + 1, k] = [" +
                          std::to_string(n + 1) + ", " + std::to_string(k) + "]");
  }
  const std::int64_t total = binomial(k, h);
  if (total > kMaxSubsets) {
    throw InvalidArgument("mcd_estimate: C(" + std::to_string(k) + ", " + std::to_string(h) +
                          ") subsets exceed the exhaustive-search guard of " +
                          std::to_string(kMaxSubsets));
  }

  EstimateResult result;
  std::optional<CostValue> best;
  IndexList current(static_cast<std::size_t>(h));
  std::iota(current.begin(), current.end(), 0);
  do {
    ++result.subsets_examined;
    CostValue value;
    try {
      value = f(subset_covariance(x, current, norm));
    } catch (const DegenerateSubset&) {
      ++result.degenerate_skipped;
      continue;
    }
    if (!best) {
      best = std::move(value);
      result.subset = current;
      continue;
    }
    // Earlier subsets are lexicographically smaller, so a tie keeps `best`.
    const bool tie = discrepancy(value, *best) <= kCostTolerance;
    if (!tie && value.canonical < best->canonical) {
      result.runner_up_cost = best->canonical;
      best = std::move(value);
      result.subset = current;
    } else if (!result.runner_up_cost || value.canonical < *result.runner_up_cost) {
      result.runner_up_cost = value.canonical;
    }
  } while (next_combination(current, k));

  if (!best) {
    throw DegenerateSubset("mcd_estimate: all " + std::to_string(total) +
                           " subsets are degenerate");
  }
  result.cost_value = std::move(*best);
  result.mean = subset_mean(x, result.subset);
  return result;
}

Dataset affine_transform_dataset(const Dataset& x, const InvertibleMatrix& a, const Vector& b) {
  if (a.dim() != x.dim() || b.size() != x.dim()) {
    throw DimensionError("affine_transform_dataset: dimension mismatch");
  }
  // Rows are points: (A x + b)^T = x^T A^T + b^T.
  Matrix moved = x.points() * a.matrix().transpose();
  moved.rowwise() += b.transpose();
  return Dataset(std::move(moved));
}

EquivarianceCheck check_equivariance(const Dataset& x, int h, const InvertibleMatrix& a,
                                     const Vector& b, const CostFunction& f) {
  const EstimateResult original = mcd_estimate(x, h, f);
  const EstimateResult moved = mcd_estimate(affine_transform_dataset(x, a, b), h, f);
  EquivarianceCheck check;
  check.lhs = moved.mean;
  check.rhs = a.matrix() * original.mean + b;
  check.subsets_agree = original.subset == moved.subset;
  const double scale = std::max(1.0, check.rhs.cwiseAbs().maxCoeff());
  const double gap = (check.lhs - check.rhs).cwiseAbs().maxCoeff();
  check.equivariant = check.subsets_agree && gap <= kEquivarianceTolerance * scale;
  return check;
}

}  // namespace affinv
