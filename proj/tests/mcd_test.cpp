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

#include <cmath>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "affinv/errors.hpp"
#include "affinv/random.hpp"
#include "oracles.hpp"

namespace affinv {
namespace {

Dataset load_fixture(const std::string& name) {
  std::ifstream in(std::string(AFFINV_FIXTURE_DIR) + "/" + name);
  EXPECT_TRUE(in.good()) << name;
  return Dataset::read_csv(in);
}

oracle::Dense dense_points(const Dataset& x) { return oracle::to_dense(x.points()); }

Dataset random_dataset(int k, int n, std::uint64_t seed) {
  NormalSource normal(seed);
  Matrix pts(k, n);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < n; ++c) pts(r, c) = normal();
  return Dataset(pts);
}

Dataset trace_fixture() {
  return Dataset::from_rows(
      {{0.4, -0.1}, {-0.9, -1.2}, {0.2, -2.0}, {0.2, -1.0}, {0.0, -0.8}, {-1.4, 2.0}});
}

InvertibleMatrix trace_fixture_map() {
  Matrix a(2, 2);
  a << 0.0, 0.7, 1.4, 0.2;
  return InvertibleMatrix(a);
}

TEST(DatasetTest, Construction) {
  const Dataset x = Dataset::from_rows({{1, 2}, {3, 4}, {5, 6}});
  EXPECT_EQ(x.dim(), 2);
  EXPECT_EQ(x.size(), 3);
  EXPECT_EQ(x.point(1)(0), 3.0);
  EXPECT_THROW(Dataset::from_rows({}), InvalidArgument);
  EXPECT_THROW(Dataset::from_rows({{1, 2}, {3}}), InvalidArgument);
}

TEST(SubsetStatisticsTest, OneDimensional) {
  const Dataset x = load_fixture("mcd_1d.csv");
  ASSERT_EQ(x.size(), 4);
  const IndexList s{0, 1, 2};
  EXPECT_NEAR(subset_mean(x, s)(0), 0.1, 1e-15);
  // ((-0.1)^2 + 0^2 + 0.1^2) / 3
  EXPECT_NEAR(subset_covariance(x, s)(0, 0), 0.02 / 3.0, 1e-15);
  EXPECT_NEAR(subset_covariance(x, s, CovarianceNormalization::kByCountMinusOne)(0, 0), 0.01,
              1e-15);
}

TEST(SubsetStatisticsTest, UnitSimplex) {
  const Dataset x = Dataset::from_rows({{0, 0}, {1, 0}, {0, 1}});
  const SymPosDefMatrix cov = subset_covariance(x, {0, 1, 2});
  EXPECT_NEAR(cov(0, 0), 2.0 / 9.0, 1e-15);
  EXPECT_NEAR(cov(1, 1), 2.0 / 9.0, 1e-15);
  EXPECT_NEAR(cov(0, 1), -1.0 / 9.0, 1e-15);
  EXPECT_NEAR(cov(1, 0), -1.0 / 9.0, 1e-15);
}

TEST(SubsetStatisticsTest, TrivialCases) {
  const Dataset x = random_dataset(6, 3, 8);
  EXPECT_EQ((subset_mean(x, {4}) - x.point(4)).cwiseAbs().maxCoeff(), 0.0);
  const Vector centroid = x.points().colwise().mean().transpose();
  EXPECT_LE((subset_mean(x, {0, 1, 2, 3, 4, 5}) - centroid).cwiseAbs().maxCoeff(), 1e-15);
  const Dataset same = Dataset::from_rows({{1, 2}, {1, 2}, {1, 2}, {1, 2}});
  EXPECT_THROW(subset_covariance(same, {0, 1, 2}), DegenerateSubset);
}

TEST(SubsetStatisticsTest, Errors) {
  const Dataset x = Dataset::from_rows({{0, 0}, {1, 1}, {2, 2}, {0, 1}});
  EXPECT_THROW(subset_covariance(x, {0, 1}), InvalidArgument);     // |S| <= n
  EXPECT_THROW(subset_covariance(x, {0, 1, 2}), DegenerateSubset);  // collinear
  EXPECT_THROW(subset_mean(x, {}), InvalidArgument);
  EXPECT_THROW(subset_mean(x, {0, 7}), InvalidArgument);
}

TEST(BinomialTest, Values) {
  EXPECT_EQ(binomial(4, 3), 4);
  EXPECT_EQ(binomial(20, 10), 184756);
  EXPECT_EQ(binomial(5, 0), 1);
  EXPECT_EQ(binomial(3, 5), 0);
  EXPECT_GT(binomial(200, 100), kMaxSubsets);
}

TEST(McdEstimateTest, OneDimensionalFixture) {
  const Dataset x = load_fixture("mcd_1d.csv");
  const EstimateResult r = mcd_estimate(x, 3, make_det_cost());
  EXPECT_EQ(r.subset, (IndexList{0, 1, 2}));
  EXPECT_EQ(r.subset, oracle::brute_force_mcd(dense_points(x), 3));
  EXPECT_NEAR(r.mean(0), 0.1, 1e-15);
  EXPECT_NEAR(r.cost_value.canonical, 0.02 / 3.0, 1e-15);
  EXPECT_EQ(r.subsets_examined, 4);
  EXPECT_EQ(r.degenerate_skipped, 0);
  ASSERT_TRUE(r.runner_up_cost.has_value());
}

TEST(McdEstimateTest, TwoDimensionalFixture) {
  const Dataset x = load_fixture("mcd_2d.csv");
  ASSERT_EQ(x.dim(), 2);
  const EstimateResult r = mcd_estimate(x, 3, make_det_cost());
  EXPECT_EQ(r.subset, (IndexList{0, 1, 2}));
  EXPECT_EQ(r.subset, oracle::brute_force_mcd(dense_points(x), 3));
  EXPECT_NEAR(r.mean(0), 0.1 / 3.0, 1e-15);
  EXPECT_NEAR(r.mean(1), 0.1 / 3.0, 1e-15);
  // Unit-simplex covariance scaled by 0.1^2.
  EXPECT_NEAR(r.cost_value.canonical, 0.01 * 0.01 * (4.0 / 81.0 - 1.0 / 81.0), 1e-18);
}

TEST(McdEstimateTest, MatchesBruteForceOnRandomData) {
  for (int seed = 0; seed < 40; ++seed) {
    const int n = 1 + seed % 3;
    const int k = 8;
    const int h = n + 2 + seed % 3;
    const Dataset x = random_dataset(k, n, 4000 + seed);
    EXPECT_EQ(mcd_estimate(x, h, make_det_cost()).subset,
              oracle::brute_force_mcd(dense_points(x), h))
        << "seed " << seed;
  }
}

TEST(McdEstimateTest, WholeDatasetWhenHEqualsK) {
  const Dataset x = random_dataset(6, 2, 3);
  const EstimateResult r = mcd_estimate(x, 6, make_det_cost());
  EXPECT_EQ(r.subset, (IndexList{0, 1, 2, 3, 4, 5}));
  EXPECT_EQ(r.subsets_examined, 1);
  EXPECT_FALSE(r.runner_up_cost.has_value());
  EXPECT_LE((r.mean - x.points().colwise().mean().transpose()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(McdEstimateTest, SkipsDegenerateSubsets) {
  // Points 0..2 are collinear; every other triple spans the plane.
  const Dataset x = Dataset::from_rows({{0, 0}, {1, 1}, {2, 2}, {0, 3}, {4, 0}});
  const EstimateResult r = mcd_estimate(x, 3, make_det_cost());
  EXPECT_EQ(r.degenerate_skipped, 1);
  EXPECT_EQ(r.subsets_examined, 10);
  EXPECT_EQ(r.subset, oracle::brute_force_mcd(dense_points(x), 3, 1e-12));
}

TEST(McdEstimateTest, Errors) {
  const Dataset x = random_dataset(5, 2, 1);
  EXPECT_THROW(mcd_estimate(x, 2, make_det_cost()), InvalidArgument);  // h <= n
  EXPECT_THROW(mcd_estimate(x, 6, make_det_cost()), InvalidArgument);  // h > k
  const Dataset line = Dataset::from_rows({{0, 0}, {1, 1}, {2, 2}, {3, 3}});
  EXPECT_THROW(mcd_estimate(line, 3, make_det_cost()), DegenerateSubset);
  const Dataset big = random_dataset(40, 1, 2);
  EXPECT_THROW(mcd_estimate(big, 20, make_det_cost()), InvalidArgument);  // C(40,20) > 1e6
}

TEST(McdEstimateTest, NormalizationDoesNotChangeWinner) {
  for (int seed = 0; seed < 20; ++seed) {
    const Dataset x = random_dataset(7, 2, 600 + seed);
    EXPECT_EQ(mcd_estimate(x, 4, make_det_cost()).subset,
              mcd_estimate(x, 4, make_det_cost(), CovarianceNormalization::kByCountMinusOne).subset);
  }
}

TEST(AffineTransformTest, IdentityAndShift) {
  const Dataset x = random_dataset(5, 2, 12);
  const Dataset same = affine_transform_dataset(x, InvertibleMatrix::identity(2), Vector::Zero(2));
  EXPECT_EQ(max_abs_diff(same.points(), x.points()), 0.0);
  const Vector b = Vector::LinSpaced(2, 3.0, -4.0);
  const Dataset shifted = affine_transform_dataset(x, InvertibleMatrix::identity(2), b);
  const Vector moved = shifted.points().colwise().mean().transpose() -
                       x.points().colwise().mean().transpose();
  EXPECT_LE((moved - b).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_THROW(affine_transform_dataset(x, InvertibleMatrix::identity(3), Vector::Zero(3)),
               DimensionError);
}

TEST(AffineTransformTest, CovarianceTransformsByCongruence) {
  const Dataset x = random_dataset(6, 3, 9);
  const InvertibleMatrix a = random_gl(3, 10);
  const Vector b = Vector::LinSpaced(3, -1.0, 2.0);
  const Dataset y = affine_transform_dataset(x, a, b);
  const IndexList s{0, 2, 3, 5};
  const oracle::Dense ad = oracle::to_dense(a.matrix());
  const oracle::Dense expected = oracle::multiply(
      oracle::multiply(ad, oracle::to_dense(subset_covariance(x, s).matrix())), oracle::transpose(ad));
  EXPECT_LE(oracle::max_abs_diff(oracle::to_dense(subset_covariance(y, s).matrix()), expected),
            1e-12);
  const Vector mean_expected = a.matrix() * subset_mean(x, s) + b;
  EXPECT_LE((subset_mean(y, s) - mean_expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(EquivarianceTest, IdentityTransform) {
  const Dataset x = load_fixture("mcd_2d.csv");
  const EquivarianceCheck c =
      check_equivariance(x, 3, InvertibleMatrix::identity(2), Vector::Zero(2), make_det_cost());
  EXPECT_TRUE(c.equivariant);
  EXPECT_TRUE(c.subsets_agree);
  EXPECT_EQ((c.lhs - c.rhs).cwiseAbs().maxCoeff(), 0.0);
}

TEST(EquivarianceTest, DetCostIsEquivariant) {
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 3;
    const Dataset x = random_dataset(7, n, 20'000 + trial);
    const int h = n + 2;
    const EstimateResult base = mcd_estimate(x, h, make_det_cost());
    // Near-ties can legitimately flip under round-off.
    if (base.runner_up_cost &&
        (*base.runner_up_cost - base.cost_value.canonical) < 1e-6 * base.cost_value.canonical) {
      continue;
    }
    ++checked;
    NormalSource normal(30'000 + trial);
    Vector b(n);
    for (int i = 0; i < n; ++i) b(i) = 3.0 * normal();
    const EquivarianceCheck c = check_equivariance(x, h, random_gl(n, 40'000 + trial), b,
                                                   make_det_cost());
    EXPECT_TRUE(c.equivariant) << "trial " << trial;
    EXPECT_TRUE(c.subsets_agree) << "trial " << trial;
    EXPECT_LE((c.lhs - c.rhs).cwiseAbs().maxCoeff(), kEquivarianceTolerance * (1.0 + c.rhs.norm()));
  }
  EXPECT_GE(checked, 190);
}

TEST(EquivarianceTest, TraceCostBreaksEquivariance) {
  const Dataset x = trace_fixture();
  const InvertibleMatrix a = trace_fixture_map();
  const Vector b = Vector::Zero(2);
  EXPECT_EQ(mcd_estimate(x, 3, make_trace_cost()).subset, (IndexList{0, 3, 4}));
  EXPECT_EQ(mcd_estimate(affine_transform_dataset(x, a, b), 3, make_trace_cost()).subset,
            (IndexList{2, 3, 4}));
  const EquivarianceCheck trace = check_equivariance(x, 3, a, b, make_trace_cost());
  EXPECT_FALSE(trace.equivariant);
  EXPECT_FALSE(trace.subsets_agree);
  const EquivarianceCheck det = check_equivariance(x, 3, a, b, make_det_cost());
  EXPECT_TRUE(det.equivariant);
  EXPECT_TRUE(det.subsets_agree);
}

}  // namespace
}  // namespace affinv
