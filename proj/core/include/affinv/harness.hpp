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

#ifndef AFFINV_HARNESS_HPP_
#define AFFINV_HARNESS_HPP_

// Randomized falsification of the identities an affine invariant cost must
// satisfy. Every check draws its inputs from per-trial seeds derived from
// TrialConfig::master_seed, so a report is a pure function of (f, cfg).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "affinv/cost.hpp"

namespace affinv {

struct ScalarGrid {
  double lo = 1e-3;
  double hi = 1e3;
  int points = 512;

  // Geometric grid lo * (hi/lo)^(i/(points-1)), i = 0..points-1.
  std::vector<double> values() const;
};

struct TrialConfig {
  std::vector<int> dims{1, 2, 3, 4, 5, 6};
  int trials = 1000;  // per identity and per dimension
  std::uint64_t master_seed = 0;
  double rel_tol = kCostTolerance;
  ScalarGrid s_grid;
  // GL(n) and SL(n) draws with a larger 2-norm condition number are redrawn.
  // Round-off in A^T M A grows with cond(A)^2; uncapped draws would turn
  // float error into spurious failures at rel_tol.
  double max_condition = 20.0;

  // Throws InvalidArgument when a field breaks its contract.
  void validate() const;
};

struct NamedMatrix {
  std::string name;
  Matrix value;
};

struct Counterexample {
  std::string check_name;
  int dim = 0;
  int trial = 0;
  double discrepancy = 0.0;
  std::vector<NamedMatrix> inputs;
  // Set when the trial aborted on a numerical gate instead of comparing.
  std::string error;
};

struct CheckResult {
  std::string check_name;
  int trials_run = 0;
  int failures = 0;
  double worst_discrepancy = 0.0;
  // Trial index (within its dimension) of the first failure, if any.
  std::optional<int> first_failure_trial;
  std::optional<int> first_failure_dim;
};

struct InvarianceReport {
  std::string cost_name;
  std::vector<CheckResult> checks;
  std::vector<Counterexample> counterexamples;

  // pass iff every check has zero failures.
  bool passed() const;
  const CheckResult* find(const std::string& check_name) const;
  void merge(InvarianceReport other);
};

// Counterexamples kept per check; the first failure is always recorded.
inline constexpr int kMaxCounterexamplesPerCheck = 3;

// f(A^T A) = f(Q^T A^T A Q), A random GL(n), Q random orthogonal.
InvarianceReport check_orthogonal_property(const CostFunction& f, const TrialConfig& cfg);

// f(A^T B^T B A) = f(B^T A^T A B).
InvarianceReport check_commutator_property(const CostFunction& f, const TrialConfig& cfg);

// f(A^T B^T B A) = f((L2 L1)^T L2 L1) with Li the singular values of A, B.
InvarianceReport check_svd_collapse(const CostFunction& f, const TrialConfig& cfg);

// f(M) = f(N) implies f(A^T M A) = f(A^T N A). Equal-cost pairs are
// constructed as N = S^T M S with S in SL(n) when f accepts that pair, and
// as N = M otherwise.
InvarianceReport check_implication(const CostFunction& f, const TrialConfig& cfg);

// Two sub-checks: f(S^T M S) = f(M) for S in SL(n), and f(M) = f(sI) with
// s = det(M)^(1/n).
InvarianceReport check_det_factorization(const CostFunction& f, const TrialConfig& cfg);

struct UncoveredSample {
  int dim = 0;
  int trial = 0;
  Matrix sample;
};

struct SurjectivityReport {
  std::string cost_name;
  int samples = 0;
  int covered = 0;
  int non_scalar_samples = 0;
  int non_scalar_covered = 0;
  std::vector<UncoveredSample> uncovered_samples;  // capped

  double covered_fraction() const;
  double non_scalar_covered_fraction() const;
  bool passed() const { return covered == samples; }
};

inline constexpr int kMaxUncoveredSamples = 8;

// For cfg.trials random M per dimension: is f(M) = f(sI) for some s on the
// grid refined with the solved scalar s = det(M)^(1/n)?
SurjectivityReport probe_scalar_surjectivity(const CostFunction& f, const TrialConfig& cfg);

struct KernelScanConfig {
  double t_max = 16.0;
  int points = 2048;
  // A grid point is flagged when its residual is a local minimum below this.
  double drop_tolerance = 1e-2;
  // Refinement stops once the bracket is this narrow in log2 t.
  double log2_resolution = 1e-12;
};

struct KernelEstimate {
  enum class Outcome { kTrivial, kLattice, kUnrecognized };

  Outcome outcome = Outcome::kUnrecognized;
  std::optional<double> a_estimate;  // present iff kLattice
  int matched_grid_points = 0;
  std::string explanation;

  // "Trivial", "Lattice a=0.500000" or "Unrecognized".
  std::string summary() const;
};

// Scans t over a geometric grid on (1, t_max] and flags the kernel of H
// through f(t^(1/n) I) = f(I). Flags are bisection-refined; the candidate
// lattice a Z is then verified at every multiple up to t_max. Dense or
// irregular patterns come back as kUnrecognized.
KernelEstimate estimate_kernel(const CostFunction& f, const TrialConfig& cfg,
                               const KernelScanConfig& scan = {});

struct SuiteReport {
  std::string cost_name;
  TrialConfig config;
  InvarianceReport invariance;
  SurjectivityReport surjectivity;

  bool passed() const { return invariance.passed() && surjectivity.passed(); }
};

// All five identity checks plus the surjectivity probe.
SuiteReport run_invariance_suite(const CostFunction& f, const TrialConfig& cfg);

}  // namespace affinv

#endif  // AFFINV_HARNESS_HPP_
