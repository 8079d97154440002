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

#include "affinv/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <utility>

#include "affinv/errors.hpp"
#include "affinv/linalg.hpp"
#include "affinv/random.hpp"

namespace affinv {
namespace {

// Stream tags keep the per-trial seeds of different checks disjoint.
enum CheckId : std::uint64_t {
  kOrthogonalId = 1,
  kCommutatorId = 2,
  kSvdId = 3,
  kImplicationId = 4,
  kFactorizationId = 5,
  kSurjectivityId = 6,
};

std::uint64_t trial_seed(const TrialConfig& cfg, CheckId check, int n, int trial,
                         std::uint64_t stream) {
  return derive_seed(cfg.master_seed, {static_cast<std::uint64_t>(check),
                                       static_cast<std::uint64_t>(n),
                                       static_cast<std::uint64_t>(trial), stream});
}

struct TrialOutcome {
  CostValue lhs;
  CostValue rhs;
  std::vector<NamedMatrix> inputs;
};

class CheckAccumulator {
 public:
  CheckAccumulator(std::string name, double rel_tol) : rel_tol_(rel_tol) {
    result_.check_name = std::move(name);
  }

  void record(int n, int trial, const TrialOutcome& outcome) {
    ++result_.trials_run;
    const double gap = discrepancy(outcome.lhs, outcome.rhs);
    if (std::isfinite(gap)) result_.worst_discrepancy = std::max(result_.worst_discrepancy, gap);
    if (equal(outcome.lhs, outcome.rhs, rel_tol_)) return;
    fail(n, trial, gap, outcome.inputs);
  }

  // A trial whose inputs broke a numerical gate. Counted as a failure so
  // that nothing is silently dropped.
  void record_error(int n, int trial, const Error& e, const std::vector<NamedMatrix>& inputs) {
    ++result_.trials_run;
    fail(n, trial, std::numeric_limits<double>::quiet_NaN(), inputs, e.what());
  }

  void append_to(InvarianceReport& report) && {
    report.checks.push_back(std::move(result_));
    for (Counterexample& c : counterexamples_) report.counterexamples.push_back(std::move(c));
  }

 private:
  void fail(int n, int trial, double gap, const std::vector<NamedMatrix>& inputs,
            std::string error = {}) {
    ++result_.failures;
    if (!result_.first_failure_trial) {
      result_.first_failure_trial = trial;
      result_.first_failure_dim = n;
    }
    if (static_cast<int>(counterexamples_.size()) < kMaxCounterexamplesPerCheck) {
      counterexamples_.push_back(
          Counterexample{result_.check_name, n, trial, gap, inputs, std::move(error)});
    }
  }

  double rel_tol_;
  CheckResult result_;
  std::vector<Counterexample> counterexamples_;
};

// Runs `body(n, trial)` for every dimension and trial, feeding outcomes to
// `acc`. `body` returns a TrialOutcome; library errors become failures.
template <typename Body>
void sweep(const TrialConfig& cfg, CheckAccumulator& acc, Body&& body) {
  for (int n : cfg.dims) {
    for (int trial = 0; trial < cfg.trials; ++trial) {
      try {
        acc.record(n, trial, body(n, trial));
      } catch (const Error& e) {
        acc.record_error(n, trial, e, {});
      }
    }
  }
}

InvarianceReport single_check_report(const CostFunction& f, CheckAccumulator&& acc) {
  InvarianceReport report;
  report.cost_name = f.name();
  std::move(acc).append_to(report);
  return report;
}

InvertibleMatrix draw_gl(const TrialConfig& cfg, int n, std::uint64_t seed) {
  return random_gl_conditioned(n, seed, cfg.max_condition);
}

InvertibleMatrix draw_sl(const TrialConfig& cfg, int n, std::uint64_t seed) {
  return random_sl_conditioned(n, seed, cfg.max_condition);
}

SymPosDefMatrix gram(const InvertibleMatrix& a) {
  return congruence(SymPosDefMatrix::identity(a.dim()), a);
}

bool is_scalar(const Matrix& m) {
  const double s = m(0, 0);
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const Matrix scalar = s * Matrix::Identity(m.rows(), m.cols());
  return (m - scalar).cwiseAbs().maxCoeff() <= kMatrixEqualityTolerance * scale;
}

}  // namespace

std::vector<double> ScalarGrid::values() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(points));
  if (points == 1) {
    out.push_back(lo);
    return out;
  }
  const double ratio = std::log(hi / lo);
  for (int i = 0; i < points; ++i) {
    out.push_back(lo * std::exp(ratio * static_cast<double>(i) / (points - 1)));
  }
  return out;
}

void TrialConfig::validate() const {
  if (dims.empty()) throw InvalidArgument("TrialConfig: dims is empty");
  for (int n : dims) {
    if (n < 1 || n > kMaxDim) {
      throw InvalidArgument("TrialConfig: dimension " + std::to_string(n) +
                            " outside [1, " + std::to_string(kMaxDim) + "]");
    }
  }
  if (trials < 1) throw InvalidArgument("TrialConfig: trials must be >= 1");
  if (!(rel_tol > 0.0) || !std::isfinite(rel_tol)) {
    throw InvalidArgument("TrialConfig: rel_tol must be positive");
  }
  if (!(s_grid.lo > 0.0) || !(s_grid.lo < s_grid.hi) || !std::isfinite(s_grid.hi)) {
    throw InvalidArgument("TrialConfig: s_grid needs 0 < lo < hi");
  }
  if (!(max_condition >= 1.0)) {
    throw InvalidArgument("TrialConfig: max_condition must be >= 1");
  }
  if (s_grid.points < 1) throw InvalidArgument("TrialConfig: s_grid.points must be >= 1");
}

bool InvarianceReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.failures == 0; });
}

const CheckResult* InvarianceReport::find(const std::string& check_name) const {
  for (const CheckResult& c : checks)
    if (c.check_name == check_name) return &c;
  return nullptr;
}

void InvarianceReport::merge(InvarianceReport other) {
  if (cost_name.empty()) cost_name = other.cost_name;
  for (CheckResult& c : other.checks) checks.push_back(std::move(c));
  for (Counterexample& c : other.counterexamples) counterexamples.push_back(std::move(c));
}

// ---------------------------------------------------------------------------
// Identity checks

InvarianceReport check_orthogonal_property(const CostFunction& f, const TrialConfig& cfg) {
  cfg.validate();
  CheckAccumulator acc("orthogonal", cfg.rel_tol);
  sweep(cfg, acc, [&](int n, int trial) {
    const InvertibleMatrix a = draw_gl(cfg, n, trial_seed(cfg, kOrthogonalId, n, trial, 0));
    const OrthogonalMatrix q = random_orthogonal(n, trial_seed(cfg, kOrthogonalId, n, trial, 1));
    const SymPosDefMatrix ata = gram(a);
    return TrialOutcome{f(ata), f(congruence(ata, q.as_invertible())),
                        {{"A", a.matrix()}, {"Q", q.matrix()}}};
  });
  return single_check_report(f, std::move(acc));
}

InvarianceReport check_commutator_property(const CostFunction& f, const TrialConfig& cfg) {
  cfg.validate();
  CheckAccumulator acc("commutator", cfg.rel_tol);
  sweep(cfg, acc, [&](int n, int trial) {
    const InvertibleMatrix a = draw_gl(cfg, n, trial_seed(cfg, kCommutatorId, n, trial, 0));
    const InvertibleMatrix b = draw_gl(cfg, n, trial_seed(cfg, kCommutatorId, n, trial, 1));
    const SymPosDefMatrix lhs = congruence(gram(b), a);  // A^T B^T B A
    const SymPosDefMatrix rhs = congruence(gram(a), b);  // B^T A^T A B
    return TrialOutcome{f(lhs), f(rhs), {{"A", a.matrix()}, {"B", b.matrix()}}};
  });
  return single_check_report(f, std::move(acc));
}

InvarianceReport check_svd_collapse(const CostFunction& f, const TrialConfig& cfg) {
  cfg.validate();
  CheckAccumulator acc("svd_collapse", cfg.rel_tol);
  sweep(cfg, acc, [&](int n, int trial) {
    const InvertibleMatrix a = draw_gl(cfg, n, trial_seed(cfg, kSvdId, n, trial, 0));
    const InvertibleMatrix b = draw_gl(cfg, n, trial_seed(cfg, kSvdId, n, trial, 1));
    const SvdTriple sa = svd_decompose(a);
    const SvdTriple sb = svd_decompose(b);
    const Vector product = sb.singular.cwiseProduct(sa.singular);
    const SymPosDefMatrix collapsed(Matrix(product.cwiseAbs2().asDiagonal()));
    return TrialOutcome{f(congruence(gram(b), a)), f(collapsed),
                        {{"A", a.matrix()}, {"B", b.matrix()}}};
  });
  return single_check_report(f, std::move(acc));
}

InvarianceReport check_implication(const CostFunction& f, const TrialConfig& cfg) {
  cfg.validate();
  CheckAccumulator acc("implication", cfg.rel_tol);
  sweep(cfg, acc, [&](int n, int trial) {
    const SymPosDefMatrix m = random_pd(n, trial_seed(cfg, kImplicationId, n, trial, 0));
    const InvertibleMatrix s = draw_sl(cfg, n, trial_seed(cfg, kImplicationId, n, trial, 1));
    const InvertibleMatrix a = draw_gl(cfg, n, trial_seed(cfg, kImplicationId, n, trial, 2));
    const CostValue fm = f(m);
    SymPosDefMatrix partner = congruence(m, s);
    if (!equal(f(partner), fm, cfg.rel_tol)) partner = m;
    return TrialOutcome{f(congruence(m, a)), f(congruence(partner, a)),
                        {{"M", m.matrix()}, {"N", partner.matrix()}, {"A", a.matrix()}}};
  });
  return single_check_report(f, std::move(acc));
}

InvarianceReport check_det_factorization(const CostFunction& f, const TrialConfig& cfg) {
  cfg.validate();
  CheckAccumulator sl_acc("det_factorization.sl_conjugation", cfg.rel_tol);
  CheckAccumulator scalar_acc("det_factorization.scalar_collapse", cfg.rel_tol);
  for (int n : cfg.dims) {
    for (int trial = 0; trial < cfg.trials; ++trial) {
      std::optional<SymPosDefMatrix> m;
      try {
        m = random_pd(n, trial_seed(cfg, kFactorizationId, n, trial, 0));
        const InvertibleMatrix s = draw_sl(cfg, n, trial_seed(cfg, kFactorizationId, n, trial, 1));
        sl_acc.record(n, trial,
                      TrialOutcome{f(congruence(*m, s)), f(*m),
                                   {{"M", m->matrix()}, {"S", s.matrix()}}});
      } catch (const Error& e) {
        sl_acc.record_error(n, trial, e, {});
      }
      if (!m) continue;
      try {
        const double s = std::exp(log_det(*m) / n);
        const SymPosDefMatrix scalar = SymPosDefMatrix::scalar(n, s);
        scalar_acc.record(n, trial,
                          TrialOutcome{f(*m), f(scalar),
                                       {{"M", m->matrix()}, {"sI", scalar.matrix()}}});
      } catch (const Error& e) {
        scalar_acc.record_error(n, trial, e, {{"M", m->matrix()}});
      }
    }
  }
  InvarianceReport report;
  report.cost_name = f.name();
  std::move(sl_acc).append_to(report);
  std::move(scalar_acc).append_to(report);
  return report;
}

// ---------------------------------------------------------------------------
// Surjectivity probe

double SurjectivityReport::covered_fraction() const {
  return samples == 0 ? 0.0 : static_cast<double>(covered) / samples;
}

double SurjectivityReport::non_scalar_covered_fraction() const {
  return non_scalar_samples == 0 ? 0.0
                                 : static_cast<double>(non_scalar_covered) / non_scalar_samples;
}

SurjectivityReport probe_scalar_surjectivity(const CostFunction& f, const TrialConfig& cfg) {
  cfg.validate();
  SurjectivityReport report;
  report.cost_name = f.name();
  const std::vector<double> grid = cfg.s_grid.values();
  for (int n : cfg.dims) {
    std::vector<CostValue> scalar_values;
    scalar_values.reserve(grid.size());
    for (double s : grid) scalar_values.push_back(f(SymPosDefMatrix::scalar(n, s)));

    for (int trial = 0; trial < cfg.trials; ++trial) {
      const SymPosDefMatrix m = random_pd(n, trial_seed(cfg, kSurjectivityId, n, trial, 0));
      const CostValue fm = f(m);
      const bool scalar_sample = is_scalar(m.matrix());
      // Grid refinement: the scalar with det(sI) = det(M).
      bool covered = equal(fm, f(SymPosDefMatrix::scalar(n, std::exp(log_det(m) / n))),
                           cfg.rel_tol);
      for (std::size_t g = 0; !covered && g < scalar_values.size(); ++g) {
        covered = equal(fm, scalar_values[g], cfg.rel_tol);
      }
      ++report.samples;
      if (!scalar_sample) ++report.non_scalar_samples;
      if (covered) {
        ++report.covered;
        if (!scalar_sample) ++report.non_scalar_covered;
      } else if (static_cast<int>(report.uncovered_samples.size()) < kMaxUncoveredSamples) {
        report.uncovered_samples.push_back({n, trial, m.matrix()});
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Kernel estimation

std::string KernelEstimate::summary() const {
  switch (outcome) {
    case Outcome::kTrivial:
      return "Trivial";
    case Outcome::kLattice: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "Lattice a=%.6f", a_estimate.value_or(0.0));
      return buf;
    }
    case Outcome::kUnrecognized:
      break;
  }
  return "Unrecognized";
}

namespace {

KernelEstimate unrecognized(std::string why, int matched = 0) {
  KernelEstimate e;
  e.outcome = KernelEstimate::Outcome::kUnrecognized;
  e.matched_grid_points = matched;
  e.explanation = std::move(why);
  return e;
}

KernelEstimate estimate_kernel_in_dim(const CostFunction& f, int n, double rel_tol,
                                      const KernelScanConfig& scan) {
  const CostValue at_identity = f(SymPosDefMatrix::identity(n));
  if (at_identity.payload) {
    return unrecognized("cost values carry no real representative; the kernel of H is not "
                        "defined for a cost that does not factor through det");
  }
  auto residual = [&](double t) {
    return discrepancy(f(SymPosDefMatrix::scalar(n, std::pow(t, 1.0 / n))), at_identity);
  };

  const int points = scan.points;
  std::vector<double> t(static_cast<std::size_t>(points) + 1);
  std::vector<double> r(t.size());
  t[0] = 1.0;
  r[0] = 0.0;
  for (int i = 1; i <= points; ++i) {
    t[i] = std::pow(scan.t_max, static_cast<double>(i) / points);
    r[i] = residual(t[i]);
  }

  // Kernel points are zeros of the residual; on the grid they show up as
  // exact matches or as local minima.
  std::vector<int> flagged;
  for (int i = 1; i <= points; ++i) {
    const bool equal_to_identity = r[i] <= rel_tol;
    const bool local_min = r[i - 1] > r[i] && (i == points || r[i] <= r[i + 1]) &&
                           r[i] <= scan.drop_tolerance;
    if (equal_to_identity || local_min) flagged.push_back(i);
  }
  const int matched = static_cast<int>(flagged.size());
  if (flagged.empty()) {
    KernelEstimate e;
    e.outcome = KernelEstimate::Outcome::kTrivial;
    e.explanation = "no t in (1, t_max] with f(t^(1/n) I) = f(I)";
    return e;
  }
  if (flagged.front() == 1) {
    return unrecognized("kernel element at the first grid point; the kernel is finer than the "
                        "scan resolution or dense", matched);
  }

  // Golden-section search for the zero around the first flag, in log2 t.
  const auto bracket = [&](int i) {
    return std::pair{std::log2(t[i - 1]), std::log2(t[std::min(i + 1, points)])};
  };
  const auto residual_log2 = [&](double x) { return residual(std::exp2(x)); };
  auto [lo, hi] = bracket(flagged.front());
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double r1 = residual_log2(x1);
  double r2 = residual_log2(x2);
  while (hi - lo > scan.log2_resolution) {
    if (r1 <= r2) {
      hi = x2;
      x2 = x1;
      r2 = r1;
      x1 = hi - inv_phi * (hi - lo);
      r1 = residual_log2(x1);
    } else {
      lo = x1;
      x1 = x2;
      r1 = r2;
      x2 = lo + inv_phi * (hi - lo);
      r2 = residual_log2(x2);
    }
  }
  const double a = 0.5 * (lo + hi);
  const double log2_step = std::log2(scan.t_max) / points;
  if (!(a > log2_step)) {
    return unrecognized("refined kernel constant below the scan resolution", matched);
  }

  // Every flag must sit next to a multiple of a, and every multiple must be a
  // kernel element that was flagged.
  constexpr double kSlack = 1e-9;
  std::vector<bool> multiple_seen;
  const int max_multiple = static_cast<int>(std::floor(std::log2(scan.t_max) / a + kSlack));
  multiple_seen.assign(static_cast<std::size_t>(max_multiple) + 1, false);
  for (int i : flagged) {
    const auto [left, right] = bracket(i);
    const int j = static_cast<int>(std::ceil((left - kSlack) / a));
    if (j < 1 || j * a > right + kSlack) {
      return unrecognized("flag at t = " + std::to_string(t[i]) +
                              " is not a power of the refined lattice generator",
                          matched);
    }
    if (j <= max_multiple) multiple_seen[static_cast<std::size_t>(j)] = true;
  }
  for (int j = 1; j <= max_multiple; ++j) {
    const double tj = std::exp2(j * a);
    const bool in_kernel = equal(f(SymPosDefMatrix::scalar(n, std::pow(tj, 1.0 / n))),
                                 at_identity, rel_tol);
    if (!in_kernel || !multiple_seen[static_cast<std::size_t>(j)]) {
      return unrecognized("multiple " + std::to_string(j) +
                              " of the refined generator is not a kernel element",
                          matched);
    }
  }

  KernelEstimate e;
  e.outcome = KernelEstimate::Outcome::kLattice;
  e.a_estimate = a;
  e.matched_grid_points = matched;
  e.explanation = "lattice kernel verified at " + std::to_string(max_multiple) +
                  " multiple(s) up to t_max";
  return e;
}

}  // namespace

KernelEstimate estimate_kernel(const CostFunction& f, const TrialConfig& cfg,
                               const KernelScanConfig& scan) {
  cfg.validate();
  if (!(scan.t_max > 1.0) || scan.points < 2) {
    throw InvalidArgument("KernelScanConfig: needs t_max > 1 and points >= 2");
  }
  std::optional<KernelEstimate> agreed;
  for (int n : cfg.dims) {
    KernelEstimate e = estimate_kernel_in_dim(f, n, cfg.rel_tol, scan);
    if (e.outcome == KernelEstimate::Outcome::kUnrecognized) {
      e.explanation = "n = " + std::to_string(n) + ": " + e.explanation;
      return e;
    }
    if (!agreed) {
      agreed = std::move(e);
      continue;
    }
    const bool same_kind = agreed->outcome == e.outcome;
    const bool same_a = !e.a_estimate ||
                        std::abs(*e.a_estimate - *agreed->a_estimate) <= 1e-9;
    if (!same_kind || !same_a) {
      return unrecognized("kernel estimates disagree across dimensions",
                          agreed->matched_grid_points);
    }
  }
  return *agreed;
}

SuiteReport run_invariance_suite(const CostFunction& f, const TrialConfig& cfg) {
  cfg.validate();
  SuiteReport suite;
  suite.cost_name = f.name();
  suite.config = cfg;
  suite.invariance.cost_name = f.name();
  suite.invariance.merge(check_implication(f, cfg));
  suite.invariance.merge(check_orthogonal_property(f, cfg));
  suite.invariance.merge(check_commutator_property(f, cfg));
  suite.invariance.merge(check_svd_collapse(f, cfg));
  suite.invariance.merge(check_det_factorization(f, cfg));
  suite.surjectivity = probe_scalar_surjectivity(f, cfg);
  return suite;
}

}  // namespace affinv
