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

#include "affinv/report.hpp"

#include <sstream>

#include <json.hpp>

#include "affinv/io.hpp"

namespace affinv {
namespace {

using nlohmann::ordered_json;

// Two-space indent plus trailing newline, the layout of every document.
std::string dump(const ordered_json& doc) { return doc.dump(2) + "\n"; }

ordered_json optional_number(const std::optional<int>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json config_json(const TrialConfig& cfg) {
  return ordered_json{{"dims", cfg.dims},
                      {"trials", cfg.trials},
                      {"seed", cfg.master_seed},
                      {"rel_tol", cfg.rel_tol},
                      {"max_condition", cfg.max_condition},
                      {"s_grid",
                       {{"lo", cfg.s_grid.lo}, {"hi", cfg.s_grid.hi}, {"points", cfg.s_grid.points}}}};
}

ordered_json vector_json(const Vector& v) {
  ordered_json out = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

}  // namespace

std::string suite_to_json(const SuiteReport& report) {
  ordered_json checks = ordered_json::array();
  for (const CheckResult& c : report.invariance.checks) {
    checks.push_back({{"name", c.check_name},
                      {"trials_run", c.trials_run},
                      {"failures", c.failures},
                      {"worst_discrepancy", c.worst_discrepancy},
                      {"first_failure_dim", optional_number(c.first_failure_dim)},
                      {"first_failure_trial", optional_number(c.first_failure_trial)}});
  }
  ordered_json counterexamples = ordered_json::array();
  for (const Counterexample& c : report.invariance.counterexamples) {
    ordered_json inputs = ordered_json::object();
    for (const NamedMatrix& m : c.inputs) inputs[m.name] = write_matrix_text(m.value);
    ordered_json entry{{"check", c.check_name},
                       {"dim", c.dim},
                       {"trial", c.trial},
                       {"discrepancy", c.discrepancy},
                       {"inputs", inputs}};
    if (!c.error.empty()) entry["error"] = c.error;
    counterexamples.push_back(std::move(entry));
  }
  const SurjectivityReport& s = report.surjectivity;
  ordered_json uncovered = ordered_json::array();
  for (const UncoveredSample& u : s.uncovered_samples) {
    uncovered.push_back(
        {{"dim", u.dim}, {"trial", u.trial}, {"matrix", write_matrix_text(u.sample)}});
  }
  const ordered_json doc{
      {"schema", kCheckSchema},
      {"cost", report.cost_name},
      {"config", config_json(report.config)},
      {"checks", checks},
      {"counterexamples", counterexamples},
      {"surjectivity",
       {{"samples", s.samples},
        {"covered", s.covered},
        {"covered_fraction", s.covered_fraction()},
        {"non_scalar_samples", s.non_scalar_samples},
        {"non_scalar_covered", s.non_scalar_covered},
        {"non_scalar_covered_fraction", s.non_scalar_covered_fraction()},
        {"passed", s.passed()},
        {"uncovered_samples", uncovered}}},
      {"verdict", report.passed() ? "pass" : "fail"}};
  return dump(doc);
}

std::string suite_to_text(const SuiteReport& report) {
  std::ostringstream out;
  out << "cost " << report.cost_name << "  seed " << report.config.master_seed << "  trials "
      << report.config.trials << "/dim  rel_tol " << format_real(report.config.rel_tol) << "\n";
  for (const CheckResult& c : report.invariance.checks) {
    out << (c.failures == 0 ? "  ok    " : "  FAIL  ") << c.check_name << "  " << c.failures
        << "/" << c.trials_run << " failures, worst " << format_real(c.worst_discrepancy)
        << "\n";
  }
  const SurjectivityReport& s = report.surjectivity;
  out << (s.passed() ? "  ok    " : "  FAIL  ") << "scalar_surjectivity  covered "
      << s.covered << "/" << s.samples << " (non-scalar " << s.non_scalar_covered << "/"
      << s.non_scalar_samples << ")\n";
  for (const Counterexample& c : report.invariance.counterexamples) {
    out << "counterexample " << c.check_name << " n=" << c.dim << " trial=" << c.trial
        << " discrepancy=" << format_real(c.discrepancy) << "\n";
    if (!c.error.empty()) out << "error: " << c.error << "\n";
    for (const NamedMatrix& m : c.inputs) out << m.name << ":\n" << write_matrix_text(m.value);
  }
  out << "verdict " << (report.passed() ? "pass" : "fail") << "\n";
  return out.str();
}

std::string kernel_to_json(const std::string& cost_name, const TrialConfig& cfg,
                           const KernelEstimate& estimate) {
  const char* variant = "Unrecognized";
  if (estimate.outcome == KernelEstimate::Outcome::kTrivial) variant = "Trivial";
  if (estimate.outcome == KernelEstimate::Outcome::kLattice) variant = "Lattice";
  const ordered_json doc{
      {"schema", kKernelSchema},
      {"cost", cost_name},
      {"config", config_json(cfg)},
      {"variant", variant},
      {"a_estimate", estimate.a_estimate ? ordered_json(*estimate.a_estimate) : ordered_json()},
      {"matched_grid_points", estimate.matched_grid_points},
      {"summary", estimate.summary()},
      {"explanation", estimate.explanation}};
  return dump(doc);
}

std::string estimate_to_json(const EstimateResult& result) {
  const ordered_json doc{{"schema", kMcdSchema},
                         {"mean", vector_json(result.mean)},
                         {"subset", result.subset},
                         {"cost", result.cost_value.canonical},
                         {"examined", result.subsets_examined},
                         {"degenerate_skipped", result.degenerate_skipped}};
  return dump(doc);
}

std::string estimate_to_text(const EstimateResult& result) {
  std::ostringstream out;
  out << "mean";
  for (Eigen::Index i = 0; i < result.mean.size(); ++i) out << " " << format_real(result.mean(i));
  out << "\nsubset";
  for (int index : result.subset) out << " " << index;
  out << "\ncost " << format_real(result.cost_value.canonical) << "\nexamined "
      << result.subsets_examined << "\ndegenerate_skipped " << result.degenerate_skipped << "\n";
  return out.str();
}

std::string factors_to_text(const std::vector<ElementaryMatrix>& factors) {
  std::string out;
  for (const ElementaryMatrix& e : factors) {
    out += "E " + std::to_string(e.i) + " " + std::to_string(e.j) + " " + format_real(e.lambda) +
           "\n";
  }
  return out;
}

std::string factors_to_json(const std::vector<ElementaryMatrix>& factors, double residual) {
  ordered_json list = ordered_json::array();
  for (const ElementaryMatrix& e : factors) {
    list.push_back({{"i", e.i}, {"j", e.j}, {"lambda", e.lambda}});
  }
  const ordered_json doc{{"schema", kDecomposeSchema},
                         {"n", factors.empty() ? ordered_json() : ordered_json(factors.front().n)},
                         {"factors", list},
                         {"residual", residual}};
  return dump(doc);
}

std::string witness_to_text(const CommutatorWitness& w) {
  std::ostringstream out;
  out << "E " << w.i << " " << w.j << " " << format_real(w.lambda) << " = [A, B]\n";
  out << "A:\n" << write_matrix_text(w.a) << "B:\n" << write_matrix_text(w.b);
  out << "residual " << format_real(w.residual) << "\n";
  return out.str();
}

std::string witness_to_json(const CommutatorWitness& w) {
  const ordered_json doc{{"schema", kCommutatorSchema},
                         {"n", w.n},
                         {"i", w.i},
                         {"j", w.j},
                         {"lambda", w.lambda},
                         {"A", write_matrix_text(w.a)},
                         {"B", write_matrix_text(w.b)},
                         {"residual", w.residual}};
  return dump(doc);
}

}  // namespace affinv
