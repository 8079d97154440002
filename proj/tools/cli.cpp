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

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "affinv/affinv.hpp"

namespace affinv::cli {
namespace {

struct Options {
  std::string cost;
  std::string dims = "1..6";
  int trials = 100;
  std::uint64_t seed = 0;
  double tol = kCostTolerance;
  double max_condition = TrialConfig{}.max_condition;
  std::string input;
  std::string output;
  std::optional<int> h;
  std::string format;
  int n = 0;
  int i = 0;
  int j = 0;
  double lambda = 0.0;
};

// Raised for bad flag values discovered after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised for unreadable or unwritable files.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int parse_int(std::string_view text) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError("--dims: not an integer: '" + std::string(text) + "'");
  }
  return value;
}

TrialConfig trial_config(const Options& o) {
  TrialConfig cfg;
  cfg.dims = parse_dims(o.dims);
  cfg.trials = o.trials;
  cfg.master_seed = o.seed;
  cfg.rel_tol = o.tol;
  cfg.max_condition = o.max_condition;
  try {
    cfg.validate();
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

CostFunction cost_from(const std::string& selector) {
  try {
    return parse_cost_selector(selector);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open input file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.output, std::ios::binary | std::ios::trunc);
  if (!file || !(file << text) || !file.flush()) {
    throw IoError("cannot write output file '" + o.output + "'");
  }
}

bool json_format(const Options& o, const char* fallback) {
  return (o.format.empty() ? std::string(fallback) : o.format) == "json";
}

int run_check(const Options& o, std::ostream& out) {
  const CostFunction f = cost_from(o.cost);
  const SuiteReport report = run_invariance_suite(f, trial_config(o));
  emit(o, json_format(o, "json") ? suite_to_json(report) : suite_to_text(report), out);
  return report.passed() ? kExitOk : kExitPropertyFailure;
}

int run_kernel(const Options& o, std::ostream& out, std::ostream& err) {
  const CostFunction f = cost_from(o.cost);
  const TrialConfig cfg = trial_config(o);
  KernelEstimate estimate;
  const SuiteReport precondition = run_invariance_suite(f, cfg);
  if (!precondition.passed()) {
    estimate.outcome = KernelEstimate::Outcome::kUnrecognized;
    std::string failed;
    for (const CheckResult& c : precondition.invariance.checks) {
      if (c.failures > 0) failed += (failed.empty() ? "" : ", ") + c.check_name;
    }
    if (!precondition.surjectivity.passed()) {
      failed += (failed.empty() ? "" : ", ") + std::string("scalar_surjectivity");
    }
    estimate.explanation = "cost '" + f.name() +
                           "' fails the invariance suite (" + failed +
                           "); it does not factor through det, so ker(H) is undefined";
  } else {
    estimate = estimate_kernel(f, cfg);
  }
  const bool json = json_format(o, "json");
  emit(o, json ? kernel_to_json(f.name(), cfg, estimate) : estimate.summary() + "\n", out);
  if (estimate.outcome == KernelEstimate::Outcome::kUnrecognized) {
    err << "unrecognized kernel: " << estimate.explanation << "\n";
    return kExitUnrecognizedKernel;
  }
  return kExitOk;
}

int run_mcd(const Options& o, std::ostream& out) {
  const CostFunction f = cost_from(o.cost.empty() ? "det" : o.cost);
  std::istringstream in(read_file(o.input));
  const Dataset data = Dataset::read_csv(in);
  const EstimateResult result = mcd_estimate(data, *o.h, f);
  emit(o, json_format(o, "json") ? estimate_to_json(result) : estimate_to_text(result), out);
  return kExitOk;
}

int run_decompose(const Options& o, std::ostream& out, std::ostream& err) {
  const InvertibleMatrix a(parse_matrix_text(read_file(o.input)));
  const std::vector<ElementaryMatrix> factors = decompose_sl(a);
  const double residual = relative_frobenius_error(product(factors, a.dim()), a.matrix());
  if (json_format(o, "text")) {
    emit(o, factors_to_json(factors, residual), out);
  } else {
    emit(o, factors_to_text(factors), out);
    err << "residual " << format_real(residual) << "\n";
  }
  return kExitOk;
}

int run_commutator(const Options& o, std::ostream& out) {
  CommutatorWitness w;
  w.n = o.n;
  w.i = o.i;
  w.j = o.j;
  w.lambda = o.lambda;
  try {
    const CommutatorPair pair = elementary_as_commutator(o.n, o.i, o.j, o.lambda);
    w.a = pair.a_factor.matrix();
    w.b = pair.b_factor.matrix();
    w.residual = max_abs_diff(commutator(pair.a_factor, pair.b_factor).matrix(),
                              elementary(o.n, o.i, o.j, o.lambda).matrix());
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  } catch (const DimensionError& e) {
    throw UsageError(e.what());
  }
  emit(o, json_format(o, "text") ? witness_to_json(w) : witness_to_text(w), out);
  return kExitOk;
}

void add_format(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "text"}));
  sub->add_option("--output", o.output, "Write the report to this file instead of stdout");
}

void add_trial_options(CLI::App* sub, Options& o) {
  sub->add_option("--dims", o.dims, "Dimensions: 1..6, 2,3,5 or 4")->capture_default_str();
  sub->add_option("--trials", o.trials, "Trials per identity and dimension")
      ->capture_default_str();
  sub->add_option("--seed", o.seed, "Master seed")->capture_default_str();
  sub->add_option("--tol", o.tol, "Relative tolerance for cost equality")
      ->capture_default_str();
  sub->add_option("--max-condition", o.max_condition,
                  "Redraw GL/SL samples above this condition number")
      ->capture_default_str();
}

}  // namespace

std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> dims;
  const std::size_t range = text.find("..");
  if (range != std::string::npos) {
    const int lo = parse_int(std::string_view(text).substr(0, range));
    const int hi = parse_int(std::string_view(text).substr(range + 2));
    if (lo > hi) throw UsageError("--dims: empty range '" + text + "'");
    for (int n = lo; n <= hi; ++n) dims.push_back(n);
    return dims;
  }
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    dims.push_back(parse_int(std::string_view(text).substr(
        start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return dims;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"affinv: affine invariant costs on positive definite matrices"};
  app.name("affinv");
  app.require_subcommand(1);
  // -h would collide with mcd's --h.
  app.set_help_flag("--help", "Print this help message and exit");

  CLI::App* check = app.add_subcommand("check", "Run the invariance suite for a cost");
  check->add_option("--cost", o.cost, "det | qdet:<a> | trace | identity")->required();
  add_trial_options(check, o);
  add_format(check, o);

  CLI::App* kernel = app.add_subcommand("kernel", "Estimate ker(H) of a factoring cost");
  kernel->add_option("--cost", o.cost, "det | qdet:<a> | trace | identity")->required();
  add_trial_options(kernel, o);
  add_format(kernel, o);

  CLI::App* mcd = app.add_subcommand("mcd", "Minimum covariance determinant location estimate");
  mcd->add_option("--input", o.input, "CSV dataset, one point per row")->required();
  mcd->add_option("--h", o.h, "Subset size")->required();
  mcd->add_option("--cost", o.cost, "Subset cost (default det)");
  add_format(mcd, o);

  CLI::App* decompose = app.add_subcommand("decompose", "Write an SL(n) matrix as elementary factors");
  decompose->add_option("--input", o.input, "Matrix text file")->required();
  add_format(decompose, o);

  CLI::App* witness = app.add_subcommand("commutator", "Elementary matrix as a commutator");
  witness->add_option("--n", o.n, "Dimension")->required();
  witness->add_option("--i", o.i, "Row index (1-based)")->required();
  witness->add_option("--j", o.j, "Column index (1-based)")->required();
  witness->add_option("--lambda", o.lambda, "Off-diagonal entry")->required();
  add_format(witness, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (check->parsed()) return run_check(o, out);
    if (kernel->parsed()) return run_kernel(o, out, err);
    if (mcd->parsed()) return run_mcd(o, out);
    if (decompose->parsed()) return run_decompose(o, out, err);
    if (witness->parsed()) return run_commutator(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputContract;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputContract;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace affinv::cli
