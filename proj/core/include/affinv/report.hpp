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

#ifndef AFFINV_REPORT_HPP_
#define AFFINV_REPORT_HPP_

// JSON and plain-text renderings of the harness, kernel, MCD and group
// results. The JSON layouts are documented in docs/report-schema.md; every
// document carries a "schema" field and no timestamps, so equal inputs give
// byte-identical output.

#include <string>
#include <vector>

#include "affinv/group.hpp"
#include "affinv/harness.hpp"
#include "affinv/mcd.hpp"

namespace affinv {

inline constexpr const char* kCheckSchema = "affinv.check/1";
inline constexpr const char* kKernelSchema = "affinv.kernel/1";
inline constexpr const char* kMcdSchema = "affinv.mcd/1";
inline constexpr const char* kDecomposeSchema = "affinv.decompose/1";
inline constexpr const char* kCommutatorSchema = "affinv.commutator/1";

std::string suite_to_json(const SuiteReport& report);
std::string suite_to_text(const SuiteReport& report);

std::string kernel_to_json(const std::string& cost_name, const TrialConfig& cfg,
                           const KernelEstimate& estimate);

std::string estimate_to_json(const EstimateResult& result);
std::string estimate_to_text(const EstimateResult& result);

// "E i j lambda" per factor, lambda with 17 significant digits.
std::string factors_to_text(const std::vector<ElementaryMatrix>& factors);
std::string factors_to_json(const std::vector<ElementaryMatrix>& factors, double residual);

struct CommutatorWitness {
  int n = 0;
  int i = 0;
  int j = 0;
  double lambda = 0.0;
  Matrix a;
  Matrix b;
  double residual = 0.0;  // max |[A, B] - E_ij(lambda)|
};

std::string witness_to_text(const CommutatorWitness& w);
std::string witness_to_json(const CommutatorWitness& w);

}  // namespace affinv

#endif  // AFFINV_REPORT_HPP_
