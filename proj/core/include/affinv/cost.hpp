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

#ifndef AFFINV_COST_HPP_
#define AFFINV_COST_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "affinv/linalg.hpp"

namespace affinv {

// Default relative tolerance for equality of cost values.
inline constexpr double kCostTolerance = 1e-8;
// Entrywise tolerance for identity_cost equality (matrix equality).
inline constexpr double kMatrixEqualityTolerance = 1e-10;
// Distance below which log2(det)/a is snapped to the nearest integer.
inline constexpr double kQuantizationSnap = 1e-12;

// A point of the codomain S. Values produced by the same cost function share
// a class tag and are compared through their canonical real, which doubles
// as the coset representative. Values that carry a matrix payload (the
// identity map) are compared as matrices instead.
struct CostValue {
  double canonical = 0.0;
  std::string class_tag;
  std::optional<Matrix> payload;
  // When > 1, canonical is the representative in [1, period) of a class of
  // reals modulo multiplication by period, and the interval ends are glued.
  double period = 0.0;
};

// Relative distance between two values: |u - v| / max(1, |u|, |v|) on the
// canonical reals, or the scaled max-entry difference for payload values.
// Periodic values are compared across the seam as well, so 1 and
// period * (1 - eps) are eps apart. Values from different classes are
// infinitely far apart.
double discrepancy(const CostValue& u, const CostValue& v);

// Equality under the tolerance model of the producing cost function. The
// tolerance applies to canonical reals; payload values always use
// kMatrixEqualityTolerance.
bool equal(const CostValue& u, const CostValue& v, double rel_tol = kCostTolerance);

// A subgroup of the multiplicative group (0, inf), described through its
// logarithm: {0} (Trivial) or the lattice a*Z with a > 0, logs taken base 2.
class KernelSpec {
 public:
  enum class Variant { kTrivial, kLattice };

  static KernelSpec trivial();
  // Throws InvalidArgument unless a is positive and finite.
  static KernelSpec lattice(double a);
  // "trivial" | "lattice:<a>". "rationals" (and "rational", "Q") are rejected
  // with UnsupportedKernel: membership in Q cannot be decided on doubles.
  static KernelSpec parse(std::string_view text);

  Variant variant() const { return variant_; }
  // 0 for Trivial.
  double a() const { return a_; }

  std::string to_string() const;

  friend bool operator==(const KernelSpec&, const KernelSpec&) = default;

 private:
  KernelSpec(Variant v, double a) : variant_(v), a_(a) {}

  Variant variant_;
  double a_;
};

// A map f: PD(n) -> S. Immutable; evaluation is pure.
class CostFunction {
 public:
  using Evaluator = std::function<CostValue(const SymPosDefMatrix&)>;

  CostFunction(std::string name, std::optional<KernelSpec> kernel, Evaluator evaluate);

  const std::string& name() const { return name_; }
  // Present for costs built by factored_cost.
  const std::optional<KernelSpec>& kernel() const { return kernel_; }

  CostValue operator()(const SymPosDefMatrix& m) const { return evaluate_(m); }

 private:
  std::string name_;
  std::optional<KernelSpec> kernel_;
  Evaluator evaluate_;
};

// det(M).
CostValue det_cost(const SymPosDefMatrix& m);

// The unique integer k with 2^(a k) det(M) in [1, 2^a), given ln det(M).
std::int64_t quantization_index(double log_det_value, double a);

// 2^(a k) det(M) with k = quantization_index(...).
CostValue quantized_det_cost(const SymPosDefMatrix& m, double a);

// The identity map M -> M. Affine invariant, but its restriction to scalar
// matrices is not onto, and it does not factor through det.
CostValue identity_cost(const SymPosDefMatrix& m);

// trace(M); not affine invariant.
CostValue trace_cost(const SymPosDefMatrix& m);

// f = b o H o det with ker(H) given by `kernel`: det for Trivial, the
// quantized determinant for Lattice(a).
CostFunction factored_cost(const KernelSpec& kernel);

CostFunction make_det_cost();
CostFunction make_quantized_det_cost(double a);
CostFunction make_identity_cost();
CostFunction make_trace_cost();

// "det" | "qdet:<a>" | "trace" | "identity". Throws InvalidArgument.
CostFunction parse_cost_selector(std::string_view selector);

}  // namespace affinv

#endif  // AFFINV_COST_HPP_
