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

#include "affinv/cost.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "affinv/errors.hpp"
#include "affinv/io.hpp"

namespace affinv {
namespace {

std::optional<double> parse_positive(std::string_view text) {
  if (text.empty()) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  if (!(v > 0.0) || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::string qdet_tag(double a) { return "qdet:" + format_real(a); }

// FNV-1a over the bit patterns of n and every entry, folded into [0, 1).
double fingerprint(const Matrix& m) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::uint64_t word) {
    for (int b = 0; b < 8; ++b) {
      h ^= (word >> (8 * b)) & 0xffu;
      h *= 0x100000001b3ULL;
    }
  };
  feed(static_cast<std::uint64_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double v = m(i, j) == 0.0 ? 0.0 : m(i, j);  // fold -0.0
      feed(std::bit_cast<std::uint64_t>(v));
    }
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace

double discrepancy(const CostValue& u, const CostValue& v) {
  if (u.class_tag != v.class_tag) return std::numeric_limits<double>::infinity();
  if (u.payload.has_value() != v.payload.has_value()) {
    return std::numeric_limits<double>::infinity();
  }
  if (u.payload) {
    const Matrix& a = *u.payload;
    const Matrix& b = *v.payload;
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
      return std::numeric_limits<double>::infinity();
    }
    const double scale =
        std::max({1.0, a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff()});
    return (a - b).cwiseAbs().maxCoeff() / scale;
  }
  const auto relative = [](double x, double y) {
    return std::abs(x - y) / std::max({1.0, std::abs(x), std::abs(y)});
  };
  double d = relative(u.canonical, v.canonical);
  if (u.period > 1.0 && u.period == v.period) {
    d = std::min({d, relative(u.canonical * u.period, v.canonical),
                  relative(u.canonical, v.canonical * v.period)});
  }
  return d;
}

bool equal(const CostValue& u, const CostValue& v, double rel_tol) {
  const double tol = u.payload ? kMatrixEqualityTolerance : rel_tol;
  return discrepancy(u, v) <= tol;
}

// ---------------------------------------------------------------------------
// KernelSpec

KernelSpec KernelSpec::trivial() { return KernelSpec(Variant::kTrivial, 0.0); }

KernelSpec KernelSpec::lattice(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw InvalidArgument("KernelSpec::lattice: a must be positive and finite");
  }
  return KernelSpec(Variant::kLattice, a);
}

KernelSpec KernelSpec::parse(std::string_view text) {
  if (text == "trivial") return trivial();
  if (text == "rationals" || text == "rational" || text == "Q") {
    throw UnsupportedKernel(
        "KernelSpec: the rationals are a dense subgroup and membership in Q "
        "cannot be decided in floating point");
  }
  constexpr std::string_view prefix = "lattice:";
  if (text.starts_with(prefix)) {
    if (auto a = parse_positive(text.substr(prefix.size()))) return lattice(*a);
    throw InvalidArgument("KernelSpec: lattice constant must be a positive decimal");
  }
  throw InvalidArgument("KernelSpec: expected 'trivial' or 'lattice:<a>', got '" +
                        std::string(text) + "'");
}

std::string KernelSpec::to_string() const {
  if (variant_ == Variant::kTrivial) return "trivial";
  return "lattice:" + format_real(a_);
}

// ---------------------------------------------------------------------------
// Cost functions

CostFunction::CostFunction(std::string name, std::optional<KernelSpec> kernel,
                           Evaluator evaluate)
    : name_(std::move(name)), kernel_(kernel), evaluate_(std::move(evaluate)) {
  if (!evaluate_) throw InvalidArgument("CostFunction: empty evaluator");
}

CostValue det_cost(const SymPosDefMatrix& m) {
  return CostValue{std::exp(log_det(m)), "det", std::nullopt};
}

std::int64_t quantization_index(double log_det_value, double a) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw InvalidArgument("quantization_index: a must be positive and finite");
  }
  const double q = log_det_value / std::numbers::ln2 / a;
  const double nearest = std::round(q);
  const double m = std::abs(q - nearest) <= kQuantizationSnap ? nearest : std::floor(q);
  return -static_cast<std::int64_t>(m);
}

CostValue quantized_det_cost(const SymPosDefMatrix& m, double a) {
  const double ld = log_det(m);
  const std::int64_t k = quantization_index(ld, a);
  const double d = ld / std::numbers::ln2;
  double value = std::exp2(d + a * static_cast<double>(k));
  // Snapped boundary cases can land a hair outside [1, 2^a).
  const double top = std::exp2(a);
  if (value < 1.0) value = 1.0;
  if (value >= top) value = std::nextafter(top, 0.0);
  return CostValue{value, qdet_tag(a), std::nullopt, top};
}

CostValue identity_cost(const SymPosDefMatrix& m) {
  return CostValue{fingerprint(m.matrix()), "identity", m.matrix()};
}

CostValue trace_cost(const SymPosDefMatrix& m) {
  return CostValue{trace(m), "trace", std::nullopt};
}

CostFunction make_det_cost() {
  return CostFunction("det", KernelSpec::trivial(),
                      [](const SymPosDefMatrix& m) { return det_cost(m); });
}

CostFunction make_quantized_det_cost(double a) {
  const KernelSpec kernel = KernelSpec::lattice(a);
  return CostFunction(qdet_tag(a), kernel, [a](const SymPosDefMatrix& m) {
    return quantized_det_cost(m, a);
  });
}

CostFunction make_identity_cost() {
  return CostFunction("identity", std::nullopt,
                      [](const SymPosDefMatrix& m) { return identity_cost(m); });
}

CostFunction make_trace_cost() {
  return CostFunction("trace", std::nullopt,
                      [](const SymPosDefMatrix& m) { return trace_cost(m); });
}

CostFunction factored_cost(const KernelSpec& kernel) {
  if (kernel.variant() == KernelSpec::Variant::kTrivial) return make_det_cost();
  return make_quantized_det_cost(kernel.a());
}

CostFunction parse_cost_selector(std::string_view selector) {
  if (selector == "det") return make_det_cost();
  if (selector == "trace") return make_trace_cost();
  if (selector == "identity") return make_identity_cost();
  constexpr std::string_view prefix = "qdet:";
  if (selector.starts_with(prefix)) {
    if (auto a = parse_positive(selector.substr(prefix.size()))) {
      return make_quantized_det_cost(*a);
    }
    throw InvalidArgument("cost selector: 'qdet:<a>' needs a positive decimal a, got '" +
                          std::string(selector) + "'");
  }
  throw InvalidArgument("cost selector: expected det | qdet:<a> | trace | identity, got '" +
                        std::string(selector) + "'");
}

}  // namespace affinv
