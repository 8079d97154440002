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

#ifndef AFFINV_RANDOM_HPP_
#define AFFINV_RANDOM_HPP_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace affinv {

// SplitMix64 finalizer. Used to derive independent stream seeds from a
// master seed and a set of counters.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based seed split: the result depends only on the arguments, never
// on how many seeds were derived before.
std::uint64_t derive_seed(std::uint64_t master,
                          std::initializer_list<std::uint64_t> counters);

// Standard normal draws on top of mt19937_64. std::normal_distribution is
// implementation-defined, so Box-Muller is done by hand to keep samples
// identical across standard libraries.
class NormalSource {
 public:
  explicit NormalSource(std::uint64_t seed) : engine_(seed) {}

  double operator()();
  double uniform();  // (0, 1)

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace affinv

#endif  // AFFINV_RANDOM_HPP_
