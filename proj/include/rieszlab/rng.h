// Copyright 2026 The rieszlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RIESZLAB_RNG_H_
#define RIESZLAB_RNG_H_

#include <cmath>
#include <cstdint>
#include <numbers>

namespace rieszlab {

// Stateless counter-based generator: every variate is a hash of
// (seed, stream, index, component). Sample i therefore sees the same numbers
// no matter which thread draws it or in which order.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(mix(seed ^ 0x243f6a8885a308d3ULL)) {}

  std::uint64_t bits(std::uint64_t stream, std::uint64_t index,
                     std::uint64_t component) const {
    std::uint64_t h = mix(seed_ ^ mix(stream + 0x9e3779b97f4a7c15ULL));
    h = mix(h ^ (index * 0xd1b54a32d192ed03ULL));
    return mix(h ^ (component * 0xaef17502108ef2d9ULL + 0x13198a2e03707344ULL));
  }

  // Uniform on the open interval (0, 1).
  double uniform(std::uint64_t stream, std::uint64_t index,
                 std::uint64_t component) const {
    return (static_cast<double>(bits(stream, index, component) >> 11) + 0.5) *
           0x1.0p-53;
  }

  double uniform(std::uint64_t stream, std::uint64_t index,
                 std::uint64_t component, double lo, double hi) const {
    return lo + (hi - lo) * uniform(stream, index, component);
  }

  // Standard normal via Box-Muller on components (2k, 2k+1).
  double normal(std::uint64_t stream, std::uint64_t index,
                std::uint64_t component) const {
    const double u1 = uniform(stream, index, 2 * component);
    const double u2 = uniform(stream, index, 2 * component + 1);
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  // Log-uniform on [lo, hi].
  double log_uniform(std::uint64_t stream, std::uint64_t index,
                     std::uint64_t component, double lo, double hi) const {
    return std::exp(uniform(stream, index, component, std::log(lo), std::log(hi)));
  }

 private:
  // splitmix64 finalizer
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
};

}  // namespace rieszlab

#endif  // RIESZLAB_RNG_H_
