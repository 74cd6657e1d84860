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

#ifndef RIESZLAB_GAUSS_H_
#define RIESZLAB_GAUSS_H_

#include <cstddef>
#include <vector>

namespace rieszlab {

inline constexpr std::size_t kMaxCumulativeOrder = 16;

// Gauss-Legendre rule on [-1, 1].
// w_low holds interpolatory weights on the nodes minus the central one or
// two (zero there), a lower-degree companion for error estimates.
// cumulative[j * n + k] integrates the k-th Lagrange basis polynomial over
// [-1, x_j]; filled for n <= kMaxCumulativeOrder.
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
  std::vector<double> w_low;
  std::vector<double> cumulative;
};

// Cached; the returned reference stays valid for the process lifetime.
const GaussRule& gauss_legendre(std::size_t n);

}  // namespace rieszlab

#endif  // RIESZLAB_GAUSS_H_
