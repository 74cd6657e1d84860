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

#ifndef RIESZLAB_QUASINORM_H_
#define RIESZLAB_QUASINORM_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "rieszlab/group.h"
#include "rieszlab/report.h"
#include "rieszlab/rng.h"

namespace rieszlab {

enum class NormKind { kEuclidean, kMaxWeighted, kSumWeighted, kKoranyi };

// A homogeneous quasi-norm |.| bound to its group.
//
//   Euclidean    sqrt(sum x_i^2)                  all weights must be 1
//   MaxWeighted  max_i |x_i|^(1/nu_i)
//   SumWeighted  (sum_i |x_i|^(rho/nu_i))^(1/rho)  rho even, rho >= 2 max nu
//   Koranyi      ((|a|^2+|b|^2)^2 + c t^2)^(1/4)  Heisenberg only
class QuasiNormSpec {
 public:
  static QuasiNormSpec euclidean(const GroupSpec& g);
  static QuasiNormSpec max_weighted(const GroupSpec& g);
  // rho defaults to default_sum_exponent(g).
  static QuasiNormSpec sum_weighted(const GroupSpec& g,
                                    std::optional<int> rho = std::nullopt);
  static QuasiNormSpec koranyi(const GroupSpec& g, double c = 16.0);

  double operator()(const Point& x) const;

  NormKind kind() const { return kind_; }
  const GroupSpec& group() const { return group_; }
  // rho for SumWeighted, c for Koranyi, 0 otherwise.
  double parameter() const { return param_; }
  // Declared triangle-inequality status; verified by quasi_triangle_constant.
  bool declared_triangle() const { return triangle_; }

  // sup |x_i| over the unit ball, used to bound Ball(R) by a box.
  double unit_ball_extent(std::size_t i) const;

  std::string name() const;

 private:
  QuasiNormSpec(GroupSpec g, NormKind kind, double param, bool triangle);

  GroupSpec group_;
  NormKind kind_;
  double param_;
  bool triangle_;
  std::array<double, kMaxDim> expo_{};  // per-coordinate exponent
  std::array<int, kMaxDim> int_expo_{};  // same, when a small integer (else 0)
};

// Smallest admissible even rho: 2 * lcm of integer weights, capped at 12 and
// raised to the next even integer >= 2 * max weight.
int default_sum_exponent(const GroupSpec& g);

inline double evaluate(const QuasiNormSpec& n, const Point& x) { return n(x); }

// Random point D_s(z), z uniform in [-1,1]^N, s log-uniform in
// [scale_lo, scale_hi]. Sample `index` of `stream` is fixed by the seed.
Point random_point(const GroupSpec& g, const CounterRng& rng,
                   std::uint64_t stream, std::uint64_t index,
                   double scale_lo = 1e-2, double scale_hi = 1e2);

// Max relative violation of symmetry |x| = |x^-1|, 1-homogeneity
// |D_t x| = t|x| (t log-uniform in [1e-2, 1e2]) and definiteness.
VerificationReport check_axioms(const QuasiNormSpec& n, std::size_t samples,
                                std::uint64_t seed, double tolerance = 1e-12);

struct TriangleEstimate {
  double constant = 0.0;  // max |x y| / (|x| + |y|) over sampled pairs
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

TriangleEstimate quasi_triangle_constant(const QuasiNormSpec& n,
                                         std::size_t samples,
                                         std::uint64_t seed);

// Finds t with n(D_t z) = 1 by bracketing and bisection on the dilation
// parameter and returns D_t z. z must be nonzero.
Point rescale_to_unit_sphere(const QuasiNormSpec& n, const Point& z);

struct EquivalenceConstants {
  double c_low = 0.0;   // inf n2/n1
  double c_high = 0.0;  // sup n2/n1
  std::size_t samples = 0;
  std::size_t skipped = 0;
  std::uint64_t seed = 0;
};

// Estimates c_low <= n2(x)/n1(x) <= c_high over the n1 unit sphere from
// random Gaussian directions. Both norms must live on the same group.
EquivalenceConstants equivalence_constants(const QuasiNormSpec& n1,
                                           const QuasiNormSpec& n2,
                                           std::size_t samples,
                                           std::uint64_t seed);

}  // namespace rieszlab

#endif  // RIESZLAB_QUASINORM_H_
