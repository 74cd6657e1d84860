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

#ifndef RIESZLAB_RIESZ_H_
#define RIESZLAB_RIESZ_H_

#include <functional>
#include <string>
#include <vector>

#include "rieszlab/group.h"
#include "rieszlab/quad.h"
#include "rieszlab/quasinorm.h"
#include "rieszlab/test_function.h"

namespace rieszlab {

// Where an integrand lives: a center, a length scale, the radius about the
// center past which tails are extrapolated (or the support radius when
// `compact`), and radii where it jumps.
struct Footprint {
  Point center;
  double scale = 1.0;
  double window = 16.0;
  bool compact = false;
  std::vector<double> breaks;
};

Footprint footprint(const TestFunction& u);

// Integral over G of h, concentrated on the footprint and possibly carrying
// a power singularity at the origin. Polar specs split off-center mass from
// the origin with a smooth partition of unity; box methods integrate over
// the support ball or Box(spec.L).
Estimate integrate_footprint(const QuasiNormSpec& n, const Footprint& fp,
                             const std::function<double(const Point&)>& h,
                             const QuadratureSpec& spec);

// I_lambda(v)(x) = int v(y) |y^-1 x|^-lambda dy with v = u |.|^-alpha.
// The ball B(x, eps) contributes v(x) |S| eps^(Q-lambda) / (Q-lambda).
// Throws std::invalid_argument unless 0 < lambda < Q.
Estimate riesz_apply(const QuasiNormSpec& n, double lambda,
                     const TestFunction& u, const Point& x,
                     const QuadratureSpec& spec, double alpha = 0.0);

// Same at many points, in parallel over points.
std::vector<Estimate> riesz_apply_many(const QuasiNormSpec& n, double lambda,
                                       const TestFunction& u,
                                       const std::vector<Point>& xs,
                                       const QuadratureSpec& spec,
                                       double alpha = 0.0);

// || |x|^alpha u ||_p. Divergent when |x|^alpha u is not in L^p.
Estimate lp_norm(const TestFunction& u, double p, const QuadratureSpec& spec,
                 double alpha = 0.0);

// K = K1 + K2 with K1 = |x|^-lambda 1{|x| < mu}.
struct KernelSplit {
  double mu = 1.0;
  double lambda = 1.0;
};

struct SplitNorm {
  Estimate numeric;
  double closed_form = 0.0;
  double blow_up = 0.0;    // 1/(Q - lambda) for K1
  double induced_q = 0.0;  // q with (Q - lambda p')/p' = -Q/q, for K2
  bool divergent = false;
  std::string reason;
};

// ||K1||_1 against |S| mu^(Q-lambda) / (Q-lambda).
SplitNorm k1_l1_norm(const QuasiNormSpec& n, const KernelSplit& split,
                     const QuadratureSpec& spec);

// ||K2||_p' against (|S|/(lambda p' - Q))^(1/p') mu^(-Q/q).
SplitNorm k2_lpprime_norm(const QuasiNormSpec& n, const KernelSplit& split,
                          double p, const QuadratureSpec& spec);

struct LevelMeasure {
  double zeta = 0.0;
  Estimate measure;
};

struct WeakDistribution {
  std::vector<LevelMeasure> levels;
  double max_value = 0.0;  // largest sampled |I u|
  double domain_radius = 0.0;
  std::size_t evaluations = 0;
};

struct WeakOptions {
  std::size_t points_per_shell = 4096;
};

// m{x in B(c_u, spec.L) : |I_lambda u(x)| > zeta} per zeta, by randomized
// lattice sampling over ratio-2 shells about the center of u. The same
// evaluation points serve every zeta.
WeakDistribution weak_distribution(const QuasiNormSpec& n, double lambda,
                                   const TestFunction& u,
                                   const std::vector<double>& zetas,
                                   const QuadratureSpec& spec,
                                   const WeakOptions& opts = {});

// int int u(y) h(x) / (|x|^beta |y^-1 x|^lambda |y|^alpha) dx dy.
Estimate bilinear_form(const QuasiNormSpec& n, const TestFunction& u,
                       const TestFunction& h, double lambda, double alpha,
                       double beta, const QuadratureSpec& spec);

}  // namespace rieszlab

#endif  // RIESZLAB_RIESZ_H_
