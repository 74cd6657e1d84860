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


#ifndef RIESZLAB_HARNESS_H_
#define RIESZLAB_HARNESS_H_

#include <array>
#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "rieszlab/quad.h"
#include "rieszlab/quasinorm.h"
#include "rieszlab/report.h"
#include "rieszlab/test_function.h"

namespace rieszlab {

// Exponents of ||x|^-beta I_lambda u||_q <= C ||x|^alpha u||_p.
struct ExponentSet {
  double Q = 0.0;
  double p = 2.0;
  double q = 2.0;
  double lambda = 1.0;
  double alpha = 0.0;
  double beta = 0.0;

  double p_prime() const { return p / (p - 1.0); }
  double q_prime() const { return q / (q - 1.0); }
  // Q (1/p + (alpha+beta+lambda)/Q - 1 - 1/q): the power of t picked up by
  // the quotient under u -> u o D_t. Zero iff the balance relation holds.
  double balance_defect() const;

  nlohmann::ordered_json to_json() const;
};

struct ExponentVerdict {
  ExponentSet exps;    // q solved from the balance relation
  double inv_q = 0.0;  // 1/q; q = inf when <= 0
  bool lambda_ok = false;      // 0 < lambda < Q
  bool p_ok = false;           // 1 < p < inf
  bool q_finite = false;       // 1/q > 0
  bool p_le_q = false;         // p <= q
  bool alpha_ok = false;       // alpha < Q/p'
  bool beta_ok = false;        // beta < Q/q
  bool alpha_beta_ok = false;  // alpha + beta >= 0
  // Q - p'(alpha + lambda) < 0, the tail condition behind the outer Hardy
  // factor. Holds for every admissible set.
  bool outer_tail_negative = false;
  bool admissible = false;
  std::vector<std::string> failures;

  nlohmann::ordered_json to_json() const;
};

// Solves the balance relation for q and flags each condition. Never throws.
ExponentVerdict validate_exponents(double Q, double p, double lambda,
                                   double alpha, double beta);

// || |x|^-beta I_lambda u ||_q by an outer quadrature over x with
// riesz_apply at each node. The error adds the outer quadrature error and q
// times the largest relative error of an inner evaluation.
Estimate weighted_potential_norm(const QuasiNormSpec& n, double lambda,
                                 double beta, double q, const TestFunction& u,
                                 const QuadratureSpec& spec);

struct QuotientResult {
  Estimate numerator;    // || |x|^-beta I_lambda u ||_q
  Estimate denominator;  // || |x|^alpha u ||_p
  double value = 0.0;
  double error = 0.0;
  bool skipped = false;  // u == 0
  bool divergent = false;
  std::string reason;

  nlohmann::ordered_json to_json() const;
};

// The quotient does not require the balance relation, only
// 0 < lambda < Q and p, q >= 1 (std::invalid_argument otherwise).
QuotientResult sw_quotient(const QuasiNormSpec& n, const ExponentSet& e,
                           const TestFunction& u, const QuadratureSpec& spec);
// sw_quotient with alpha = beta = 0, which it requires.
QuotientResult hls_quotient(const QuasiNormSpec& n, const ExponentSet& e,
                            const TestFunction& u, const QuadratureSpec& spec);

struct DilationOptions {
  // Evaluate at lambda + lambda_shift with q held fixed.
  double lambda_shift = 0.0;
  double spread_tolerance = 0.02;
  double drift_tolerance = 0.02;
};

// Quotients of u o D_t over t_list. Records the max pairwise relative
// spread and the log-log slope of quotient against t, which is compared
// with balance_defect() of the shifted exponents.
VerificationReport dilation_invariance_check(const QuasiNormSpec& n,
                                             const ExponentSet& e,
                                             const TestFunction& u,
                                             const std::vector<double>& t_list,
                                             const QuadratureSpec& spec,
                                             const DilationOptions& opts = {});

// Zones in y for fixed x: |y| < |x|/2, |x|/2 <= |y| <= 2|x|, |y| > 2|x|.
enum class Zone { kInner = 0, kMiddle = 1, kOuter = 2 };

// int_zone u(y) |y^-1 x|^-lambda dy for all three zones from one polar rule
// about x. The three values sum to that rule's full potential.
std::array<Estimate, 3> zoned_potential(const QuasiNormSpec& n, double lambda,
                                        const TestFunction& u, const Point& x,
                                        const QuadratureSpec& spec);

struct ZoneBound {
  std::string name;
  std::size_t samples = 0;
  std::size_t violations = 0;
  double worst = 0.0;  // largest sampled lhs / rhs
};

struct DecompositionOptions {
  std::size_t samples = 10000;           // per zone
  std::size_t triangle_samples = 10000;
  std::uint64_t seed = 1;
  double tolerance = 0.02;
};

struct Decomposition {
  std::array<Estimate, 3> zones;  // I1, I2, I3
  Estimate full;    // int |x|^-beta q (J1 + J2 + J3)^q on the same rule
  Estimate direct;  // || |x|^-beta I_lambda u ||_q^q via riesz_apply
  double triangle_constant = 0.0;
  std::array<ZoneBound, 3> bounds;
  VerificationReport report;
};

// Throws std::invalid_argument unless the sampled triangle constant of n is
// at most 1 + 1e-10.
Decomposition decomposition_profile(const QuasiNormSpec& n,
                                    const ExponentSet& e,
                                    const TestFunction& u,
                                    const QuadratureSpec& spec,
                                    const DecompositionOptions& opts = {});

struct DyadicShell {
  int k = 0;
  double S = 0.0;         // int_{2^k <= |x| <= 2^k+1} |x|^-beta p J2(x)^p dx
  double B = 0.0;         // 2^(alpha k p) ||u chi_{2^k-1 <= |y| <= 2^k+2}||_p^p
  double weighted = 0.0;  // || |y|^alpha u chi_{...} ||_p^p
  double ratio = 0.0;     // S / B, 0 when B == 0
};

struct DyadicProfile {
  std::vector<DyadicShell> shells;
  double C_fit = 0.0;    // max ratio
  double C_young = 0.0;  // (|S| 6^(Q-lambda) / (Q-lambda))^p
  double shell_sum = 0.0;
  double weighted_norm = 0.0;  // || |x|^alpha u ||_p^p
  VerificationReport report;
};

// p = q only (std::invalid_argument otherwise).
DyadicProfile dyadic_profile(const QuasiNormSpec& n, const ExponentSet& e,
                             const TestFunction& u, int k_lo, int k_hi,
                             const QuadratureSpec& spec,
                             double tolerance = 0.10);

// 1/p = (1-g)/p0 + g/p1, 1/q likewise. Requires 0 < g < 1,
// 1 <= p_k <= q_k < inf and q0 < q1.
std::pair<double, double> marcinkiewicz_exponents(double gamma, double p0,
                                                  double q0, double p1,
                                                  double q1);

// Test functions indexed by a parameter box.
struct ParamFamily {
  std::function<TestFunction(std::span<const double>)> make;
  std::vector<double> lo, hi;
  std::vector<double> start;  // defaults to the box center
  std::vector<bool> log_scale;  // per parameter; defaults to linear
};

struct OptimizerOptions {
  double simplex_size = 0.15;  // in box-normalized units
  std::size_t max_iter = 60;
  std::size_t restarts = 3;
  std::uint64_t seed = 1;
  double f_tol = 1e-5;
};

struct TracePoint {
  std::size_t restart = 0;
  std::vector<double> params;
  double quotient = 0.0;
  bool ok = false;
};

struct ExtremizeResult {
  std::vector<double> best_params;
  double best_quotient = 0.0;
  std::vector<double> restart_best;
  double spread = 0.0;  // (max - min) / max over restarts
  std::vector<TracePoint> trace;

  nlohmann::ordered_json to_json() const;
};

// Nelder-Mead ascent of sw_quotient over the family box. The first restart
// starts at `start`, later ones at seeded random points. Points where the
// quotient fails are rejected.
ExtremizeResult extremize(const QuasiNormSpec& n, const ExponentSet& e,
                          const ParamFamily& family,
                          const OptimizerOptions& opts,
                          const QuadratureSpec& spec);

// 20 Gaussians, 10 balls, 10 power decays, 10 conformal profiles, every
// member in the weighted L^p space of e with a finite potential norm.
std::vector<TestFunction> standard_family(const QuasiNormSpec& n,
                                          const ExponentSet& e,
                                          std::uint64_t seed = 2024);

struct QuotientRow {
  std::size_t id = 0;
  std::string function;
  double t = 1.0;
  double quotient = 0.0;
  double error = 0.0;
};

void write_quotient_csv(std::ostream& os, const std::vector<QuotientRow>& rows);

struct Sweep {
  std::vector<QuotientRow> rows;
  double max_quotient = 0.0;
  double max_variation = 0.0;  // worst per-function (max - min) / min
  VerificationReport report;
};

// Quotients of every family member along u o D_t, in parallel over
// (member, t).
Sweep boundedness_sweep(const QuasiNormSpec& n, const ExponentSet& e,
                        const std::vector<TestFunction>& family,
                        const std::vector<double>& t_list,
                        const QuadratureSpec& spec, double tolerance = 0.05);

struct WeakTypeOptions {
  double tolerance = 0.10;
  std::size_t points_per_shell = 4096;
};

struct WeakTypeResult {
  std::vector<double> zetas;
  std::vector<double> ratios;  // zeta^q m{|I u| > zeta} / ||u||_p^q
  double C_fit = 0.0;
  double C_refit = 0.0;   // doubled zeta grid, doubled samples, new seed
  double C_proof = 0.0;   // from the K1/K2 split with mu(zeta) balanced
  double theta = 0.0;     // -Q d log mu / d log zeta
  VerificationReport report;
};

// Needs lambda p' > Q so that K2 is in L^p'.
WeakTypeResult weak_type_check(const QuasiNormSpec& n, const ExponentSet& e,
                               const TestFunction& u,
                               const std::vector<double>& zetas,
                               const QuadratureSpec& spec,
                               const WeakTypeOptions& opts = {});

}  // namespace rieszlab

#endif  // RIESZLAB_HARNESS_H_
