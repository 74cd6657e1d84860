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

#ifndef RIESZLAB_QUAD_H_
#define RIESZLAB_QUAD_H_

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rieszlab/group.h"
#include "rieszlab/kernels.h"
#include "rieszlab/quasinorm.h"

namespace rieszlab {

// kPolar integrates along dilation orbits, x = c . D_r(w) with w on the unit
// quasi-sphere, using a Gauss-Legendre rule in log r and a direction rule
// carrying the surface weights.
enum class Method { kTensorGrid, kMonteCarlo, kQuasiMonteCarlo, kPolar };

std::string to_string(Method m);
Method parse_method(const std::string& s);  // "grid", "mc", "qmc", "polar"

struct QuadratureSpec {
  Method method = Method::kQuasiMonteCarlo;
  std::size_t samples = 1 << 18;       // mc / qmc sample count
  std::size_t points_per_axis = 256;   // grid
  double L = 8.0;                      // box half-width / outer radius
  double eps = 0.0;                    // excluded singular ball radius
  std::uint64_t seed = 42;
  double target_rel_err = 1e-3;
  std::size_t qmc_shifts = 8;          // random shifts for qmc error bars
  std::size_t max_shells = 48;         // geometric shells for open annuli

  // Polar rule.
  std::size_t angular = 32;            // directions per half circle
  std::size_t radial_order = 6;        // GL nodes per panel
  int panels_per_octave = 1;
  double r_min = 1e-4;                 // inner edge when the region reaches 0

  Execution exec = Execution::kParallel;

  // Throws std::invalid_argument.
  void validate() const;
};

struct Estimate {
  double value = 0.0;
  double error = 0.0;
  bool divergent = false;
  std::string reason;
  std::size_t evaluations = 0;

  static Estimate diverges(std::string why) {
    Estimate e;
    e.value = std::numeric_limits<double>::infinity();
    e.error = std::numeric_limits<double>::infinity();
    e.divergent = true;
    e.reason = std::move(why);
    return e;
  }
};

// Thrown when an integrand returns a non-finite value.
class NonFiniteSample : public std::runtime_error {
 public:
  explicit NonFiniteSample(const Point& x);
  const Point& point() const { return x_; }

 private:
  Point x_;
};

// Integration domains. Norm-defined regions are centered: B(c, R) is
// {y : |c^-1 y| < R}. Box(L) is the homogeneous box {|x_i| <= L^nu_i}, so
// D_t Box(L) = Box(tL).
class Region {
 public:
  enum class Kind { kBox, kBall, kAnnulus, kComplement, kWhole };

  static Region box(const GroupSpec& g, double L);
  static Region ball(const QuasiNormSpec& n, double R, Point center = {});
  // 0 <= a < b <= inf.
  static Region annulus(const QuasiNormSpec& n, double a, double b,
                        Point center = {});
  // Box-style truncation at L of the complement of B(c, R).
  static Region complement(const QuasiNormSpec& n, double R, double L,
                           Point center = {});
  // All of G; box methods truncate to Box(spec.L).
  static Region whole(const QuasiNormSpec& n);

  Kind kind() const { return kind_; }
  const GroupSpec& group() const { return group_; }
  const QuasiNormSpec* norm() const { return norm_ ? &*norm_ : nullptr; }
  const Point& center() const { return center_; }
  double L() const { return L_; }
  double inner() const { return a_; }
  double outer() const { return b_; }

 private:
  Region(Kind k, GroupSpec g, std::optional<QuasiNormSpec> n, Point c,
         double L, double a, double b);

  Kind kind_;
  GroupSpec group_;
  std::optional<QuasiNormSpec> norm_;
  Point center_;
  double L_, a_, b_;
};

using Integrand = std::function<double(const Point&)>;

// Estimate of the integral of f over the region.
Estimate integrate(const Integrand& f, const Region& region,
                   const QuadratureSpec& spec);

// |S| = Q vol(B(0,1)).
Estimate sphere_measure(const QuasiNormSpec& n, const QuadratureSpec& spec);

struct PowerIntegral {
  Estimate numeric;
  double closed_form = 0.0;
  double sphere = 0.0;  // |S| used in the closed form
  bool divergent = false;
  std::string reason;
};

// Integral of |x|^(s-Q) over a < |x| < b against |S| (b^s - a^s)/s.
PowerIntegral annulus_power_integral(const QuasiNormSpec& n, double s,
                                     double a, double b,
                                     const QuadratureSpec& spec);

// |S| * int_0^inf phi(r) r^(Q-1) dr. `breaks` are radii where phi jumps.
Estimate radial_integrate(const std::function<double(double)>& phi,
                          const QuasiNormSpec& n, const QuadratureSpec& spec,
                          const std::vector<double>& breaks = {});

// ---------------------------------------------------------------------------
// Polar engine.

// Directions w_i on the unit quasi-sphere with weights summing to |S|.
// Directions come from a Euclidean sphere rule pushed along dilation orbits;
// the weights carry |theta|^-Q <nu theta, theta> from the change of
// variables. `replica` groups directions into interleaved subrules used for
// the error estimate.
struct AngularRule {
  std::vector<Point> directions;
  std::vector<double> weights;
  std::vector<std::uint32_t> replica;
  std::uint32_t replicas = 1;
  double measure = 0.0;  // sum of weights
};

// Cached per (norm, resolution, seed).
std::shared_ptr<const AngularRule> angular_rule(const QuasiNormSpec& n,
                                                std::size_t resolution,
                                                std::uint64_t seed = 0);

struct RadialWindow {
  double lo = 0.0;
  double hi = 0.0;
  bool open_lo = false;  // extrapolate below lo towards 0
  bool open_hi = false;  // extrapolate above hi towards infinity
  std::vector<double> breaks;
};

// Nodes of int_lo^hi g(r) r^(Q-1) dr in s = ln r. Panels sit on absolute
// multiples of ln(2)/panels_per_octave, split at the breaks.
struct RadialRule {
  std::vector<double> r;
  std::vector<double> ws;  // GL weight in s
  std::vector<double> ws_low;  // embedded lower-degree weights
  std::vector<double> rq;  // r^Q
  std::vector<std::array<double, kMaxDim>> scale;  // r^nu_i
  std::vector<double> s;
  std::vector<double> edges;  // panel edges in s; panel p holds nodes
                              // [p * order, (p + 1) * order)
  std::size_t order = 0;
  double s_lo = 0.0, s_hi = 0.0;
  bool open_lo = false, open_hi = false;
  double Q = 0.0;
};

RadialRule radial_rule(const GroupSpec& g, const RadialWindow& w,
                       std::size_t order, int panels_per_octave);

struct RadialSum {
  double value = 0.0;  // includes the tails
  double tail = 0.0;
  double error = 0.0;  // |full - embedded| rule difference
  double peak = 0.0;   // max |F| over the nodes
  bool divergent = false;
};

namespace detail {

// Exponential extrapolation of F(s) = g(r) r^Q beyond the outer nodes.
RadialSum finish_radial(const RadialRule& rule, const double* F);

}  // namespace detail

template <class G>
RadialSum radial_sum(const RadialRule& rule, G g) {
  const std::size_t m = rule.r.size();
  double buf[512];
  std::vector<double> big;
  double* F = buf;
  if (m > 512) {
    big.resize(m);
    F = big.data();
  }
  for (std::size_t j = 0; j < m; ++j) F[j] = g(j) * rule.rq[j];
  return detail::finish_radial(rule, F);
}

// Point c . D_r(w) for radial node j.
inline Point polar_point(const GroupSpec& g, const Point& center,
                         const Point& w, const RadialRule& rule,
                         std::size_t j) {
  Point z(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) z[i] = rule.scale[j][i] * w[i];
  if (center.size() == 0) return z;
  return multiply(g, center, z);
}

// Records the first non-finite integrand value (lowest index wins) so the
// error names a reproducible point.
class NonFiniteTrap {
 public:
  double check(double v, std::size_t index, const Point& x) {
    if (std::isfinite(v)) return v;
    std::lock_guard<std::mutex> lock(mu_);
    if (index < first_) {
      first_ = index;
      x_ = x;
    }
    return 0.0;
  }
  // Throws NonFiniteSample if a value was trapped.
  void rethrow() const;

 private:
  std::mutex mu_;
  std::size_t first_ = std::numeric_limits<std::size_t>::max();
  Point x_;
};

// Combines per-direction radial sums into an estimate.
Estimate combine_directions(const AngularRule& ang,
                            const std::vector<RadialSum>& per_dir,
                            std::size_t evaluations);

// int f(x) dx over c . D_r(S), r in the window.
template <class F>
Estimate polar_integrate(const GroupSpec& g, const AngularRule& ang,
                         const Point& center, const RadialRule& rule, F f,
                         Execution exec) {
  const std::size_t nd = ang.directions.size();
  const std::size_t m = rule.r.size();
  std::vector<RadialSum> parts(nd);
  NonFiniteTrap trap;
  for_indices(
      nd,
      [&](std::size_t i) {
        const Point& w = ang.directions[i];
        parts[i] = radial_sum(rule, [&](std::size_t j) {
          const Point x = polar_point(g, center, w, rule, j);
          return trap.check(f(x), i * m + j, x);
        });
      },
      exec);
  trap.rethrow();
  return combine_directions(ang, parts, nd * m);
}

}  // namespace rieszlab

#endif  // RIESZLAB_QUAD_H_
