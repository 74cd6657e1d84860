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


#ifndef RIESZLAB_HARDY_H_
#define RIESZLAB_HARDY_H_

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "json.hpp"
#include "rieszlab/group.h"
#include "rieszlab/quad.h"
#include "rieszlab/quasinorm.h"
#include "rieszlab/test_function.h"

namespace rieszlab {

// A positive weight on G: |x|^w, or an arbitrary callable.
class WeightSpec {
 public:
  enum class Form { kPower, kTabulated };

  static WeightSpec power(double w);
  static WeightSpec tabulated(std::function<double(const Point&)> f,
                              std::string label = "tabulated");

  Form form() const { return form_; }
  double exponent() const { return w_; }
  // Throws std::domain_error when a tabulated weight is not positive and
  // finite at x.
  double operator()(const QuasiNormSpec& n, const Point& x) const;
  // y -> W(y)^e, same form.
  WeightSpec pow(double e) const;

  std::string name() const;
  nlohmann::ordered_json to_json() const;

 private:
  Form form_ = Form::kPower;
  double w_ = 0.0;
  double e_ = 1.0;
  std::function<double(const Point&)> f_;
  std::string label_;
};

// kInner: (int (int_{B(0,|x|)} f)^q W dx)^(1/q) <= C (int f^p U)^(1/p), with
// A1. kOuter: the same with G \ B(0,|x|), with A2.
enum class HardySide { kInner, kOuter };

std::string to_string(HardySide s);

struct HardyOptions {
  double R_lo = 1e-2;
  double R_hi = 1e2;
  std::size_t R_points = 33;
  double slope_tol = 1e-3;
  double slack = 0.05;
  // Also integrate power weights numerically, next to the closed forms.
  bool cross_check = false;
  // Dilations f(D_(1/t) .) used to expose growth of LHS/RHS.
  std::vector<double> growth_dilations = {1.0, 4.0, 16.0};
};

struct ProfilePoint {
  double R = 0.0;
  double A = 0.0;
  double w_factor = 0.0;  // (int W)^(1/q) over the W region
  double u_factor = 0.0;  // (int U^(1-p'))^(1/p') over the U region
  double w_numeric = std::numeric_limits<double>::quiet_NaN();
  double u_numeric = std::numeric_limits<double>::quiet_NaN();
};

struct Sandwich {
  double A = 0.0;
  double C_empirical = 0.0;  // max sampled LHS/RHS
  double upper = 0.0;        // (p')^(1/p') p^(1/q) A
  bool holds = false;        // C_empirical <= upper (1 + slack)
  std::size_t samples = 0;
  std::size_t skipped = 0;   // f with both sides 0
  std::vector<double> ratios;
};

struct GrowthPoint {
  double t = 1.0;
  double ratio = 0.0;  // LHS/RHS with LHS truncated at L * max t
};

struct HardyVerdict {
  HardySide side = HardySide::kInner;
  double p = 2.0, q = 2.0;
  double A_value = std::numeric_limits<double>::infinity();
  std::vector<ProfilePoint> profile;
  bool finite = false;
  std::string reason;
  double slope_lo = 0.0;  // log-log slope of A(R) at the small end
  double slope_hi = 0.0;
  Sandwich sandwich;
  std::vector<GrowthPoint> growth;
  bool unbounded_growth = false;

  nlohmann::ordered_json to_json() const;
};

// (p')^(1/p') p^(1/q).
double hardy_sandwich_factor(double p, double q);

// A1(R) = (int_{|x|>R} W)^(1/q) (int_{|x|<R} U^(1-p'))^(1/p') on a log grid,
// with the supremum. Finite when no factor diverges and A(R) does not grow
// towards either end of the grid. Requires 1 < p <= q < inf.
HardyVerdict hardy_A1(const QuasiNormSpec& n, const WeightSpec& W,
                      const WeightSpec& U, double p, double q,
                      const QuadratureSpec& spec, const HardyOptions& opts = {});

// A2(R) = (int_{|x|<R} W)^(1/q) (int_{|x|>R} U^(1-p'))^(1/p').
HardyVerdict hardy_A2(const QuasiNormSpec& n, const WeightSpec& W,
                      const WeightSpec& U, double p, double q,
                      const QuadratureSpec& spec, const HardyOptions& opts = {});

struct HardySides {
  Estimate lhs;
  Estimate rhs;
};

// Both sides of the Hardy inequality for one f >= 0. The inner integrals
// come from the cumulative radial mass of f; `truncate` caps the outer
// integral at |x| < truncate.
HardySides hardy_sides(const QuasiNormSpec& n, HardySide side,
                       const WeightSpec& W, const WeightSpec& U, double p,
                       double q, const TestFunction& f,
                       const QuadratureSpec& spec,
                       double truncate = std::numeric_limits<double>::infinity());

// A, then LHS/RHS over the samples, the sandwich check, and the ratio along
// dilates of the first sample.
HardyVerdict hardy_verify(const QuasiNormSpec& n, HardySide side,
                          const WeightSpec& W, const WeightSpec& U, double p,
                          double q, const std::vector<TestFunction>& fs,
                          const QuadratureSpec& spec,
                          const HardyOptions& opts = {});

// Nonnegative Gaussians and ball indicators with seeded scales and centers.
std::vector<TestFunction> hardy_sample_family(const QuasiNormSpec& n,
                                              std::size_t count,
                                              std::uint64_t seed);

}  // namespace rieszlab

#endif  // RIESZLAB_HARDY_H_
