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

#include "rieszlab/test_function.h"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace rieszlab {

std::string to_string(TestKind k) {
  switch (k) {
    case TestKind::kZero:
      return "zero";
    case TestKind::kGaussian:
      return "gaussian";
    case TestKind::kBall:
      return "ball";
    case TestKind::kPowerDecay:
      return "power";
    case TestKind::kConformal:
      return "conformal";
  }
  return "?";
}

double smooth_cutoff(double t) {
  if (t <= 1.0) return 1.0;
  if (t >= 2.0) return 0.0;
  const double a = std::exp(-1.0 / (2.0 - t));
  const double b = std::exp(-1.0 / (t - 1.0));
  return a / (a + b);
}

namespace {

Point full_center(const GroupSpec& g, Point c) {
  if (c.size() == 0) return identity(g);
  check_conforms(g, c);
  return c;
}

void check_amp(double amp) {
  if (!std::isfinite(amp)) throw std::invalid_argument("amplitude must be finite");
}

}  // namespace

TestFunction TestFunction::zero(const QuasiNormSpec& n) {
  TestFunction u(n, TestKind::kZero);
  u.amp_ = 0.0;
  u.center_ = identity(n.group());
  return u;
}

TestFunction TestFunction::gaussian(const QuasiNormSpec& n,
                                    std::vector<double> sigma, double amp,
                                    Point center) {
  const GroupSpec& g = n.group();
  if (sigma.size() == 1) sigma.assign(g.dim(), sigma[0]);
  if (sigma.size() != g.dim()) {
    throw std::invalid_argument("gaussian: sigma needs one entry per coordinate");
  }
  for (double s : sigma) {
    if (!(s > 0.0)) throw std::invalid_argument("gaussian: sigma must be positive");
  }
  check_amp(amp);
  TestFunction u(n, TestKind::kGaussian);
  u.amp_ = amp;
  u.center_ = full_center(g, std::move(center));
  u.sigma_ = std::move(sigma);
  for (std::size_t i = 0; i < g.dim(); ++i) u.gauss_expo_.push_back(2.0 / g.weight(i));
  return u;
}

TestFunction TestFunction::ball(const QuasiNormSpec& n, double R, double amp,
                                Point center) {
  if (!(R > 0.0)) throw std::invalid_argument("ball: R must be positive");
  check_amp(amp);
  TestFunction u(n, TestKind::kBall);
  u.amp_ = amp;
  u.center_ = full_center(n.group(), std::move(center));
  u.shape_ = R;
  return u;
}

TestFunction TestFunction::power_decay(const QuasiNormSpec& n, double s,
                                       double delta, double amp,
                                       Point center) {
  if (!(s > 0.0)) throw std::invalid_argument("power_decay: s must be positive");
  if (!(delta > 0.0)) {
    throw std::invalid_argument("power_decay: delta must be positive");
  }
  check_amp(amp);
  TestFunction u(n, TestKind::kPowerDecay);
  u.amp_ = amp;
  u.center_ = full_center(n.group(), std::move(center));
  u.shape_ = s;
  u.delta_ = delta;
  return u;
}

TestFunction TestFunction::conformal(const QuasiNormSpec& n, double gamma,
                                     double amp, Point center) {
  if (!(gamma > 0.0)) throw std::invalid_argument("conformal: gamma must be positive");
  check_amp(amp);
  TestFunction u(n, TestKind::kConformal);
  u.amp_ = amp;
  u.center_ = full_center(n.group(), std::move(center));
  u.shape_ = gamma;
  return u;
}

double TestFunction::base(const Point& z) const {
  switch (kind_) {
    case TestKind::kZero:
      return 0.0;
    case TestKind::kGaussian: {
      double e = 0.0;
      for (std::size_t i = 0; i < z.size(); ++i) {
        const double a = std::abs(z[i] / sigma_[i]);
        const double p = gauss_expo_[i];
        e += p == 2.0 ? a * a : (p == 1.0 ? a : std::pow(a, p));
      }
      return std::exp(-e);
    }
    case TestKind::kBall:
      return norm_(z) < shape_ ? 1.0 : 0.0;
    case TestKind::kPowerDecay: {
      const double r = norm_(z);
      return std::pow(delta_ * delta_ + r * r, -0.5 * shape_);
    }
    case TestKind::kConformal: {
      const double r = norm_(z);
      return std::pow(1.0 + r * r, -shape_);
    }
  }
  return 0.0;
}

double TestFunction::operator()(const Point& y) const {
  if (is_zero()) return 0.0;
  const GroupSpec& g = norm_.group();
  Point z = center_.is_zero() ? y : multiply(g, inverse(g, center_), y);
  if (t_ != 1.0) z = dilate(g, t_, z);
  return amp_ * base(z);
}

TestFunction TestFunction::dilated(double t) const {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("dilation factor must be positive");
  }
  // u(D_t y) = base(D_t0 (c^-1 D_t y)) = base(D_(t0 t)((D_(1/t) c)^-1 y)).
  TestFunction u = *this;
  u.t_ = t_ * t;
  u.center_ = dilate(group(), 1.0 / t, center_);
  return u;
}

TestFunction TestFunction::scaled(double c) const {
  check_amp(c);
  TestFunction u = *this;
  u.amp_ = amp_ * c;
  return u;
}

double TestFunction::scale() const {
  switch (kind_) {
    case TestKind::kZero:
      return 1.0;
    case TestKind::kGaussian: {
      double s = 0.0;
      for (std::size_t i = 0; i < sigma_.size(); ++i) {
        s = std::max(s, std::pow(sigma_[i], 1.0 / group().weight(i)));
      }
      return s / t_;
    }
    case TestKind::kBall:
      return shape_ / t_;
    case TestKind::kPowerDecay:
      return delta_ / t_;
    case TestKind::kConformal:
      return 1.0 / t_;
  }
  return 1.0;
}

double TestFunction::support_radius() const {
  if (kind_ == TestKind::kBall) return shape_ / t_;
  if (kind_ == TestKind::kZero) return 0.0;
  return std::numeric_limits<double>::infinity();
}

double TestFunction::decay() const {
  if (kind_ == TestKind::kPowerDecay) return shape_;
  if (kind_ == TestKind::kConformal) return 2.0 * shape_;
  return std::numeric_limits<double>::infinity();
}

double TestFunction::window_radius() const {
  switch (kind_) {
    case TestKind::kBall:
      return support_radius();
    case TestKind::kGaussian:
      return 16.0 * scale();
    default:
      return 64.0 * scale();
  }
}

bool TestFunction::in_weighted_lp(double p, double alpha) const {
  if (is_zero()) return true;
  const double Q = homogeneous_dimension(group());
  // Local integrability of |x|^(alpha p) at the origin.
  if (!(alpha * p > -Q)) return false;
  const double d = decay();
  if (std::isinf(d)) return true;
  return d > alpha + Q / p;
}

std::string TestFunction::name() const {
  std::ostringstream os;
  os << to_string(kind_);
  switch (kind_) {
    case TestKind::kGaussian:
      os << "(sigma=";
      for (std::size_t i = 0; i < sigma_.size(); ++i) os << (i ? "," : "") << sigma_[i];
      os << ")";
      break;
    case TestKind::kBall:
      os << "(R=" << shape_ << ")";
      break;
    case TestKind::kPowerDecay:
      os << "(s=" << shape_ << ",delta=" << delta_ << ")";
      break;
    case TestKind::kConformal:
      os << "(gamma=" << shape_ << ")";
      break;
    case TestKind::kZero:
      break;
  }
  if (amp_ != 1.0) os << "*" << amp_;
  if (t_ != 1.0) os << " o D_" << t_;
  if (!center_.is_zero()) os << " at " << to_string(center_);
  return os.str();
}

nlohmann::ordered_json TestFunction::to_json() const {
  nlohmann::ordered_json j;
  j["kind"] = to_string(kind_);
  if (kind_ == TestKind::kGaussian) j["sigma"] = sigma_;
  if (kind_ == TestKind::kBall) j["R"] = shape_;
  if (kind_ == TestKind::kPowerDecay) {
    j["s"] = shape_;
    j["delta"] = delta_;
  }
  if (kind_ == TestKind::kConformal) j["gamma"] = shape_;
  j["amp"] = amp_;
  j["dilation"] = t_;
  std::vector<double> c(center_.coords().begin(), center_.coords().end());
  j["center"] = c;
  return j;
}

}  // namespace rieszlab
