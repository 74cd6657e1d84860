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


#include "rieszlab/hardy.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "rieszlab/gauss.h"
#include "rieszlab/kernels.h"
#include "rieszlab/riesz.h"
#include "rieszlab/rng.h"

namespace rieszlab {

// ---------------------------------------------------------------------------
// WeightSpec

WeightSpec WeightSpec::power(double w) {
  if (!std::isfinite(w)) throw std::invalid_argument("power weight: exponent must be finite");
  WeightSpec s;
  s.form_ = Form::kPower;
  s.w_ = w;
  return s;
}

WeightSpec WeightSpec::tabulated(std::function<double(const Point&)> f,
                                 std::string label) {
  if (!f) throw std::invalid_argument("tabulated weight: empty callable");
  WeightSpec s;
  s.form_ = Form::kTabulated;
  s.f_ = std::move(f);
  s.label_ = std::move(label);
  return s;
}

double WeightSpec::operator()(const QuasiNormSpec& n, const Point& x) const {
  if (form_ == Form::kPower) return std::pow(n(x), w_);
  const double v = f_(x);
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::domain_error("weight " + label_ + " is not positive at " +
                            to_string(x));
  }
  return e_ == 1.0 ? v : std::pow(v, e_);
}

WeightSpec WeightSpec::pow(double e) const {
  WeightSpec s = *this;
  if (form_ == Form::kPower) {
    s.w_ *= e;
  } else {
    s.e_ *= e;
  }
  return s;
}

std::string WeightSpec::name() const {
  std::ostringstream os;
  if (form_ == Form::kPower) {
    os << "|x|^" << w_;
  } else {
    os << label_;
    if (e_ != 1.0) os << "^" << e_;
  }
  return os.str();
}

nlohmann::ordered_json WeightSpec::to_json() const {
  nlohmann::ordered_json j;
  if (form_ == Form::kPower) {
    j["form"] = "power";
    j["w"] = w_;
  } else {
    j["form"] = "tabulated";
    j["label"] = label_;
    j["power"] = e_;
  }
  return j;
}

std::string to_string(HardySide s) {
  return s == HardySide::kInner ? "inner" : "outer";
}

double hardy_sandwich_factor(double p, double q) {
  const double pp = p / (p - 1.0);
  return std::pow(pp, 1.0 / pp) * std::pow(p, 1.0 / q);
}

nlohmann::ordered_json HardyVerdict::to_json() const {
  nlohmann::ordered_json j;
  j["side"] = to_string(side);
  j["p"] = p;
  j["q"] = q;
  j["finite"] = finite;
  if (std::isfinite(A_value)) {
    j["A"] = A_value;
  } else {
    j["A"] = "inf";
  }
  j["reason"] = reason;
  j["slope_lo"] = slope_lo;
  j["slope_hi"] = slope_hi;
  auto& prof = j["profile"] = nlohmann::ordered_json::array();
  for (const auto& pt : profile) {
    nlohmann::ordered_json e{{"R", pt.R}, {"A", pt.A}, {"w_factor", pt.w_factor},
                             {"u_factor", pt.u_factor}};
    if (!std::isnan(pt.w_numeric)) e["w_numeric"] = pt.w_numeric;
    if (!std::isnan(pt.u_numeric)) e["u_numeric"] = pt.u_numeric;
    prof.push_back(e);
  }
  if (sandwich.samples > 0) {
    j["sandwich"] = {{"A", sandwich.A},
                     {"C_empirical", sandwich.C_empirical},
                     {"upper", sandwich.upper},
                     {"holds", sandwich.holds},
                     {"samples", sandwich.samples},
                     {"skipped", sandwich.skipped},
                     {"ratios", sandwich.ratios}};
  }
  if (!growth.empty()) {
    auto& g = j["growth"] = nlohmann::ordered_json::array();
    for (const auto& pt : growth) g.push_back({{"t", pt.t}, {"ratio", pt.ratio}});
    j["unbounded_growth"] = unbounded_growth;
  }
  return j;
}

namespace {

void check_pq(double p, double q) {
  if (!(p > 1.0) || !(q >= p) || !std::isfinite(q)) {
    throw std::invalid_argument("hardy: need 1 < p <= q < inf");
  }
}

struct Factor {
  double value = 0.0;
  double numeric = std::numeric_limits<double>::quiet_NaN();
  bool divergent = false;
  std::string why;
};

// Integral of V over B(0,R) (ball) or its complement.
Factor weight_integral(const QuasiNormSpec& n, const WeightSpec& V, double R,
                       bool ball, double sphere, const QuadratureSpec& spec,
                       bool cross_check) {
  Factor f;
  const double inf = std::numeric_limits<double>::infinity();
  if (V.form() == WeightSpec::Form::kPower) {
    const double Q = homogeneous_dimension(n.group());
    const double s = V.exponent() + Q;
    if (ball && s <= 0.0) {
      f.divergent = true;
      f.why = V.name() + " is not integrable at 0";
      return f;
    }
    if (!ball && s >= 0.0) {
      f.divergent = true;
      f.why = V.name() + " is not integrable at infinity";
      return f;
    }
    f.value = sphere * std::pow(R, s) / std::abs(s);
    if (cross_check) {
      f.numeric =
          annulus_power_integral(n, s, ball ? 0.0 : R, ball ? R : inf, spec)
              .numeric.value;
    }
    return f;
  }
  const Estimate e = integrate([&](const Point& x) { return V(n, x); },
                               ball ? Region::ball(n, R)
                                    : Region::annulus(n, R, inf),
                               spec);
  if (e.divergent) {
    f.divergent = true;
    f.why = V.name() + (ball ? " over B(0,R): " : " outside B(0,R): ") + e.reason;
    return f;
  }
  f.value = f.numeric = e.value;
  return f;
}

HardyVerdict admissibility(HardySide side, const QuasiNormSpec& n,
                           const WeightSpec& W, const WeightSpec& U, double p,
                           double q, const QuadratureSpec& spec,
                           const HardyOptions& opts) {
  spec.validate();
  check_pq(p, q);
  if (!(opts.R_lo > 0.0) || !(opts.R_hi > opts.R_lo) || opts.R_points < 2) {
    throw std::invalid_argument("hardy: R grid needs 0 < R_lo < R_hi and >= 2 points");
  }
  const double pp = p / (p - 1.0);
  const WeightSpec Ud = U.pow(1.0 - pp);
  const bool w_ball = side == HardySide::kOuter;
  const double sphere = sphere_measure(n, spec).value;
  HardyVerdict v;
  v.side = side;
  v.p = p;
  v.q = q;
  v.profile.resize(opts.R_points);
  std::vector<Factor> wf(opts.R_points), uf(opts.R_points);
  QuadratureSpec inner = spec;
  inner.exec = Execution::kSerial;
  const double step = std::log(opts.R_hi / opts.R_lo) / (opts.R_points - 1.0);
  for_indices(
      opts.R_points,
      [&](std::size_t i) {
        const double R = opts.R_lo * std::exp(step * i);
        wf[i] = weight_integral(n, W, R, w_ball, sphere, inner, opts.cross_check);
        uf[i] = weight_integral(n, Ud, R, !w_ball, sphere, inner, opts.cross_check);
        ProfilePoint& pt = v.profile[i];
        pt.R = R;
        pt.w_factor = std::pow(wf[i].value, 1.0 / q);
        pt.u_factor = std::pow(uf[i].value, 1.0 / pp);
        pt.w_numeric = std::pow(wf[i].numeric, 1.0 / q);
        pt.u_numeric = std::pow(uf[i].numeric, 1.0 / pp);
        pt.A = pt.w_factor * pt.u_factor;
      },
      spec.exec);
  for (std::size_t i = 0; i < opts.R_points; ++i) {
    const Factor& bad = wf[i].divergent ? wf[i] : uf[i];
    if (bad.divergent) {
      v.finite = false;
      v.A_value = std::numeric_limits<double>::infinity();
      v.reason = (wf[i].divergent ? "W factor diverges: " : "U^(1-p') factor diverges: ") +
                 bad.why;
      for (auto& pt : v.profile) pt.A = std::numeric_limits<double>::infinity();
      return v;
    }
  }
  const auto& P = v.profile;
  const std::size_t m = P.size();
  auto slope = [&](std::size_t a, std::size_t b) {
    if (P[a].A == 0.0 || P[b].A == 0.0) return 0.0;
    return std::log(P[b].A / P[a].A) / std::log(P[b].R / P[a].R);
  };
  v.slope_lo = slope(0, 1);
  v.slope_hi = slope(m - 2, m - 1);
  double sup = 0.0;
  for (const auto& pt : P) sup = std::max(sup, pt.A);
  const bool grows_hi = v.slope_hi > opts.slope_tol;
  const bool grows_lo = v.slope_lo < -opts.slope_tol;
  v.finite = std::isfinite(sup) && !grows_hi && !grows_lo;
  if (v.finite) {
    v.A_value = sup;
  } else {
    v.A_value = std::numeric_limits<double>::infinity();
    std::ostringstream os;
    os << "A(R) grows ";
    if (grows_hi) os << "as R -> inf (slope " << v.slope_hi << ")";
    if (grows_hi && grows_lo) os << " and ";
    if (grows_lo) os << "as R -> 0 (slope " << v.slope_lo << ")";
    v.reason = os.str();
  }
  return v;
}

// Exponential-in-s tail of g beyond an end node, from the two end nodes.
// Returns inf when g does not decay outward.
double end_tail(double s_in, double g_in, double s_end, double g_end, double s_edge) {
  if (g_end == 0.0) return 0.0;
  if (g_in == 0.0 || (g_in > 0) != (g_end > 0)) return 0.0;
  const double k = std::log(g_end / g_in) / (s_end - s_in);
  const bool upward = s_end > s_in;
  const double away = upward ? k : -k;
  if (!(away < 0.0)) return std::numeric_limits<double>::infinity();
  return g_end * std::exp(k * (s_edge - s_end)) / -away;
}

}  // namespace

HardyVerdict hardy_A1(const QuasiNormSpec& n, const WeightSpec& W,
                      const WeightSpec& U, double p, double q,
                      const QuadratureSpec& spec, const HardyOptions& opts) {
  return admissibility(HardySide::kInner, n, W, U, p, q, spec, opts);
}

HardyVerdict hardy_A2(const QuasiNormSpec& n, const WeightSpec& W,
                      const WeightSpec& U, double p, double q,
                      const QuadratureSpec& spec, const HardyOptions& opts) {
  return admissibility(HardySide::kOuter, n, W, U, p, q, spec, opts);
}

HardySides hardy_sides(const QuasiNormSpec& n, HardySide side,
                       const WeightSpec& W, const WeightSpec& U, double p,
                       double q, const TestFunction& f,
                       const QuadratureSpec& spec, double truncate) {
  spec.validate();
  check_pq(p, q);
  if (!(truncate > 0.0)) throw std::invalid_argument("hardy_sides: truncate > 0");
  HardySides out;
  if (f.is_zero()) return out;
  if (f.amplitude() < 0.0) throw std::invalid_argument("hardy_sides: f must be >= 0");
  const GroupSpec& g = n.group();
  const auto ang = angular_rule(n, spec.angular, spec.seed);

  // Radial window around the mass of f, seen from the origin.
  const double zc = n(f.center());
  const double sc = f.scale();
  const double reach = f.has_jump() ? f.support_radius() : f.window_radius();
  RadialWindow w;
  w.lo = std::min(sc, zc > 0.0 ? zc : sc) / 1024.0;
  w.open_lo = true;
  if (std::isfinite(truncate)) {
    w.hi = truncate;
  } else {
    w.hi = std::max(zc + reach, 4.0 * sc);
    w.open_hi = true;
  }
  if (f.has_jump()) {
    for (double b : {zc - f.support_radius(), zc + f.support_radius()}) {
      if (b > 0.0) w.breaks.push_back(b);
    }
  }
  if (zc > 0.0) {
    for (int k = -4; k <= 4; ++k) w.breaks.push_back(zc * std::exp2(k / 4.0));
  }
  const std::size_t order = std::min(spec.radial_order, kMaxCumulativeOrder);
  const RadialRule rule = radial_rule(g, w, order, spec.panels_per_octave);
  const std::size_t m = rule.r.size();
  const std::size_t nd = ang->directions.size();

  // gm[j] = r^Q int_S f(D_r w) dw, the mass density in s = ln r.
  std::vector<double> gm(m), wr(m);
  for_indices(
      m,
      [&](std::size_t j) {
        double acc = 0.0, wacc = 0.0;
        for (std::size_t i = 0; i < nd; ++i) {
          const Point y = polar_point(g, Point{}, ang->directions[i], rule, j);
          acc += ang->weights[i] * f(y);
          if (W.form() == WeightSpec::Form::kTabulated) {
            wacc += ang->weights[i] * W(n, y);
          }
        }
        gm[j] = acc * rule.rq[j];
        wr[j] = W.form() == WeightSpec::Form::kPower
                    ? ang->measure * std::pow(rule.r[j], W.exponent())
                    : wacc;
      },
      spec.exec);

  // Mass below and above each node, from panel sums and partial panels.
  const GaussRule& gl = gauss_legendre(order);
  const std::size_t panels = m / order;
  std::vector<double> psum(panels, 0.0), partial(m, 0.0);
  for (std::size_t pi = 0; pi < panels; ++pi) {
    const double half = 0.5 * (rule.edges[pi + 1] - rule.edges[pi]);
    for (std::size_t k = 0; k < order; ++k) {
      const std::size_t j = pi * order + k;
      psum[pi] += rule.ws[j] * gm[j];
      double c = 0.0;
      for (std::size_t l = 0; l < order; ++l) {
        c += gl.cumulative[k * order + l] * gm[pi * order + l];
      }
      partial[j] = half * c;
    }
  }
  const double t_lo = end_tail(rule.s[1], gm[1], rule.s[0], gm[0], rule.s_lo);
  const double t_hi =
      w.open_hi || side == HardySide::kOuter
          ? end_tail(rule.s[m - 2], gm[m - 2], rule.s[m - 1], gm[m - 1], rule.s_hi)
          : 0.0;
  std::vector<double> below(m), above(m);
  {
    double acc = t_lo;
    for (std::size_t pi = 0; pi < panels; ++pi) {
      for (std::size_t k = 0; k < order; ++k) {
        below[pi * order + k] = acc + partial[pi * order + k];
      }
      acc += psum[pi];
    }
    acc = t_hi;
    for (std::size_t pi = panels; pi-- > 0;) {
      for (std::size_t k = 0; k < order; ++k) {
        const std::size_t j = pi * order + k;
        above[j] = acc + (psum[pi] - partial[j]);
      }
      acc += psum[pi];
    }
  }

  std::vector<double> H(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double phi = side == HardySide::kInner ? below[j] : above[j];
    H[j] = std::pow(std::max(phi, 0.0), q) * wr[j] * rule.rq[j];
  }
  const RadialSum outer = detail::finish_radial(rule, H.data());
  if (outer.divergent || !std::isfinite(outer.value)) {
    out.lhs = Estimate::diverges("outer integral of the Hardy left side diverges");
  } else {
    out.lhs.value = std::pow(outer.value, 1.0 / q);
    out.lhs.error = outer.value > 0.0
                        ? out.lhs.value * (outer.error + 0.1 * std::abs(outer.tail)) /
                              (q * outer.value)
                        : 0.0;
    out.lhs.evaluations = m * nd;
  }

  if (U.form() == WeightSpec::Form::kPower) {
    out.rhs = lp_norm(f, p, spec, U.exponent() / p);
  } else {
    const Estimate I = integrate_footprint(
        n, footprint(f),
        [&](const Point& x) {
          const double v = f(x);
          return v == 0.0 ? 0.0 : std::pow(v, p) * U(n, x);
        },
        spec);
    out.rhs = I;
    if (!I.divergent) {
      out.rhs.value = std::pow(I.value, 1.0 / p);
      out.rhs.error = I.value > 0.0 ? out.rhs.value * I.error / (p * I.value) : 0.0;
    }
  }
  return out;
}

HardyVerdict hardy_verify(const QuasiNormSpec& n, HardySide side,
                          const WeightSpec& W, const WeightSpec& U, double p,
                          double q, const std::vector<TestFunction>& fs,
                          const QuadratureSpec& spec, const HardyOptions& opts) {
  HardyVerdict v = admissibility(side, n, W, U, p, q, spec, opts);
  Sandwich& s = v.sandwich;
  s.A = v.A_value;
  s.upper = hardy_sandwich_factor(p, q) * v.A_value;
  std::string anomaly;
  for (const auto& f : fs) {
    const HardySides hs = hardy_sides(n, side, W, U, p, q, f, spec);
    ++s.samples;
    const double lhs = hs.lhs.value, rhs = hs.rhs.value;
    if (lhs == 0.0 && rhs == 0.0) {
      ++s.skipped;
      continue;
    }
    if (rhs == 0.0 || hs.rhs.divergent) {
      if (anomaly.empty()) {
        anomaly = rhs == 0.0 ? "right side vanishes while the left does not for " + f.name()
                             : "right side diverges for " + f.name();
      }
      continue;
    }
    const double ratio = hs.lhs.divergent ? std::numeric_limits<double>::infinity()
                                          : lhs / rhs;
    s.ratios.push_back(ratio);
    s.C_empirical = std::max(s.C_empirical, ratio);
  }
  s.holds = v.finite && anomaly.empty() &&
            s.C_empirical <= s.upper * (1.0 + opts.slack);
  if (!anomaly.empty()) v.reason = anomaly;
  if (!v.finite && v.reason.find("inequality") == std::string::npos) {
    v.reason += "; A is infinite, so the inequality cannot hold with a finite constant";
  }

  // Ratio along f(D_(1/t) .), with the outer integral capped at L max t.
  const TestFunction* base = nullptr;
  for (const auto& f : fs) {
    if (!f.is_zero()) {
      base = &f;
      break;
    }
  }
  if (base != nullptr && !opts.growth_dilations.empty()) {
    const double tmax = *std::max_element(opts.growth_dilations.begin(),
                                          opts.growth_dilations.end());
    const double cap = spec.L * tmax;
    bool increasing = true;
    for (double t : opts.growth_dilations) {
      const TestFunction ft = base->dilated(1.0 / t);
      const HardySides hs = hardy_sides(n, side, W, U, p, q, ft, spec, cap);
      const double r = hs.rhs.value > 0.0 ? hs.lhs.value / hs.rhs.value : 0.0;
      if (!v.growth.empty() && !(r > v.growth.back().ratio)) increasing = false;
      v.growth.push_back({t, r});
    }
    v.unbounded_growth = increasing && v.growth.size() >= 2 &&
                         v.growth.back().ratio > 2.0 * v.growth.front().ratio;
  }
  return v;
}

std::vector<TestFunction> hardy_sample_family(const QuasiNormSpec& n,
                                              std::size_t count,
                                              std::uint64_t seed) {
  const GroupSpec& g = n.group();
  const CounterRng rng(seed);
  std::vector<TestFunction> out;
  for (std::size_t k = 0; k < count; ++k) {
    Point c(g.dim());
    const bool centered = k % 4 == 0;
    if (!centered) {
      const double r = rng.log_uniform(11, k, 0, 0.1, 3.0);
      for (std::size_t i = 0; i < g.dim(); ++i) {
        c[i] = std::pow(r, g.weight(i)) * rng.uniform(11, k, 1 + i, -1.0, 1.0);
      }
    }
    const double amp = rng.log_uniform(12, k, 0, 0.5, 2.0);
    if (k % 2 == 0) {
      std::vector<double> sigma(g.dim());
      for (std::size_t i = 0; i < g.dim(); ++i) {
        sigma[i] = std::pow(rng.log_uniform(13, k, i, 0.3, 3.0), g.weight(i));
      }
      out.push_back(TestFunction::gaussian(n, sigma, amp, c));
    } else {
      out.push_back(TestFunction::ball(n, rng.log_uniform(14, k, 0, 0.2, 3.0), amp, c));
    }
  }
  return out;
}

}  // namespace rieszlab
