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

#include "rieszlab/riesz.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rieszlab/kernels.h"
#include "rieszlab/rng.h"

namespace rieszlab {
namespace {

constexpr double kInnerRel = 1.0 / 32.0;
// Deeper start for windows that open onto a power singularity.
constexpr double kSingularInnerRel = 1.0 / 1024.0;

void add(Estimate* total, const Estimate& part) {
  if (part.divergent) {
    *total = part;
    return;
  }
  if (total->divergent) return;
  total->value += part.value;
  total->error += part.error;
  total->evaluations += part.evaluations;
}

void add_breaks(std::vector<double>* out, double base, int lo, int hi) {
  for (int k = lo; k <= hi; ++k) out->push_back(base * std::pow(2.0, k / 4.0));
}

void check_lambda(const GroupSpec& g, double lambda) {
  const double Q = homogeneous_dimension(g);
  if (!(lambda > 0.0) || !(lambda < Q)) {
    throw std::invalid_argument("lambda must lie in (0, Q)");
  }
}

}  // namespace

Footprint footprint(const TestFunction& u) {
  Footprint fp;
  fp.center = u.center();
  fp.scale = u.scale();
  fp.window = u.window_radius();
  fp.compact = u.has_jump();
  if (u.has_jump()) fp.breaks.push_back(u.support_radius());
  return fp;
}

Estimate integrate_footprint(const QuasiNormSpec& n, const Footprint& fp,
                             const std::function<double(const Point&)>& h,
                             const QuadratureSpec& spec) {
  spec.validate();
  const GroupSpec& g = n.group();
  if (spec.method != Method::kPolar) {
    if (fp.compact) {
      QuadratureSpec s = spec;
      s.eps = 0.0;
      return integrate(h, Region::ball(n, fp.window, fp.center), s);
    }
    return integrate(h, Region::whole(n), spec);
  }
  const auto ang = angular_rule(n, spec.angular, spec.seed);
  const double d = n(fp.center);
  const double s = fp.scale;
  auto run = [&](const Point& c, const RadialWindow& w, auto weight) {
    const RadialRule rule =
        radial_rule(g, w, spec.radial_order, spec.panels_per_octave);
    return polar_integrate(
        g, *ang, c, rule,
        [&](const Point& x) {
          const double wt = weight(x);
          return wt == 0.0 ? 0.0 : wt * h(x);
        },
        spec.exec);
  };
  auto one = [](const Point&) { return 1.0; };

  if (d > 4.0 * s && (!fp.compact || fp.window < 0.25 * d)) {
    // Partition of unity between the bulk about c and the rest about 0.
    const double rc = 0.25 * d;
    const Point cinv = inverse(g, fp.center);
    auto near_c = [&](const Point& x) {
      return smooth_cutoff(n(multiply(g, cinv, x)) / rc);
    };
    RadialWindow wa;
    wa.lo = s * kInnerRel;
    wa.hi = 2.0 * rc;
    wa.open_lo = true;
    wa.breaks = fp.breaks;
    add_breaks(&wa.breaks, rc, 0, 4);
    Estimate total = run(fp.center, wa, near_c);
    if (!fp.compact) {
      RadialWindow wb;
      wb.lo = d * kInnerRel;
      wb.hi = d + fp.window;
      wb.open_lo = wb.open_hi = true;
      add_breaks(&wb.breaks, d, -4, 4);
      add(&total, run(Point{}, wb, [&](const Point& x) { return 1.0 - near_c(x); }));
    }
    return total;
  }
  RadialWindow w;
  w.lo = s * kInnerRel;
  w.open_lo = true;
  if (fp.compact) {
    w.hi = fp.window;
    w.breaks = fp.breaks;
    return run(fp.center, w, one);
  }
  w.hi = d + fp.window;
  w.open_hi = true;
  if (d > 0.0) add_breaks(&w.breaks, d, -4, 4);
  return run(Point{}, w, one);
}

// ---------------------------------------------------------------------------
// Riesz potential.

namespace {

// Indicator of a ball: along each ray w -> x (D_r w)^-1 the integrand is
// r^(Q-1-lambda) on the radii inside the ball, found by scanning and
// bisection, and integrated in closed form.
Estimate riesz_ball(const QuasiNormSpec& n, double lambda,
                    const TestFunction& u, const Point& x,
                    const AngularRule& ang, Execution exec) {
  const GroupSpec& g = n.group();
  const double Q = homogeneous_dimension(g);
  const double R = u.support_radius();
  const Point z0 = multiply(g, inverse(g, u.center()), x);
  const double d = n(z0);
  const double e = Q - lambda;
  const double ra = 1e-6 * R;
  const double rb = 8.0 * (d + R);
  constexpr int kScan = 96;
  auto inside = [&](const Point& w, double r) {
    if (r <= 0.0) return d < R;
    const Point y = multiply(g, z0, inverse(g, dilate(g, r, w)));
    return n(y) < R;
  };
  auto crossing = [&](const Point& w, double lo, double hi) {
    for (int it = 0; it < 60 && hi - lo > 1e-14 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (inside(w, mid) == inside(w, lo)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  };
  std::vector<RadialSum> parts(ang.directions.size());
  for_indices(
      ang.directions.size(),
      [&](std::size_t i) {
        const Point& w = ang.directions[i];
        double acc = 0.0;
        bool in = d < R;
        double start = 0.0;
        double prev_r = ra;
        if (in != inside(w, ra)) {
          // The boundary passes within ra of x; resolve it there.
          const double c = crossing(w, 0.0, ra);
          if (in) acc += std::pow(c, e) / e;
          in = !in;
          start = c;
        }
        for (int k = 1; k < kScan; ++k) {
          const double r = ra * std::pow(rb / ra, k / (kScan - 1.0));
          const bool now = inside(w, r);
          if (now != in) {
            const double c = crossing(w, prev_r, r);
            if (in) {
              acc += (std::pow(c, e) - std::pow(start, e)) / e;
            } else {
              start = c;
            }
            in = now;
          }
          prev_r = r;
        }
        if (in) acc += (std::pow(rb, e) - std::pow(start, e)) / e;
        parts[i].value = u.amplitude() * acc;
      },
      exec);
  return combine_directions(ang, parts, ang.directions.size() * kScan);
}

// origin_cut > 0 removes psi(|y| / origin_cut) of the weight's singularity.
Estimate riesz_smooth(const QuasiNormSpec& n, double lambda,
                      const TestFunction& u, const Point& x,
                      const AngularRule& ang, const QuadratureSpec& spec,
                      double alpha, double origin_cut = 0.0) {
  const GroupSpec& g = n.group();
  const double Q = homogeneous_dimension(g);
  auto v = [&](const Point& y) {
    const double val = u(y);
    if (alpha == 0.0 || val == 0.0) return val;
    const double r = n(y);
    if (origin_cut > 0.0) {
      const double keep = 1.0 - smooth_cutoff(r / origin_cut);
      if (keep == 0.0) return 0.0;
      return keep * val * std::pow(r, -alpha);
    }
    return val * std::pow(r, -alpha);
  };
  const Point z0 = multiply(g, inverse(g, u.center()), x);
  const double d = n(z0);
  const double s = u.scale();
  const double rho = 0.25 * std::max(s, d);

  // Near part about x: int v(x w^-1) |w|^-lambda psi(|w|/rho) dw.
  const double eps = spec.eps > 0.0 ? std::min(spec.eps, 0.5 * rho) : rho / 64.0;
  RadialWindow wn;
  wn.lo = eps;
  wn.hi = 2.0 * rho;
  add_breaks(&wn.breaks, rho, 0, 4);
  const RadialRule near_rule =
      radial_rule(g, wn, spec.radial_order, spec.panels_per_octave);
  std::vector<double> near_kernel(near_rule.r.size());
  for (std::size_t j = 0; j < near_rule.r.size(); ++j) {
    near_kernel[j] = std::pow(near_rule.r[j], -lambda) *
                     smooth_cutoff(near_rule.r[j] / rho);
  }
  std::vector<RadialSum> near(ang.directions.size());
  for_indices(
      ang.directions.size(),
      [&](std::size_t i) {
        const Point& w = ang.directions[i];
        near[i] = radial_sum(near_rule, [&](std::size_t j) {
          const Point wj = polar_point(g, Point{}, w, near_rule, j);
          return near_kernel[j] * v(multiply(g, x, inverse(g, wj)));
        });
      },
      spec.exec);
  Estimate total = combine_directions(ang, near, near.size() * near_rule.r.size());
  const double vx = v(x);
  total.value += vx * ang.measure * std::pow(eps, Q - lambda) / (Q - lambda);

  // Far part, about the center of u, or about x when x sits inside the bulk
  // of u and the cutoff hole would swallow the center.
  RadialWindow wf;
  const bool about_x = !u.has_jump() && d < s;
  const Point& fc = about_x ? x : u.center();
  if (about_x) {
    wf.lo = rho;
    wf.hi = u.window_radius() + d;
    wf.open_hi = true;
    add_breaks(&wf.breaks, rho, 0, 4);
    add_breaks(&wf.breaks, s, -2, 4);
  } else {
    wf.lo = s * kInnerRel;
    wf.open_lo = true;
    if (u.has_jump()) {
      wf.hi = u.support_radius();
      wf.breaks.push_back(u.support_radius());
    } else {
      wf.hi = std::max(u.window_radius(), 4.0 * d);
      wf.open_hi = true;
    }
    if (d > 0.0) add_breaks(&wf.breaks, d, -4, 4);
  }
  const RadialRule far_rule =
      radial_rule(g, wf, spec.radial_order, spec.panels_per_octave);
  const Estimate far = polar_integrate(
      g, ang, fc, far_rule,
      [&](const Point& y) {
        const double r = n(multiply(g, inverse(g, y), x));
        const double cut = 1.0 - smooth_cutoff(r / rho);
        if (cut == 0.0) return 0.0;
        const double val = v(y);
        return val == 0.0 ? 0.0 : val * cut * std::pow(r, -lambda);
      },
      spec.exec);
  add(&total, far);
  return total;
}

// Compactly supported u with x well outside the support: one polar rule
// about the center of u, bounded integrand.
Estimate riesz_outside(const QuasiNormSpec& n, double lambda,
                       const TestFunction& u, const Point& x,
                       const AngularRule& ang, const QuadratureSpec& spec,
                       double alpha) {
  const GroupSpec& g = n.group();
  const double R = u.support_radius();
  RadialWindow w;
  w.lo = R * kInnerRel;
  w.hi = R;
  w.open_lo = true;
  const RadialRule rule =
      radial_rule(g, w, spec.radial_order, spec.panels_per_octave);
  return polar_integrate(
      g, ang, u.center(), rule,
      [&](const Point& y) {
        double val = u(y);
        if (val == 0.0) return 0.0;
        if (alpha != 0.0) val *= std::pow(n(y), -alpha);
        return val * std::pow(n(multiply(g, inverse(g, y), x)), -lambda);
      },
      spec.exec);
}

// Weight |y|^-alpha: the piece near the origin by a polar rule about 0, the
// rest by the two-center split.
Estimate riesz_weighted(const QuasiNormSpec& n, double lambda,
                        const TestFunction& u, const Point& x,
                        const AngularRule& ang, const QuadratureSpec& spec,
                        double alpha) {
  const GroupSpec& g = n.group();
  const double Q = homogeneous_dimension(g);
  if (!(alpha < Q)) return Estimate::diverges("|y|^-alpha is not locally integrable");
  const double rx = n(x);
  const double s = u.scale();
  const double zc = n(u.center());
  RadialWindow w;
  w.open_lo = true;
  if (rx == 0.0) {
    if (!(alpha + lambda < Q)) {
      return Estimate::diverges("alpha + lambda >= Q at x = 0");
    }
    w.lo = std::min(s, zc > 0.0 ? zc : s) * kSingularInnerRel;
    if (u.has_jump()) {
      w.hi = zc + u.support_radius();
      w.breaks.push_back(u.support_radius());
    } else {
      w.hi = zc + u.window_radius();
      w.open_hi = true;
    }
    if (zc > 0.0) add_breaks(&w.breaks, zc, -4, 4);
    const RadialRule rule =
        radial_rule(g, w, spec.radial_order, spec.panels_per_octave);
    return polar_integrate(
        g, ang, Point{}, rule,
        [&](const Point& y) {
          const double val = u(y);
          return val == 0.0 ? 0.0 : val * std::pow(n(y), -alpha - lambda);
        },
        spec.exec);
  }
  const double rho0 = 0.125 * std::min(rx, s);
  w.lo = rho0 * kSingularInnerRel;
  w.hi = 2.0 * rho0;
  add_breaks(&w.breaks, rho0, 0, 4);
  const RadialRule rule =
      radial_rule(g, w, spec.radial_order, spec.panels_per_octave);
  Estimate total = polar_integrate(
      g, ang, Point{}, rule,
      [&](const Point& y) {
        const double r = n(y);
        const double cut = smooth_cutoff(r / rho0);
        if (cut == 0.0) return 0.0;
        const double val = u(y);
        if (val == 0.0) return 0.0;
        return cut * val * std::pow(r, -alpha) *
               std::pow(n(multiply(g, inverse(g, y), x)), -lambda);
      },
      spec.exec);
  add(&total, riesz_smooth(n, lambda, u, x, ang, spec, alpha, rho0));
  return total;
}

Estimate riesz_box(const QuasiNormSpec& n, double lambda, const TestFunction& u,
                   const Point& x, const QuadratureSpec& spec, double alpha) {
  const GroupSpec& g = n.group();
  const double Q = homogeneous_dimension(g);
  auto v = [&](const Point& y) {
    const double val = u(y);
    if (alpha == 0.0 || val == 0.0) return val;
    return val * std::pow(n(y), -alpha);
  };
  const double eps = spec.eps > 0.0 ? spec.eps : 1e-3 * u.scale();
  QuadratureSpec s = spec;
  s.eps = 0.0;
  // y = x z, so |y^-1 x| = |z|. The finite part covers u's footprint.
  const double d = n(multiply(g, inverse(g, u.center()), x));
  const double b = std::max(2.0 * (d + u.window_radius()), 4.0 * eps);
  auto f = [&](const Point& y) {
    const double r = n(multiply(g, inverse(g, y), x));
    return v(y) * std::pow(r, -lambda);
  };
  Estimate e = integrate(f, Region::annulus(n, eps, b, x), s);
  if (e.divergent) return e;
  if (!u.has_jump()) {
    add(&e, integrate(f,
                      Region::annulus(n, b, std::numeric_limits<double>::infinity(), x),
                      s));
  }
  if (e.divergent) return e;
  const double S = sphere_measure(n, s).value;
  e.value += v(x) * S * std::pow(eps, Q - lambda) / (Q - lambda);
  return e;
}

}  // namespace

Estimate riesz_apply(const QuasiNormSpec& n, double lambda,
                     const TestFunction& u, const Point& x,
                     const QuadratureSpec& spec, double alpha) {
  spec.validate();
  check_lambda(n.group(), lambda);
  check_conforms(n.group(), x);
  if (u.is_zero()) return {};
  if (spec.method != Method::kPolar) return riesz_box(n, lambda, u, x, spec, alpha);
  const auto ang = angular_rule(n, spec.angular, spec.seed);
  if (u.has_jump()) {
    const double d = n(multiply(n.group(), inverse(n.group(), u.center()), x));
    if (d > 1.25 * u.support_radius()) {
      return riesz_outside(n, lambda, u, x, *ang, spec, alpha);
    }
    if (alpha == 0.0) return riesz_ball(n, lambda, u, x, *ang, spec.exec);
  }
  if (alpha == 0.0) return riesz_smooth(n, lambda, u, x, *ang, spec, alpha);
  return riesz_weighted(n, lambda, u, x, *ang, spec, alpha);
}

std::vector<Estimate> riesz_apply_many(const QuasiNormSpec& n, double lambda,
                                       const TestFunction& u,
                                       const std::vector<Point>& xs,
                                       const QuadratureSpec& spec,
                                       double alpha) {
  spec.validate();
  check_lambda(n.group(), lambda);
  for (const Point& x : xs) check_conforms(n.group(), x);
  QuadratureSpec inner = spec;
  inner.exec = Execution::kSerial;
  std::vector<Estimate> out(xs.size());
  for_indices(
      xs.size(),
      [&](std::size_t i) { out[i] = riesz_apply(n, lambda, u, xs[i], inner, alpha); },
      spec.exec);
  return out;
}

Estimate lp_norm(const TestFunction& u, double p, const QuadratureSpec& spec,
                 double alpha) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p >= 1");
  if (u.is_zero()) return {};
  if (!u.in_weighted_lp(p, alpha)) {
    return Estimate::diverges("|x|^alpha u is not in L^p: " + u.name());
  }
  const QuasiNormSpec& n = u.norm();
  const Estimate I = integrate_footprint(
      n, footprint(u),
      [&](const Point& x) {
        const double val = std::abs(u(x));
        if (val == 0.0) return 0.0;
        double w = std::pow(val, p);
        if (alpha != 0.0) w *= std::pow(n(x), alpha * p);
        return w;
      },
      spec);
  if (I.divergent) return I;
  Estimate e = I;
  e.value = std::pow(I.value, 1.0 / p);
  e.error = I.value > 0.0 ? e.value * I.error / (p * I.value) : 0.0;
  return e;
}

SplitNorm k1_l1_norm(const QuasiNormSpec& n, const KernelSplit& split,
                     const QuadratureSpec& spec) {
  check_lambda(n.group(), split.lambda);
  if (!(split.mu > 0.0)) throw std::invalid_argument("k1_l1_norm: mu > 0");
  const double Q = homogeneous_dimension(n.group());
  const PowerIntegral pi =
      annulus_power_integral(n, Q - split.lambda, 0.0, split.mu, spec);
  SplitNorm out;
  out.numeric = pi.numeric;
  out.closed_form = pi.closed_form;
  out.blow_up = 1.0 / (Q - split.lambda);
  return out;
}

SplitNorm k2_lpprime_norm(const QuasiNormSpec& n, const KernelSplit& split,
                          double p, const QuadratureSpec& spec) {
  check_lambda(n.group(), split.lambda);
  if (!(split.mu > 0.0)) throw std::invalid_argument("k2_lpprime_norm: mu > 0");
  if (!(p > 1.0)) throw std::invalid_argument("k2_lpprime_norm: p > 1");
  const double Q = homogeneous_dimension(n.group());
  const double pp = p / (p - 1.0);
  SplitNorm out;
  const double excess = split.lambda * pp - Q;
  if (!(excess > 0.0)) {
    out.divergent = true;
    out.reason = "lambda p' <= Q: K2 is not in L^p'";
    out.numeric = Estimate::diverges(out.reason);
    out.closed_form = std::numeric_limits<double>::infinity();
    return out;
  }
  out.induced_q = Q * pp / excess;
  const PowerIntegral pi = annulus_power_integral(
      n, -excess, split.mu, std::numeric_limits<double>::infinity(), spec);
  out.numeric = pi.numeric;
  if (!pi.numeric.divergent) {
    out.numeric.value = std::pow(pi.numeric.value, 1.0 / pp);
    out.numeric.error = out.numeric.value * pi.numeric.error /
                        (pp * std::max(pi.numeric.value, 1e-300));
  }
  out.closed_form = std::pow(pi.sphere / excess, 1.0 / pp) *
                    std::pow(split.mu, -Q / out.induced_q);
  return out;
}

WeakDistribution weak_distribution(const QuasiNormSpec& n, double lambda,
                                   const TestFunction& u,
                                   const std::vector<double>& zetas,
                                   const QuadratureSpec& spec,
                                   const WeakOptions& opts) {
  spec.validate();
  check_lambda(n.group(), lambda);
  for (double z : zetas) {
    if (!(z > 0.0)) throw std::invalid_argument("weak_distribution: zeta > 0");
  }
  const GroupSpec& g = n.group();
  WeakDistribution out;
  out.domain_radius = spec.L;
  if (u.is_zero()) {
    for (double z : zetas) out.levels.push_back({z, {}});
    return out;
  }
  // Shells [0, r0), [r0, 2 r0), ... up to L about the center of u.
  std::vector<double> radii{0.0, std::min(0.25 * u.scale(), spec.L)};
  while (radii.back() < spec.L) radii.push_back(std::min(2.0 * radii.back(), spec.L));
  const std::size_t shells = radii.size() - 1;
  const std::size_t R = spec.qmc_shifts;
  const std::size_t per = std::max<std::size_t>(1, opts.points_per_shell / R);
  const std::size_t dim = g.dim();
  const CounterRng rng(spec.seed);
  std::array<double, kMaxDim> alpha{};
  {
    double phi = 2.0;
    for (int i = 0; i < 100; ++i) phi = std::pow(1.0 + phi, 1.0 / (dim + 1.0));
    for (std::size_t i = 0; i < dim; ++i) alpha[i] = std::fmod(std::pow(1.0 / phi, i + 1.0), 1.0);
  }
  const std::size_t total = shells * R * per;
  std::vector<Point> pts(total);
  std::vector<char> in_shell(total, 0);
  std::vector<double> vol(shells);
  for (std::size_t k = 0; k < shells; ++k) {
    const double b = radii[k + 1];
    vol[k] = 1.0;
    std::array<double, kMaxDim> ext{};
    for (std::size_t i = 0; i < dim; ++i) {
      ext[i] = std::pow(b, g.weight(i)) * n.unit_ball_extent(i);
      vol[k] *= 2.0 * ext[i];
    }
    for (std::size_t r = 0; r < R; ++r) {
      for (std::size_t j = 0; j < per; ++j) {
        Point z(dim);
        for (std::size_t i = 0; i < dim; ++i) {
          double a = rng.uniform(500 + k, r, i) + (j + 1) * alpha[i];
          a -= std::floor(a);
          z[i] = ext[i] * (2.0 * a - 1.0);
        }
        const double nz = n(z);
        const std::size_t idx = (k * R + r) * per + j;
        in_shell[idx] = nz >= radii[k] && nz < b;
        pts[idx] = multiply(g, u.center(), z);
      }
    }
  }
  QuadratureSpec inner = spec;
  inner.exec = Execution::kSerial;
  std::vector<double> vals(total, 0.0);
  for_indices(
      total,
      [&](std::size_t idx) {
        if (!in_shell[idx]) return;
        vals[idx] = std::abs(riesz_apply(n, lambda, u, pts[idx], inner).value);
      },
      spec.exec);
  for (std::size_t idx = 0; idx < total; ++idx) {
    if (in_shell[idx]) {
      ++out.evaluations;
      out.max_value = std::max(out.max_value, vals[idx]);
    }
  }
  for (double z : zetas) {
    std::vector<double> reps(R, 0.0);
    for (std::size_t r = 0; r < R; ++r) {
      for (std::size_t k = 0; k < shells; ++k) {
        std::size_t hits = 0;
        for (std::size_t j = 0; j < per; ++j) {
          const std::size_t idx = (k * R + r) * per + j;
          if (in_shell[idx] && vals[idx] > z) ++hits;
        }
        reps[r] += vol[k] * static_cast<double>(hits) / per;
      }
    }
    Estimate m;
    double mean = 0.0;
    for (double v : reps) mean += v;
    mean /= R;
    double ss = 0.0;
    for (double v : reps) ss += (v - mean) * (v - mean);
    m.value = mean;
    m.error = std::sqrt(ss / (R - 1) / R);
    m.evaluations = out.evaluations;
    out.levels.push_back({z, m});
  }
  return out;
}

Estimate bilinear_form(const QuasiNormSpec& n, const TestFunction& u,
                       const TestFunction& h, double lambda, double alpha,
                       double beta, const QuadratureSpec& spec) {
  spec.validate();
  check_lambda(n.group(), lambda);
  if (u.is_zero() || h.is_zero()) return {};
  QuadratureSpec inner = spec;
  inner.exec = Execution::kSerial;
  return integrate_footprint(
      n, footprint(h),
      [&](const Point& x) {
        const double hx = h(x);
        if (hx == 0.0) return 0.0;
        double w = hx * riesz_apply(n, lambda, u, x, inner, alpha).value;
        if (beta != 0.0) w *= std::pow(n(x), -beta);
        return w;
      },
      spec);
}

}  // namespace rieszlab
