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

#include "rieszlab/quad.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <tuple>
#include <utility>

#include "rieszlab/gauss.h"
#include "rieszlab/rng.h"

namespace rieszlab {

std::string to_string(Method m) {
  switch (m) {
    case Method::kTensorGrid:
      return "grid";
    case Method::kMonteCarlo:
      return "mc";
    case Method::kQuasiMonteCarlo:
      return "qmc";
    case Method::kPolar:
      return "polar";
  }
  return "?";
}

Method parse_method(const std::string& s) {
  if (s == "grid" || s == "tensor") return Method::kTensorGrid;
  if (s == "mc") return Method::kMonteCarlo;
  if (s == "qmc") return Method::kQuasiMonteCarlo;
  if (s == "polar") return Method::kPolar;
  throw std::invalid_argument("unknown quadrature method '" + s + "'");
}

void QuadratureSpec::validate() const {
  if (samples < 1) throw std::invalid_argument("quadrature: samples >= 1");
  if (points_per_axis < 1) {
    throw std::invalid_argument("quadrature: points_per_axis >= 1");
  }
  if (!(L > 0.0) || !std::isfinite(L)) {
    throw std::invalid_argument("quadrature: L must be positive");
  }
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw std::invalid_argument("quadrature: eps must be >= 0");
  }
  if (!(target_rel_err > 0.0)) {
    throw std::invalid_argument("quadrature: target_rel_err must be positive");
  }
  if (qmc_shifts < 2) throw std::invalid_argument("quadrature: qmc_shifts >= 2");
  if (angular < 2) throw std::invalid_argument("quadrature: angular >= 2");
  if (radial_order < 2 || radial_order > 64) {
    throw std::invalid_argument("quadrature: radial_order in [2, 64]");
  }
  if (panels_per_octave < 1) {
    throw std::invalid_argument("quadrature: panels_per_octave >= 1");
  }
  if (!(r_min > 0.0)) throw std::invalid_argument("quadrature: r_min > 0");
}

namespace {

std::string describe_nonfinite(const Point& x) {
  return "integrand is not finite at " + to_string(x);
}

}  // namespace

NonFiniteSample::NonFiniteSample(const Point& x)
    : std::runtime_error(describe_nonfinite(x)), x_(x) {}

void NonFiniteTrap::rethrow() const {
  if (first_ != std::numeric_limits<std::size_t>::max()) {
    throw NonFiniteSample(x_);
  }
}

// ---------------------------------------------------------------------------
// Regions.

Region::Region(Kind k, GroupSpec g, std::optional<QuasiNormSpec> n, Point c,
               double L, double a, double b)
    : kind_(k),
      group_(std::move(g)),
      norm_(std::move(n)),
      center_(std::move(c)),
      L_(L),
      a_(a),
      b_(b) {
  if (center_.size() != 0) check_conforms(group_, center_);
}

Region Region::box(const GroupSpec& g, double L) {
  if (!(L > 0.0)) throw std::invalid_argument("Box(L): L must be positive");
  return Region(Kind::kBox, g, std::nullopt, {}, L, 0.0, 0.0);
}

Region Region::ball(const QuasiNormSpec& n, double R, Point center) {
  if (!(R > 0.0)) throw std::invalid_argument("Ball(R): R must be positive");
  return Region(Kind::kBall, n.group(), n, std::move(center), 0.0, 0.0, R);
}

Region Region::annulus(const QuasiNormSpec& n, double a, double b,
                       Point center) {
  if (!(a >= 0.0) || !(b > a)) {
    throw std::invalid_argument("Annulus(a,b): need 0 <= a < b");
  }
  return Region(Kind::kAnnulus, n.group(), n, std::move(center), 0.0, a, b);
}

Region Region::complement(const QuasiNormSpec& n, double R, double L,
                          Point center) {
  if (!(R > 0.0) || !(L > 0.0)) {
    throw std::invalid_argument("Complement(R, L): R, L must be positive");
  }
  return Region(Kind::kComplement, n.group(), n, std::move(center), L, R,
                std::numeric_limits<double>::infinity());
}

Region Region::whole(const QuasiNormSpec& n) {
  return Region(Kind::kWhole, n.group(), n, {}, 0.0, 0.0,
                std::numeric_limits<double>::infinity());
}

// ---------------------------------------------------------------------------
// Box methods. The integrand receives translated coordinates z with
// y = c . z, which is measure preserving.

namespace {

using Extents = std::array<double, kMaxDim>;

// Generalized golden ratio: root of x^(d+1) = x + 1.
double kronecker_root(std::size_t d) {
  double x = 2.0;
  for (int i = 0; i < 100; ++i) x = std::pow(1.0 + x, 1.0 / (d + 1.0));
  return x;
}

template <class F>
Estimate box_estimate(std::size_t dim, const Extents& ext, F f,
                      const QuadratureSpec& spec, std::uint64_t stream) {
  double vol = 1.0;
  for (std::size_t i = 0; i < dim; ++i) vol *= 2.0 * ext[i];
  NonFiniteTrap trap;
  auto eval = [&](std::size_t idx, const Point& z) {
    return trap.check(f(z), idx, z);
  };
  Estimate e;
  switch (spec.method) {
    case Method::kMonteCarlo: {
      const CounterRng rng(spec.seed);
      const std::size_t n = spec.samples;
      const Moments m = blocked_moments(
          n,
          [&](std::size_t j) {
            Point z(dim);
            for (std::size_t i = 0; i < dim; ++i) {
              z[i] = ext[i] * rng.uniform(stream, j, i, -1.0, 1.0);
            }
            return eval(j, z);
          },
          spec.exec);
      const double mean = m.sum / n;
      const double var = std::max(0.0, m.sum_sq / n - mean * mean);
      e.value = vol * mean;
      e.error = vol * std::sqrt(var / std::max<std::size_t>(n - 1, 1));
      e.evaluations = n;
      break;
    }
    case Method::kQuasiMonteCarlo: {
      const CounterRng rng(spec.seed);
      const std::size_t R = spec.qmc_shifts;
      const std::size_t m = (spec.samples + R - 1) / R;
      const double phi = kronecker_root(dim);
      Extents alpha{};
      for (std::size_t i = 0; i < dim; ++i) {
        alpha[i] = std::fmod(std::pow(1.0 / phi, i + 1.0), 1.0);
      }
      std::vector<double> reps(R);
      for (std::size_t r = 0; r < R; ++r) {
        Extents shift{};
        for (std::size_t i = 0; i < dim; ++i) {
          shift[i] = rng.uniform(stream, r, i);
        }
        const double s = blocked_sum(
            m,
            [&](std::size_t j) {
              Point z(dim);
              for (std::size_t i = 0; i < dim; ++i) {
                double u = shift[i] + (j + 1) * alpha[i];
                u -= std::floor(u);
                z[i] = ext[i] * (2.0 * u - 1.0);
              }
              return eval(r * m + j, z);
            },
            spec.exec);
        reps[r] = vol * s / m;
      }
      const double mean = pairwise_sum(reps) / R;
      double ss = 0.0;
      for (double v : reps) ss += (v - mean) * (v - mean);
      e.value = mean;
      e.error = std::sqrt(ss / (R - 1) / R);
      e.evaluations = R * m;
      break;
    }
    case Method::kTensorGrid: {
      auto grid = [&](std::size_t n) {
        double total = 1.0;
        for (std::size_t i = 0; i < dim; ++i) total *= n;
        if (total > 4e9) {
          throw std::invalid_argument("grid: points_per_axis^N too large");
        }
        const std::size_t count = static_cast<std::size_t>(total);
        const double s = blocked_sum(
            count,
            [&](std::size_t j) {
              Point z(dim);
              std::size_t rest = j;
              for (std::size_t i = 0; i < dim; ++i) {
                const std::size_t k = rest % n;
                rest /= n;
                z[i] = ext[i] * (-1.0 + (2.0 * k + 1.0) / n);
              }
              return eval(j, z);
            },
            spec.exec);
        return std::make_pair(vol * s / count, count);
      };
      const auto fine = grid(spec.points_per_axis);
      e.value = fine.first;
      e.evaluations = fine.second;
      if (spec.points_per_axis >= 4) {
        const auto coarse = grid(spec.points_per_axis / 2);
        e.error = std::abs(fine.first - coarse.first);
        e.evaluations += coarse.second;
      } else {
        e.error = std::abs(fine.first);
      }
      break;
    }
    case Method::kPolar:
      throw std::logic_error("box_estimate: polar is not a box method");
  }
  trap.rethrow();
  return e;
}

Extents ball_extents(const QuasiNormSpec& n, double R) {
  Extents ext{};
  const GroupSpec& g = n.group();
  for (std::size_t i = 0; i < g.dim(); ++i) {
    ext[i] = std::pow(R, g.weight(i)) * n.unit_ball_extent(i);
  }
  return ext;
}

void accumulate(Estimate* total, const Estimate& part) {
  total->value += part.value;
  total->error = std::hypot(total->error, part.error);
  total->evaluations += part.evaluations;
}

// Shell a <= |z| < b around the center on its bounding box.
Estimate shell(const Integrand& f, const QuasiNormSpec& n, const Point& c,
               double a, double b, const QuadratureSpec& spec,
               std::uint64_t stream) {
  const GroupSpec& g = n.group();
  return box_estimate(
      g.dim(), ball_extents(n, b),
      [&](const Point& z) {
        const double r = n(z);
        if (r < a || r >= b) return 0.0;
        return f(c.size() ? multiply(g, c, z) : z);
      },
      spec, stream);
}

// Ratio-2 shells from `start` towards 0 (dir = -1) or infinity (dir = +1),
// with geometric extrapolation of the remainder.
Estimate open_shells(const Integrand& f, const QuasiNormSpec& n,
                     const Point& c, double start, int dir,
                     const QuadratureSpec& spec, std::uint64_t stream) {
  Estimate total;
  double prev = 0.0;
  double r = start;
  for (std::size_t k = 0; k < spec.max_shells; ++k) {
    const double next = dir > 0 ? 2.0 * r : 0.5 * r;
    const Estimate s = dir > 0 ? shell(f, n, c, r, next, spec, stream + k)
                               : shell(f, n, c, next, r, spec, stream + k);
    accumulate(&total, s);
    r = next;
    if (k >= 2) {
      if (s.value == 0.0 && prev == 0.0) return total;
      const double ratio = s.value / prev;
      if (ratio > 0.0 && ratio < 1.0) {
        const double rem = s.value * ratio / (1.0 - ratio);
        if (std::abs(rem) <= 0.1 * spec.target_rel_err * std::abs(total.value) ||
            k + 1 == spec.max_shells) {
          total.value += rem;
          total.error = std::hypot(total.error, 0.5 * std::abs(rem));
          return total;
        }
      } else if (k + 1 == spec.max_shells) {
        return Estimate::diverges(
            dir > 0 ? "shell contributions do not decay towards infinity"
                    : "shell contributions do not decay towards the origin");
      }
    }
    prev = s.value;
  }
  return total;
}

Estimate annulus_box(const Integrand& f, const QuasiNormSpec& n,
                     const Point& c, double a, double b,
                     const QuadratureSpec& spec) {
  Estimate total;
  if (a > 0.0 && std::isfinite(b)) {
    std::uint64_t k = 0;
    for (double r = a; r < b; r *= 2.0, ++k) {
      accumulate(&total, shell(f, n, c, r, std::min(2.0 * r, b), spec, 100 + k));
    }
    return total;
  }
  if (a == 0.0 && std::isfinite(b)) {
    return open_shells(f, n, c, b, -1, spec, 1000);
  }
  if (a > 0.0) return open_shells(f, n, c, a, +1, spec, 2000);
  const Estimate in = open_shells(f, n, c, 1.0, -1, spec, 1000);
  if (in.divergent) return in;
  const Estimate out = open_shells(f, n, c, 1.0, +1, spec, 2000);
  if (out.divergent) return out;
  total = in;
  accumulate(&total, out);
  return total;
}

Estimate integrate_box_methods(const Integrand& f, const Region& region,
                               const QuadratureSpec& spec) {
  const GroupSpec& g = region.group();
  const Point& c = region.center();
  auto translated = [&](const Point& z) {
    return c.size() ? f(multiply(g, c, z)) : f(z);
  };
  switch (region.kind()) {
    case Region::Kind::kBox: {
      Extents ext{};
      for (std::size_t i = 0; i < g.dim(); ++i) {
        ext[i] = std::pow(region.L(), g.weight(i));
      }
      return box_estimate(g.dim(), ext, translated, spec, 1);
    }
    case Region::Kind::kBall: {
      const QuasiNormSpec& n = *region.norm();
      if (spec.eps > 0.0 && spec.eps < region.outer()) {
        return annulus_box(f, n, c, spec.eps, region.outer(), spec);
      }
      const double R = region.outer();
      return box_estimate(
          g.dim(), ball_extents(n, R),
          [&](const Point& z) { return n(z) < R ? translated(z) : 0.0; },
          spec, 1);
    }
    case Region::Kind::kAnnulus: {
      double a = region.inner();
      if (a == 0.0 && spec.eps > 0.0) a = std::min(spec.eps, 0.5 * region.outer());
      return annulus_box(f, *region.norm(), c, a, region.outer(), spec);
    }
    case Region::Kind::kComplement:
    case Region::Kind::kWhole: {
      const QuasiNormSpec& n = *region.norm();
      const double L = region.kind() == Region::Kind::kWhole ? spec.L : region.L();
      const double R = region.kind() == Region::Kind::kWhole ? spec.eps : region.inner();
      Extents ext{};
      for (std::size_t i = 0; i < g.dim(); ++i) ext[i] = std::pow(L, g.weight(i));
      return box_estimate(
          g.dim(), ext,
          [&](const Point& z) { return n(z) >= R ? translated(z) : 0.0; },
          spec, 1);
    }
  }
  return {};
}

}  // namespace

// ---------------------------------------------------------------------------
// Polar engine.

namespace {

std::vector<std::pair<Point, double>> euclidean_sphere_rule(
    std::size_t dim, std::size_t res, std::uint64_t seed,
    std::vector<std::uint32_t>* replica, std::uint32_t* replicas) {
  std::vector<std::pair<Point, double>> out;
  const double two_pi = 2.0 * std::numbers::pi;
  if (dim == 1) {
    out.push_back({Point{1.0}, 1.0});
    out.push_back({Point{-1.0}, 1.0});
    replica->assign(2, 0);
    *replicas = 1;
    return out;
  }
  if (dim == 2) {
    const std::size_t m = 2 * res;
    for (std::size_t k = 0; k < m; ++k) {
      const double phi = two_pi * (k + 0.5) / m;
      out.push_back({Point{std::cos(phi), std::sin(phi)}, two_pi / m});
      replica->push_back(k % 2);
    }
    *replicas = 2;
    return out;
  }
  if (dim == 3) {
    // Gauss in z on each hemisphere, so the equator is a panel edge.
    const std::size_t half = std::max<std::size_t>(1, res / 4);
    const GaussRule& gz = gauss_legendre(half);
    const std::size_t m = 2 * (res / 2 + res % 2);
    for (std::size_t j = 0; j < 2 * half; ++j) {
      const std::size_t q = j % half;
      const double z = j < half ? 0.5 * (gz.x[q] - 1.0) : 0.5 * (gz.x[q] + 1.0);
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      for (std::size_t k = 0; k < m; ++k) {
        const double phi = two_pi * (k + 0.5 * (j % 2 + 0.5)) / m;
        out.push_back({Point{rho * std::cos(phi), rho * std::sin(phi), z},
                       0.5 * gz.w[q] * two_pi / m});
        replica->push_back(k % 2);
      }
    }
    *replicas = 2;
    return out;
  }
  // Randomly shifted Kronecker points mapped to Gaussians and normalized.
  const std::uint32_t R = 8;
  const std::size_t per = std::max<std::size_t>(4, res * res / 4);
  const std::size_t pairs = (dim + 1) / 2;
  const double phi = kronecker_root(2 * pairs);
  std::array<double, 2 * kMaxDim> alpha{};
  for (std::size_t i = 0; i < 2 * pairs; ++i) {
    alpha[i] = std::fmod(std::pow(1.0 / phi, i + 1.0), 1.0);
  }
  const double area = 2.0 * std::pow(std::numbers::pi, dim / 2.0) /
                      std::tgamma(dim / 2.0);
  const CounterRng rng(seed);
  for (std::uint32_t r = 0; r < R; ++r) {
    for (std::size_t j = 0; j < per; ++j) {
      Point x(dim);
      double norm2 = 0.0;
      for (std::size_t p = 0; p < pairs; ++p) {
        double u1 = rng.uniform(77, r, 2 * p) + (j + 1) * alpha[2 * p];
        double u2 = rng.uniform(77, r, 2 * p + 1) + (j + 1) * alpha[2 * p + 1];
        u1 = std::max(u1 - std::floor(u1), 1e-300);
        u2 -= std::floor(u2);
        const double rad = std::sqrt(-2.0 * std::log(u1));
        x[2 * p] = rad * std::cos(two_pi * u2);
        if (2 * p + 1 < dim) x[2 * p + 1] = rad * std::sin(two_pi * u2);
      }
      for (std::size_t i = 0; i < dim; ++i) norm2 += x[i] * x[i];
      const double inv = 1.0 / std::sqrt(norm2);
      for (std::size_t i = 0; i < dim; ++i) x[i] *= inv;
      out.push_back({x, area / (R * per)});
      replica->push_back(r);
    }
  }
  *replicas = R;
  return out;
}

AngularRule build_angular(const QuasiNormSpec& n, std::size_t res,
                          std::uint64_t seed) {
  const GroupSpec& g = n.group();
  const double Q = homogeneous_dimension(g);
  AngularRule rule;
  const auto base =
      euclidean_sphere_rule(g.dim(), res, seed, &rule.replica, &rule.replicas);
  for (const auto& [theta, we] : base) {
    const double nt = n(theta);
    double nu_tt = 0.0;
    for (std::size_t i = 0; i < g.dim(); ++i) {
      nu_tt += g.weight(i) * theta[i] * theta[i];
    }
    rule.directions.push_back(dilate(g, 1.0 / nt, theta));
    rule.weights.push_back(std::pow(nt, -Q) * nu_tt * we);
  }
  rule.measure = pairwise_sum(rule.weights);
  return rule;
}

}  // namespace

std::shared_ptr<const AngularRule> angular_rule(const QuasiNormSpec& n,
                                                std::size_t resolution,
                                                std::uint64_t seed) {
  static std::mutex mu;
  static std::map<std::tuple<std::string, std::size_t, std::uint64_t>,
                  std::shared_ptr<const AngularRule>>
      cache;
  if (n.group().dim() < 4) seed = 0;  // deterministic rules
  auto key = std::make_tuple(n.name(), resolution, seed);
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto rule = std::make_shared<const AngularRule>(build_angular(n, resolution, seed));
  cache.emplace(key, rule);
  return rule;
}

RadialRule radial_rule(const GroupSpec& g, const RadialWindow& w,
                       std::size_t order, int panels_per_octave) {
  RadialRule rule;
  rule.Q = homogeneous_dimension(g);
  rule.open_lo = w.open_lo;
  rule.open_hi = w.open_hi;
  if (!(w.lo > 0.0) || !(w.hi > w.lo) || !std::isfinite(w.hi)) return rule;
  rule.s_lo = std::log(w.lo);
  rule.s_hi = std::log(w.hi);
  const double h = std::numbers::ln2 / panels_per_octave;
  std::vector<double> cuts{rule.s_lo, rule.s_hi};
  for (double k = std::ceil(rule.s_lo / h); k * h < rule.s_hi; k += 1.0) {
    cuts.push_back(k * h);
  }
  for (double b : w.breaks) {
    if (b > w.lo && b < w.hi) cuts.push_back(std::log(b));
  }
  std::sort(cuts.begin(), cuts.end());
  const GaussRule& gl = gauss_legendre(order);
  rule.order = order;
  rule.edges.push_back(cuts.front());
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    const double a = cuts[p], b = cuts[p + 1];
    if (b - a < 1e-12) continue;
    rule.edges.push_back(b);
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (std::size_t k = 0; k < order; ++k) {
      const double s = mid + half * gl.x[k];
      const double r = std::exp(s);
      rule.s.push_back(s);
      rule.r.push_back(r);
      rule.ws.push_back(half * gl.w[k]);
      rule.ws_low.push_back(half * gl.w_low[k]);
      rule.rq.push_back(std::pow(r, rule.Q));
      std::array<double, kMaxDim> sc{};
      for (std::size_t i = 0; i < g.dim(); ++i) {
        const double nu = g.weight(i);
        sc[i] = nu == 1.0 ? r : (nu == 2.0 ? r * r : std::pow(r, nu));
      }
      rule.scale.push_back(sc);
    }
  }
  return rule;
}

namespace detail {

namespace {

// Tail of F beyond node `last` in direction `dir`, with F(s) modelled as
// F_last exp(k (s - s_last)) from the pair (prev, last).
bool tail(double s_prev, double f_prev, double s_last, double f_last,
          double s_edge, double fmax, double* out) {
  *out = 0.0;
  if (f_last == 0.0 || std::abs(f_last) <= 1e-15 * fmax) return true;
  // Not decaying like a power at the edge, but too small to matter.
  const bool negligible = std::abs(f_last) <= 1e-8 * fmax;
  if (f_prev == 0.0 || (f_prev > 0) != (f_last > 0)) return negligible;
  const double k = std::log(f_last / f_prev) / (s_last - s_prev);
  // k is the growth rate in the direction away from the window.
  const double away = s_last < s_prev ? -k : k;
  if (!(away < 0.0)) return negligible;
  *out = f_last * std::exp(away * std::abs(s_edge - s_last)) / (-away);
  return true;
}

}  // namespace

RadialSum finish_radial(const RadialRule& rule, const double* F) {
  RadialSum out;
  const std::size_t m = rule.r.size();
  if (m == 0) return out;
  double buf[512];
  std::vector<double> big;
  double* v = buf;
  if (m > 512) {
    big.resize(m);
    v = big.data();
  }
  double fmax = 0.0;
  double low = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    v[j] = rule.ws[j] * F[j];
    low += rule.ws_low[j] * F[j];
    fmax = std::max(fmax, std::abs(F[j]));
  }
  out.value = pairwise_sum({v, m});
  out.error = std::abs(out.value - low);
  out.peak = fmax;
  if (m < 2) return out;
  if (rule.open_lo) {
    double t = 0.0;
    if (!tail(rule.s[1], F[1], rule.s[0], F[0], rule.s_lo, fmax, &t)) {
      out.divergent = true;
    }
    out.tail += t;
  }
  if (rule.open_hi) {
    double t = 0.0;
    if (!tail(rule.s[m - 2], F[m - 2], rule.s[m - 1], F[m - 1], rule.s_hi,
              fmax, &t)) {
      out.divergent = true;
    }
    out.tail += t;
  }
  out.value += out.tail;
  return out;
}

}  // namespace detail

Estimate combine_directions(const AngularRule& ang,
                            const std::vector<RadialSum>& per_dir,
                            std::size_t evaluations) {
  const std::size_t nd = per_dir.size();
  std::vector<double> contrib(nd), tails(nd);
  double peak = 0.0;
  for (const RadialSum& r : per_dir) peak = std::max(peak, r.peak);
  for (std::size_t i = 0; i < nd; ++i) {
    // A ray that never leaves the underflow regime cannot diverge.
    if (per_dir[i].divergent && per_dir[i].peak > 1e-12 * peak) {
      Estimate e = Estimate::diverges(
          "radial integrand does not decay at an open end of the window");
      e.evaluations = evaluations;
      return e;
    }
    contrib[i] = ang.weights[i] * per_dir[i].value;
    tails[i] = ang.weights[i] *
               (0.1 * std::abs(per_dir[i].tail) + per_dir[i].error);
  }
  Estimate e;
  e.value = pairwise_sum(contrib);
  e.evaluations = evaluations;
  if (ang.replicas >= 2) {
    std::vector<std::vector<double>> parts(ang.replicas);
    for (std::size_t i = 0; i < nd; ++i) parts[ang.replica[i]].push_back(contrib[i]);
    std::vector<double> est(ang.replicas);
    for (std::uint32_t r = 0; r < ang.replicas; ++r) {
      est[r] = ang.replicas * pairwise_sum(parts[r]);
    }
    const double mean = pairwise_sum(est) / ang.replicas;
    double ss = 0.0;
    for (double v : est) ss += (v - mean) * (v - mean);
    e.error = std::sqrt(ss / (ang.replicas - 1) / ang.replicas);
  }
  e.error += pairwise_sum(tails);
  return e;
}

namespace {

Estimate integrate_polar(const Integrand& f, const Region& region,
                         const QuadratureSpec& spec) {
  const QuasiNormSpec* n = region.norm();
  if (n == nullptr) {
    throw std::invalid_argument("polar quadrature needs a norm-defined region");
  }
  RadialWindow w;
  const double eps = spec.eps;
  switch (region.kind()) {
    case Region::Kind::kBall:
    case Region::Kind::kAnnulus:
    case Region::Kind::kWhole: {
      const double a = region.inner();
      const double b = region.outer();
      if (a > 0.0) {
        w.lo = a;
      } else if (eps > 0.0) {
        w.lo = eps;
      } else {
        w.lo = std::isfinite(b) ? std::min(spec.r_min, 0.5 * b) : spec.r_min;
        w.open_lo = true;
      }
      if (std::isfinite(b)) {
        w.hi = b;
      } else {
        w.hi = std::max(spec.L, 4.0 * w.lo);
        w.open_hi = true;
      }
      break;
    }
    case Region::Kind::kComplement:
      w.lo = region.inner();
      w.hi = region.L();
      break;
    case Region::Kind::kBox:
      break;
  }
  const RadialRule rule = radial_rule(region.group(), w, spec.radial_order,
                                      spec.panels_per_octave);
  const auto ang = angular_rule(*n, spec.angular, spec.seed);
  return polar_integrate(region.group(), *ang, region.center(), rule,
                         [&](const Point& x) { return f(x); }, spec.exec);
}

}  // namespace

Estimate integrate(const Integrand& f, const Region& region,
                   const QuadratureSpec& spec) {
  spec.validate();
  if (spec.method == Method::kPolar) return integrate_polar(f, region, spec);
  return integrate_box_methods(f, region, spec);
}

Estimate sphere_measure(const QuasiNormSpec& n, const QuadratureSpec& spec) {
  spec.validate();
  const double Q = homogeneous_dimension(n.group());
  if (spec.method == Method::kPolar) {
    const auto ang = angular_rule(n, spec.angular, spec.seed);
    std::vector<RadialSum> unit(ang->directions.size());
    for (auto& u : unit) u.value = 1.0;
    return combine_directions(*ang, unit, 0);
  }
  QuadratureSpec s = spec;
  s.eps = 0.0;
  Estimate e = integrate([](const Point&) { return 1.0; },
                         Region::ball(n, 1.0), s);
  e.value *= Q;
  e.error *= Q;
  return e;
}

PowerIntegral annulus_power_integral(const QuasiNormSpec& n, double s,
                                     double a, double b,
                                     const QuadratureSpec& spec) {
  if (!(a >= 0.0) || !(b > a)) {
    throw std::invalid_argument("annulus_power_integral: need 0 <= a < b");
  }
  PowerIntegral out;
  if (std::isinf(b) && s >= 0.0) {
    out.divergent = true;
    out.reason = "|x|^(s-Q) is not integrable at infinity for s >= 0";
  } else if (a == 0.0 && s <= 0.0) {
    out.divergent = true;
    out.reason = "|x|^(s-Q) is not integrable at the origin for s <= 0";
  }
  if (out.divergent) {
    out.closed_form = std::numeric_limits<double>::infinity();
    out.numeric = Estimate::diverges(out.reason);
    return out;
  }
  out.sphere = sphere_measure(n, spec).value;
  if (s == 0.0) {
    out.closed_form = out.sphere * std::log(b / a);
  } else {
    const double bs = std::isinf(b) ? 0.0 : std::pow(b, s);
    const double as = a == 0.0 ? 0.0 : std::pow(a, s);
    out.closed_form = out.sphere * (bs - as) / s;
  }
  const double Q = homogeneous_dimension(n.group());
  QuadratureSpec q = spec;
  q.eps = 0.0;
  out.numeric = integrate(
      [&](const Point& x) { return std::pow(n(x), s - Q); },
      Region::annulus(n, a, b), q);
  return out;
}

Estimate radial_integrate(const std::function<double(double)>& phi,
                          const QuasiNormSpec& n, const QuadratureSpec& spec,
                          const std::vector<double>& breaks) {
  spec.validate();
  RadialWindow w;
  w.lo = spec.r_min;
  w.hi = std::max(spec.L, 4.0 * spec.r_min);
  w.open_lo = w.open_hi = true;
  w.breaks = breaks;
  auto run = [&](const RadialWindow& win, std::size_t* evals) {
    const RadialRule rule =
        radial_rule(n.group(), win, spec.radial_order, spec.panels_per_octave);
    *evals += rule.r.size();
    return radial_sum(rule, [&](std::size_t j) {
      const double v = phi(rule.r[j]);
      if (!std::isfinite(v)) {
        throw std::invalid_argument("radial profile is not finite at r = " +
                                    std::to_string(rule.r[j]));
      }
      return v;
    });
  };
  std::size_t evals = 0;
  RadialSum r = run(w, &evals);
  // Push the outer edge out until the extrapolated tail settles.
  for (int k = 0; k < 12; ++k) {
    if (!r.divergent && std::abs(r.tail) <= 1e-10 * std::abs(r.value)) break;
    RadialWindow wider = w;
    wider.hi *= 4.0;
    const RadialSum next = run(wider, &evals);
    const bool settled = !r.divergent && !next.divergent &&
                         std::abs(next.value - r.value) <= 1e-9 * std::abs(next.value);
    w = wider;
    r = next;
    if (settled) break;
  }
  if (r.divergent) {
    return Estimate::diverges("radial profile is not integrable against r^(Q-1)");
  }
  const Estimate s = sphere_measure(n, spec);
  Estimate e;
  e.value = s.value * r.value;
  e.error = s.error * std::abs(r.value) +
            s.value * (0.1 * std::abs(r.tail) + r.error);
  e.evaluations = evals + s.evaluations;
  return e;
}

}  // namespace rieszlab
