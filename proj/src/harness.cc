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


#include "rieszlab/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "rieszlab/group.h"
#include "rieszlab/kernels.h"
#include "rieszlab/riesz.h"
#include "rieszlab/rng.h"

namespace rieszlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

nlohmann::ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

void check_basic(const QuasiNormSpec& n, const ExponentSet& e) {
  const double Q = homogeneous_dimension(n.group());
  if (e.Q != 0.0 && std::abs(e.Q - Q) > 1e-12 * Q) {
    throw std::invalid_argument("exponent set has Q = " + fmt(e.Q) + " but " +
                                n.group().name() + " has Q = " + fmt(Q));
  }
  if (!(e.lambda > 0.0) || !(e.lambda < Q)) {
    throw std::invalid_argument("lambda must lie in (0, Q)");
  }
  if (!(e.p >= 1.0) || !std::isfinite(e.p)) {
    throw std::invalid_argument("p must be finite and >= 1");
  }
  if (!(e.q >= 1.0) || !std::isfinite(e.q)) {
    throw std::invalid_argument("q must be finite and >= 1");
  }
  if (!std::isfinite(e.alpha) || !std::isfinite(e.beta)) {
    throw std::invalid_argument("alpha and beta must be finite");
  }
}

// Serial copy for evaluations nested inside a parallel loop.
QuadratureSpec serial(QuadratureSpec s) {
  s.exec = Execution::kSerial;
  return s;
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

void atomic_max(std::atomic<double>* a, double v) {
  double cur = a->load();
  while (v > cur && !a->compare_exchange_weak(cur, v)) {
  }
}

// Footprint for a field that lives where u does but is never compact.
Footprint potential_footprint(const TestFunction& u) {
  Footprint fp = footprint(u);
  fp.compact = false;
  fp.window = std::max(fp.window, 4.0 * u.scale());
  return fp;
}

// Effective decay rate of |I_lambda u| at infinity.
double potential_decay(double Q, double lambda, const TestFunction& u) {
  const double s = u.decay();
  return s > Q ? lambda : s + lambda - Q;
}

}  // namespace

// ---------------------------------------------------------------------------
// Exponents.

double ExponentSet::balance_defect() const {
  return Q * (1.0 / p + (alpha + beta + lambda) / Q - 1.0 - 1.0 / q);
}

nlohmann::ordered_json ExponentSet::to_json() const {
  nlohmann::ordered_json j;
  j["Q"] = number(Q);
  j["p"] = number(p);
  j["q"] = number(q);
  j["lambda"] = number(lambda);
  j["alpha"] = number(alpha);
  j["beta"] = number(beta);
  return j;
}

ExponentVerdict validate_exponents(double Q, double p, double lambda,
                                   double alpha, double beta) {
  ExponentVerdict v;
  v.exps.Q = Q;
  v.exps.p = p;
  v.exps.lambda = lambda;
  v.exps.alpha = alpha;
  v.exps.beta = beta;
  v.inv_q = 1.0 / p + (alpha + beta + lambda) / Q - 1.0;
  v.exps.q = v.inv_q > 0.0 ? 1.0 / v.inv_q : kInf;
  const double q = v.exps.q;
  const double pp = p / (p - 1.0);

  auto flag = [&](bool ok, const std::string& what) {
    if (!ok) v.failures.push_back(what);
    return ok;
  };
  v.lambda_ok = flag(lambda > 0.0 && lambda < Q, "0 < lambda < Q");
  v.p_ok = flag(p > 1.0 && std::isfinite(p), "1 < p < inf");
  v.q_finite = flag(v.inv_q > 0.0, "q < inf (1/q = " + fmt(v.inv_q) + ")");
  v.p_le_q = flag(v.q_finite && p <= q * (1.0 + 1e-12), "p <= q");
  v.alpha_ok = flag(v.p_ok && alpha < Q / pp, "alpha < Q/p'");
  v.beta_ok = flag(v.q_finite && beta < Q / q, "beta < Q/q");
  v.alpha_beta_ok = flag(alpha + beta >= 0.0, "alpha + beta >= 0");
  v.outer_tail_negative = v.p_ok && Q - pp * (alpha + lambda) < 0.0;
  v.admissible = v.failures.empty();
  return v;
}

nlohmann::ordered_json ExponentVerdict::to_json() const {
  nlohmann::ordered_json j;
  j["exponents"] = exps.to_json();
  j["inv_q"] = number(inv_q);
  j["lambda_ok"] = lambda_ok;
  j["p_ok"] = p_ok;
  j["q_finite"] = q_finite;
  j["p_le_q"] = p_le_q;
  j["alpha_ok"] = alpha_ok;
  j["beta_ok"] = beta_ok;
  j["alpha_beta_ok"] = alpha_beta_ok;
  j["outer_tail_negative"] = outer_tail_negative;
  j["admissible"] = admissible;
  j["failures"] = failures;
  return j;
}

// ---------------------------------------------------------------------------
// Quotients.

Estimate weighted_potential_norm(const QuasiNormSpec& n, double lambda,
                                 double beta, double q, const TestFunction& u,
                                 const QuadratureSpec& spec) {
  spec.validate();
  const double Q = homogeneous_dimension(n.group());
  if (!(lambda > 0.0) || !(lambda < Q)) {
    throw std::invalid_argument("lambda must lie in (0, Q)");
  }
  if (!(q >= 1.0) || !std::isfinite(q)) {
    throw std::invalid_argument("q must be finite and >= 1");
  }
  if (u.is_zero()) return {};
  if (beta * q >= Q) {
    return Estimate::diverges("|x|^(-beta q) = |x|^" + fmt(-beta * q) +
                              " is not integrable at 0");
  }
  const double decay = potential_decay(Q, lambda, u);
  if (decay <= 0.0) {
    return Estimate::diverges("I_lambda u is infinite: u decays like |x|^-" +
                              fmt(u.decay()) + " with Q - lambda = " +
                              fmt(Q - lambda));
  }
  if ((beta + decay) * q <= Q) {
    return Estimate::diverges("|x|^-beta I_lambda u decays like |x|^-" +
                              fmt(beta + decay) + ", not in L^" + fmt(q));
  }
  const QuadratureSpec inner = serial(spec);
  std::atomic<double> worst_rel{0.0};
  std::mutex mu;
  std::string inner_reason;
  const Estimate I = integrate_footprint(
      n, potential_footprint(u),
      [&](const Point& x) {
        const Estimate v = riesz_apply(n, lambda, u, x, inner);
        if (v.divergent) {
          std::lock_guard<std::mutex> lock(mu);
          if (inner_reason.empty()) inner_reason = v.reason;
          return 0.0;
        }
        const double a = std::abs(v.value);
        if (a == 0.0) return 0.0;
        atomic_max(&worst_rel, v.error / a);
        double h = std::pow(a, q);
        if (beta != 0.0) h *= std::pow(n(x), -beta * q);
        return h;
      },
      spec);
  if (!inner_reason.empty()) {
    return Estimate::diverges("I_lambda u diverges: " + inner_reason);
  }
  if (I.divergent) return I;
  Estimate e = I;
  e.value = std::pow(I.value, 1.0 / q);
  e.error = I.value > 0.0
                ? e.value * (I.error / (q * I.value) + worst_rel.load())
                : 0.0;
  return e;
}

nlohmann::ordered_json QuotientResult::to_json() const {
  nlohmann::ordered_json j;
  j["value"] = number(value);
  j["error"] = number(error);
  j["numerator"] = number(numerator.value);
  j["numerator_error"] = number(numerator.error);
  j["denominator"] = number(denominator.value);
  j["denominator_error"] = number(denominator.error);
  j["skipped"] = skipped;
  j["divergent"] = divergent;
  if (!reason.empty()) j["reason"] = reason;
  return j;
}

QuotientResult sw_quotient(const QuasiNormSpec& n, const ExponentSet& e,
                           const TestFunction& u, const QuadratureSpec& spec) {
  check_basic(n, e);
  QuotientResult r;
  if (u.is_zero()) {
    r.skipped = true;
    r.value = r.error = kNaN;
    r.reason = "u = 0: quotient undefined";
    return r;
  }
  r.denominator = lp_norm(u, e.p, spec, e.alpha);
  if (r.denominator.divergent) {
    r.divergent = true;
    r.value = r.error = kNaN;
    r.reason = "|| |x|^alpha u ||_p: " + r.denominator.reason;
    return r;
  }
  r.numerator = weighted_potential_norm(n, e.lambda, e.beta, e.q, u, spec);
  if (r.numerator.divergent) {
    r.divergent = true;
    r.value = r.error = kInf;
    r.reason = "|| |x|^-beta I_lambda u ||_q: " + r.numerator.reason;
    return r;
  }
  r.value = r.numerator.value / r.denominator.value;
  r.error = r.value * (r.numerator.error / r.numerator.value +
                       r.denominator.error / r.denominator.value);
  return r;
}

QuotientResult hls_quotient(const QuasiNormSpec& n, const ExponentSet& e,
                            const TestFunction& u, const QuadratureSpec& spec) {
  if (e.alpha != 0.0 || e.beta != 0.0) {
    throw std::invalid_argument("hls_quotient: alpha and beta must be 0");
  }
  return sw_quotient(n, e, u, spec);
}

// ---------------------------------------------------------------------------
// Dilation invariance.

VerificationReport dilation_invariance_check(const QuasiNormSpec& n,
                                             const ExponentSet& e,
                                             const TestFunction& u,
                                             const std::vector<double>& t_list,
                                             const QuadratureSpec& spec,
                                             const DilationOptions& opts) {
  if (t_list.empty()) {
    throw std::invalid_argument("dilation_invariance_check: empty t_list");
  }
  for (double t : t_list) {
    if (!(t > 0.0) || !std::isfinite(t)) {
      throw std::invalid_argument("dilation_invariance_check: t must be > 0");
    }
  }
  ExponentSet s = e;
  s.Q = homogeneous_dimension(n.group());
  s.lambda += opts.lambda_shift;
  check_basic(n, s);

  VerificationReport rep("dilation_invariance");
  nlohmann::ordered_json in;
  in["norm"] = n.name();
  in["exponents"] = e.to_json();
  in["lambda_shift"] = opts.lambda_shift;
  in["function"] = u.to_json();
  in["t"] = t_list;
  in["spread_tolerance"] = opts.spread_tolerance;
  in["drift_tolerance"] = opts.drift_tolerance;
  rep.set_inputs(in);
  rep.set_seed(spec.seed);

  const QuadratureSpec inner = serial(spec);
  std::vector<QuotientResult> qs(t_list.size());
  std::vector<std::string> errors(t_list.size());
  for_indices(
      t_list.size(),
      [&](std::size_t i) {
        try {
          qs[i] = sw_quotient(n, s, u.dilated(t_list[i]), inner);
        } catch (const std::exception& ex) {
          errors[i] = ex.what();
        }
      },
      spec.exec);

  std::vector<double> lt, lq;
  double lo = kInf, hi = 0.0;
  bool ok = true;
  for (std::size_t i = 0; i < t_list.size(); ++i) {
    const QuotientResult& r = qs[i];
    rep.add_quantity("quotient[t=" + fmt(t_list[i]) + "]", r.value, r.error);
    if (!errors[i].empty() || r.divergent || r.skipped ||
        !std::isfinite(r.value)) {
      ok = false;
      rep.add_note("t=" + fmt(t_list[i]) + ": " +
                   (errors[i].empty() ? r.reason : errors[i]));
      continue;
    }
    lo = std::min(lo, r.value);
    hi = std::max(hi, r.value);
    lt.push_back(std::log(t_list[i]));
    lq.push_back(std::log(r.value));
  }
  rep.check_true("all quotients finite", ok);
  if (!ok) return rep;

  const double spread = (hi - lo) / lo;
  rep.add_quantity("spread", spread);
  const double predicted = s.balance_defect();
  rep.add_quantity("predicted_drift", predicted);
  const bool distinct =
      *std::max_element(lt.begin(), lt.end()) > *std::min_element(lt.begin(), lt.end());
  if (opts.lambda_shift == 0.0) {
    rep.check_le("spread", spread, opts.spread_tolerance);
  }
  if (distinct) {
    const double drift = ls_slope(lt, lq);
    rep.add_quantity("drift_exponent", drift);
    rep.check_le("|drift_exponent - predicted|", std::abs(drift - predicted),
                 opts.drift_tolerance);
  } else {
    rep.add_note("single dilation factor: no drift fit");
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Proof zones.

std::array<Estimate, 3> zoned_potential(const QuasiNormSpec& n, double lambda,
                                        const TestFunction& u, const Point& x,
                                        const QuadratureSpec& spec) {
  const GroupSpec& g = n.group();
  const double Q = homogeneous_dimension(g);
  if (!(lambda > 0.0) || !(lambda < Q)) {
    throw std::invalid_argument("lambda must lie in (0, Q)");
  }
  check_conforms(g, x);
  std::array<Estimate, 3> out{};
  if (u.is_zero()) return out;

  const double ax = n(x);
  const Point xinv = inverse(g, x);
  const double d = n(multiply(g, xinv, u.center()));
  const double s = u.scale();
  const double R = u.support_radius();
  const auto ang = angular_rule(n, spec.angular, spec.seed);
  const std::size_t nd = ang->directions.size();

  // Sums u(y) |y^-1 x|^-lambda weight(y) per zone over a polar rule about c.
  auto run = [&](const Point& c, const RadialWindow& w, auto weight) {
    const RadialRule rule =
        radial_rule(g, w, spec.radial_order, spec.panels_per_octave);
    const std::size_t m = rule.r.size();
    std::array<std::vector<RadialSum>, 3> parts;
    for (auto& p : parts) p.resize(nd);
    NonFiniteTrap trap;
    for_indices(
        nd,
        [&](std::size_t i) {
          std::vector<double> val(m);
          std::vector<int> zone(m);
          for (std::size_t j = 0; j < m; ++j) {
            const Point y = polar_point(g, c, ang->directions[i], rule, j);
            const double ay = n(y);
            zone[j] = ay < 0.5 * ax ? 0 : (ay <= 2.0 * ax ? 1 : 2);
            const double uy = u(y);
            if (uy == 0.0) {
              val[j] = 0.0;
              continue;
            }
            const double dyx = n(multiply(g, inverse(g, y), x));
            const double wt = weight(dyx);
            val[j] = wt == 0.0 ? 0.0
                               : trap.check(uy * wt * std::pow(dyx, -lambda), i * m + j, y);
          }
          // A zone at or below 1e-14 of the ray's peak is dropped, so that
          // underflowing values do not read as a non-decaying tail.
          std::array<double, 3> peak{};
          double top = 0.0;
          for (std::size_t j = 0; j < m; ++j) {
            const double f = std::abs(val[j]) * rule.rq[j];
            peak[zone[j]] = std::max(peak[zone[j]], f);
            top = std::max(top, f);
          }
          for (int k = 0; k < 3; ++k) {
            if (peak[k] <= 1e-14 * top) {
              parts[k][i] = RadialSum{};
              continue;
            }
            parts[k][i] = radial_sum(
                rule, [&](std::size_t j) { return zone[j] == k ? val[j] : 0.0; });
          }
        },
        spec.exec);
    trap.rethrow();
    std::array<Estimate, 3> r;
    for (int k = 0; k < 3; ++k) {
      r[k] = combine_directions(*ang, parts[k], k == 0 ? nd * m : 0);
    }
    return r;
  };
  auto zone_breaks = [&](RadialWindow* w) {
    if (ax > 0.0) {
      for (int k = -6; k <= 8; ++k) w->breaks.push_back(ax * std::pow(2.0, k / 4.0));
    }
  };
  auto clip = [](RadialWindow* w) {
    std::erase_if(w->breaks, [&](double b) { return !(b > w->lo && b < w->hi); });
  };
  auto one = [](double) { return 1.0; };

  if (d > 4.0 * s && !(std::isfinite(R) && R >= 0.25 * d)) {
    // Partition of unity: the part within 2 rho of x about x, the rest
    // about the center of u.
    const double rho = 0.25 * d;
    RadialWindow wn;
    wn.lo = std::min(rho, s) / 1024.0;
    wn.hi = 2.0 * rho;
    wn.open_lo = true;
    zone_breaks(&wn);
    for (int k = 0; k <= 4; ++k) wn.breaks.push_back(rho * std::pow(2.0, k / 4.0));
    clip(&wn);
    out = run(x, wn, [&](double r) { return smooth_cutoff(r / rho); });
    RadialWindow wf;
    wf.lo = s / 32.0;
    wf.open_lo = true;
    if (std::isfinite(R)) {
      wf.hi = R;
    } else {
      wf.hi = u.window_radius();
      wf.open_hi = true;
    }
    wf.hi = std::max(wf.hi, 4.0 * wf.lo);
    clip(&wf);
    const auto far =
        run(u.center(), wf, [&](double r) { return 1.0 - smooth_cutoff(r / rho); });
    for (int k = 0; k < 3; ++k) {
      if (far[k].divergent || out[k].divergent) {
        out[k] = far[k].divergent ? far[k] : out[k];
        continue;
      }
      out[k].value += far[k].value;
      out[k].error += far[k].error;
      out[k].evaluations += far[k].evaluations;
    }
    return out;
  }

  RadialWindow w;
  w.lo = (ax > 0.0 ? std::min(ax, s) : s) / 1024.0;
  w.open_lo = true;
  if (std::isfinite(R)) {
    w.hi = d + R;
    if (d > R) w.breaks.push_back(d - R);
  } else {
    w.hi = d + u.window_radius();
    w.open_hi = true;
  }
  w.hi = std::max(w.hi, 4.0 * w.lo);
  if (d > w.lo) w.breaks.push_back(d);
  zone_breaks(&w);
  clip(&w);
  return run(x, w, one);
}

namespace {

struct PointLess {
  bool operator()(const Point& a, const Point& b) const {
    return std::lexicographical_compare(a.coords().begin(), a.coords().end(),
                                        b.coords().begin(), b.coords().end());
  }
};

ZoneBound sample_zone(const QuasiNormSpec& n, Zone zone, std::size_t samples,
                      std::uint64_t seed) {
  const GroupSpec& g = n.group();
  const CounterRng rng(seed);
  const int z = static_cast<int>(zone);
  ZoneBound b;
  b.name = zone == Zone::kInner    ? "|x| <= 2|y^-1 x| for |y| < |x|/2"
           : zone == Zone::kMiddle ? "|y^-1 x| < 3|y| for |x|/2 <= |y| <= 2|x|"
                                   : "|y| <= 2|y^-1 x| for |y| > 2|x|";
  static constexpr double kLo[] = {1e-3, 0.5, 2.0};
  static constexpr double kHi[] = {0.5, 2.0, 1e3};
  for (std::size_t i = 0; i < samples; ++i) {
    const Point x = random_point(g, rng, 100 + z, i);
    const double ax = n(x);
    if (!(ax > 0.0)) continue;
    Point dir(g.dim());
    for (std::size_t c = 0; c < g.dim(); ++c) {
      dir[c] = rng.uniform(200 + z, i, c, -1.0, 1.0);
    }
    const Point omega = rescale_to_unit_sphere(n, dir);
    const double rho = rng.log_uniform(300 + z, i, 0, kLo[z], kHi[z]);
    const Point y = dilate(g, rho * ax, omega);
    const double ay = n(y);
    const double dyx = n(multiply(g, inverse(g, y), x));
    double ratio = 0.0;
    bool bad = false;
    switch (zone) {
      case Zone::kInner:
        ratio = ax / (2.0 * dyx);
        bad = !(ratio <= 1.0);
        break;
      case Zone::kMiddle:
        ratio = dyx / (3.0 * ay);
        bad = !(ratio < 1.0);
        break;
      case Zone::kOuter:
        ratio = ay / (2.0 * dyx);
        bad = !(ratio <= 1.0);
        break;
    }
    ++b.samples;
    b.worst = std::max(b.worst, ratio);
    if (bad) ++b.violations;
  }
  return b;
}

}  // namespace

Decomposition decomposition_profile(const QuasiNormSpec& n,
                                    const ExponentSet& e,
                                    const TestFunction& u,
                                    const QuadratureSpec& spec,
                                    const DecompositionOptions& opts) {
  check_basic(n, e);
  Decomposition out;
  const TriangleEstimate tri =
      quasi_triangle_constant(n, opts.triangle_samples, opts.seed);
  out.triangle_constant = tri.constant;
  if (tri.constant > 1.0 + 1e-10) {
    throw std::invalid_argument(
        "decomposition_profile: " + n.name() + " has sampled triangle constant " +
        fmt(tri.constant) + " > 1 + 1e-10; the zone bounds need a norm");
  }
  VerificationReport& rep = out.report;
  rep = VerificationReport("decomposition_profile");
  nlohmann::ordered_json in;
  in["norm"] = n.name();
  in["exponents"] = e.to_json();
  in["function"] = u.to_json();
  in["samples_per_zone"] = opts.samples;
  in["tolerance"] = opts.tolerance;
  rep.set_inputs(in);
  rep.set_seed(opts.seed);
  rep.add_quantity("triangle_constant", tri.constant);

  // One zoned evaluation per outer node, shared by the four outer integrals.
  const QuadratureSpec inner = serial(spec);
  std::mutex mu;
  std::map<Point, std::array<double, 3>, PointLess> cache;
  auto zones_at = [&](const Point& x) {
    {
      std::lock_guard<std::mutex> lock(mu);
      auto it = cache.find(x);
      if (it != cache.end()) return it->second;
    }
    const auto z = zoned_potential(n, e.lambda, u, x, inner);
    const std::array<double, 3> v{z[0].value, z[1].value, z[2].value};
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(x, v);
    return v;
  };
  const Footprint fp = potential_footprint(u);
  auto weight = [&](const Point& x) {
    return e.beta == 0.0 ? 1.0 : std::pow(n(x), -e.beta * e.q);
  };
  for (int k = 0; k < 3; ++k) {
    out.zones[k] = integrate_footprint(
        n, fp,
        [&](const Point& x) { return weight(x) * std::pow(std::abs(zones_at(x)[k]), e.q); },
        spec);
  }
  out.full = integrate_footprint(
      n, fp,
      [&](const Point& x) {
        const auto z = zones_at(x);
        return weight(x) * std::pow(std::abs(z[0] + z[1] + z[2]), e.q);
      },
      spec);
  const Estimate direct = weighted_potential_norm(n, e.lambda, e.beta, e.q, u, spec);
  out.direct = direct;
  if (!direct.divergent) {
    out.direct.value = std::pow(direct.value, e.q);
    out.direct.error = e.q * out.direct.value * direct.error / direct.value;
  }

  const double sum = out.zones[0].value + out.zones[1].value + out.zones[2].value;
  rep.add_quantity("I1", out.zones[0].value, out.zones[0].error);
  rep.add_quantity("I2", out.zones[1].value, out.zones[1].error);
  rep.add_quantity("I3", out.zones[2].value, out.zones[2].error);
  rep.add_quantity("I1+I2+I3", sum);
  rep.add_quantity("full_same_rule", out.full.value, out.full.error);
  rep.add_quantity("direct", out.direct.value, out.direct.error);
  rep.check_le("|I1+I2+I3 - direct| / direct",
               std::abs(sum - out.direct.value) / out.direct.value,
               opts.tolerance, "literal zone identity");
  rep.check_le("|full - direct| / direct",
               std::abs(out.full.value - out.direct.value) / out.direct.value,
               opts.tolerance, "zoned rule against riesz_apply");
  rep.check_le("(I1+I2+I3) / full", sum / out.full.value, 1.0 + opts.tolerance,
               "sum of q-th powers below the q-th power of the sum");
  rep.check_le("full / (3^(q-1) (I1+I2+I3))",
               out.full.value / (std::pow(3.0, e.q - 1.0) * sum),
               1.0 + opts.tolerance, "power mean bound");

  for (int z = 0; z < 3; ++z) {
    out.bounds[z] = sample_zone(n, static_cast<Zone>(z), opts.samples,
                                opts.seed + 17 * z);
    const ZoneBound& b = out.bounds[z];
    rep.add_quantity("worst_ratio[zone " + std::to_string(z + 1) + "]", b.worst);
    rep.check_le("violations: " + b.name, static_cast<double>(b.violations), 0.0,
                 std::to_string(b.samples) + " samples");
  }
  rep.set_samples(opts.samples * 3);
  return out;
}

// ---------------------------------------------------------------------------
// Dyadic shells.

DyadicProfile dyadic_profile(const QuasiNormSpec& n, const ExponentSet& e,
                             const TestFunction& u, int k_lo, int k_hi,
                             const QuadratureSpec& spec, double tolerance) {
  check_basic(n, e);
  if (std::abs(e.p - e.q) > 1e-12 * e.p) {
    throw std::invalid_argument("dyadic_profile: needs p = q");
  }
  if (k_lo > k_hi) throw std::invalid_argument("dyadic_profile: k_lo > k_hi");
  const double Q = homogeneous_dimension(n.group());
  const double p = e.p;
  DyadicProfile out;
  const Estimate S = sphere_measure(n, spec);
  out.C_young = std::pow(S.value * std::pow(6.0, Q - e.lambda) / (Q - e.lambda), p);

  const QuadratureSpec inner = serial(spec);
  for (int k = k_lo; k <= k_hi; ++k) {
    DyadicShell sh;
    sh.k = k;
    if (!u.is_zero()) {
      const double a = std::ldexp(1.0, k);
      sh.S = integrate(
                 [&](const Point& x) {
                   const double j2 =
                       std::abs(zoned_potential(n, e.lambda, u, x, inner)[1].value);
                   if (j2 == 0.0) return 0.0;
                   return std::pow(n(x), -e.beta * p) * std::pow(j2, p);
                 },
                 Region::annulus(n, a, 2.0 * a), spec)
                 .value;
      const Region wide = Region::annulus(n, 0.5 * a, 4.0 * a);
      const double piece =
          integrate([&](const Point& y) { return std::pow(std::abs(u(y)), p); },
                    wide, spec)
              .value;
      sh.weighted = integrate(
                        [&](const Point& y) {
                          const double v = std::abs(u(y));
                          return v == 0.0 ? 0.0
                                          : std::pow(v, p) * std::pow(n(y), e.alpha * p);
                        },
                        wide, spec)
                        .value;
      sh.B = std::pow(2.0, e.alpha * k * p) * piece;
      sh.ratio = sh.B > 0.0 ? sh.S / sh.B : 0.0;
    }
    out.C_fit = std::max(out.C_fit, sh.ratio);
    out.shell_sum += sh.S;
    out.shells.push_back(sh);
  }
  const Estimate wn = lp_norm(u, p, spec, e.alpha);
  out.weighted_norm = wn.divergent ? kInf : std::pow(wn.value, p);

  VerificationReport& rep = out.report;
  rep = VerificationReport("dyadic_profile");
  nlohmann::ordered_json in;
  in["norm"] = n.name();
  in["exponents"] = e.to_json();
  in["function"] = u.to_json();
  in["k_lo"] = k_lo;
  in["k_hi"] = k_hi;
  in["tolerance"] = tolerance;
  rep.set_inputs(in);
  rep.set_seed(spec.seed);
  double covered = 0.0;
  for (const DyadicShell& sh : out.shells) {
    const std::string tag = "[k=" + std::to_string(sh.k) + "]";
    rep.add_quantity("S" + tag, sh.S);
    rep.add_quantity("B" + tag, sh.B);
    rep.add_quantity("ratio" + tag, sh.ratio);
    covered += sh.weighted;
  }
  rep.add_quantity("C_fit", out.C_fit);
  rep.add_quantity("C_young", out.C_young);
  rep.add_quantity("shell_sum", out.shell_sum);
  rep.add_quantity("weighted_norm_p", out.weighted_norm);
  rep.add_quantity("windowed_weighted_sum", covered);
  rep.check_le("C_fit <= C_young", out.C_fit, out.C_young,
               "one constant covers every shell");
  // Each y lies in three windows 2^(k-1) <= |y| <= 2^(k+2), and
  // 2^(alpha k) <= 2^alpha |y|^alpha there when alpha >= 0.
  const double overlap = 3.0 * std::pow(2.0, std::max(e.alpha, 0.0) * p);
  rep.add_quantity("shell_sum / (C_fit || |x|^alpha u ||_p^p)",
                   out.shell_sum / (out.C_fit * out.weighted_norm));
  rep.check_le("shell_sum / (C_fit 3 2^(alpha p) || |x|^alpha u ||_p^p)",
               out.shell_sum / (out.C_fit * overlap * out.weighted_norm),
               1.0 + tolerance);
  return out;
}

// ---------------------------------------------------------------------------
// Interpolation exponents.

std::pair<double, double> marcinkiewicz_exponents(double gamma, double p0,
                                                  double q0, double p1,
                                                  double q1) {
  if (!(gamma > 0.0) || !(gamma < 1.0)) {
    throw std::invalid_argument("marcinkiewicz_exponents: 0 < gamma < 1");
  }
  auto pair_ok = [](double p, double q) {
    return p >= 1.0 && p <= q && std::isfinite(q);
  };
  if (!pair_ok(p0, q0) || !pair_ok(p1, q1)) {
    throw std::invalid_argument(
        "marcinkiewicz_exponents: need 1 <= p_k <= q_k < inf");
  }
  if (!(q0 < q1)) {
    throw std::invalid_argument("marcinkiewicz_exponents: need q0 < q1");
  }
  const double ip = (1.0 - gamma) / p0 + gamma / p1;
  const double iq = (1.0 - gamma) / q0 + gamma / q1;
  return {1.0 / ip, 1.0 / iq};
}

// ---------------------------------------------------------------------------
// Extremizer search.

nlohmann::ordered_json ExtremizeResult::to_json() const {
  nlohmann::ordered_json j;
  j["best_params"] = best_params;
  j["best_quotient"] = number(best_quotient);
  nlohmann::ordered_json rb = nlohmann::ordered_json::array();
  for (double v : restart_best) rb.push_back(number(v));
  j["restart_best"] = rb;
  j["spread"] = number(spread);
  nlohmann::ordered_json tr = nlohmann::ordered_json::array();
  for (const TracePoint& t : trace) {
    tr.push_back({{"restart", t.restart},
                  {"params", t.params},
                  {"quotient", number(t.quotient)},
                  {"ok", t.ok}});
  }
  j["trace"] = tr;
  return j;
}

ExtremizeResult extremize(const QuasiNormSpec& n, const ExponentSet& e,
                          const ParamFamily& family,
                          const OptimizerOptions& opts,
                          const QuadratureSpec& spec) {
  check_basic(n, e);
  const std::size_t d = family.lo.size();
  if (!family.make || family.hi.size() != d ||
      (!family.start.empty() && family.start.size() != d) ||
      (!family.log_scale.empty() && family.log_scale.size() != d)) {
    throw std::invalid_argument("extremize: malformed parameter family");
  }
  auto is_log = [&](std::size_t i) {
    return !family.log_scale.empty() && family.log_scale[i];
  };
  for (std::size_t i = 0; i < d; ++i) {
    if (!(family.lo[i] < family.hi[i]) || (is_log(i) && !(family.lo[i] > 0.0))) {
      throw std::invalid_argument("extremize: bad box for parameter " +
                                  std::to_string(i));
    }
  }
  if (opts.restarts == 0 || !(opts.simplex_size > 0.0)) {
    throw std::invalid_argument("extremize: restarts >= 1, simplex_size > 0");
  }

  auto to_params = [&](const std::vector<double>& z) {
    std::vector<double> x(d);
    for (std::size_t i = 0; i < d; ++i) {
      const double t = std::clamp(z[i], 0.0, 1.0);
      x[i] = is_log(i) ? family.lo[i] * std::pow(family.hi[i] / family.lo[i], t)
                       : family.lo[i] + t * (family.hi[i] - family.lo[i]);
    }
    return x;
  };
  auto to_unit = [&](const std::vector<double>& x) {
    std::vector<double> z(d);
    for (std::size_t i = 0; i < d; ++i) {
      z[i] = is_log(i) ? std::log(x[i] / family.lo[i]) /
                             std::log(family.hi[i] / family.lo[i])
                       : (x[i] - family.lo[i]) / (family.hi[i] - family.lo[i]);
      z[i] = std::clamp(z[i], 0.0, 1.0);
    }
    return z;
  };

  ExtremizeResult out;
  std::size_t restart = 0;
  // Objective is -quotient; rejected points score +inf.
  auto evaluate = [&](const std::vector<std::vector<double>>& zs, bool parallel) {
    const QuadratureSpec s = parallel ? serial(spec) : spec;
    std::vector<TracePoint> pts(zs.size());
    for_indices(
        zs.size(),
        [&](std::size_t i) {
          TracePoint& t = pts[i];
          t.restart = restart;
          t.params = to_params(zs[i]);
          try {
            const QuotientResult r = sw_quotient(n, e, family.make(t.params), s);
            t.ok = !r.skipped && !r.divergent && std::isfinite(r.value);
            t.quotient = t.ok ? r.value : kNaN;
          } catch (const std::exception&) {
            t.ok = false;
            t.quotient = kNaN;
          }
        },
        parallel ? spec.exec : Execution::kSerial);
    std::vector<double> f(zs.size());
    for (std::size_t i = 0; i < zs.size(); ++i) {
      f[i] = pts[i].ok ? -pts[i].quotient : kInf;
      out.trace.push_back(pts[i]);
    }
    return f;
  };
  auto one = [&](const std::vector<double>& z) { return evaluate({z}, false)[0]; };
  auto clamp01 = [](std::vector<double> z) {
    for (double& v : z) v = std::clamp(v, 0.0, 1.0);
    return z;
  };

  const CounterRng rng(opts.seed);
  out.best_quotient = -kInf;
  for (restart = 0; restart < opts.restarts; ++restart) {
    std::vector<double> z0(d, 0.5);
    if (restart == 0 && !family.start.empty()) z0 = to_unit(family.start);
    if (restart > 0) {
      for (std::size_t i = 0; i < d; ++i) z0[i] = rng.uniform(7, restart, i);
    }
    if (d == 0) {
      const double f = one(z0);
      out.restart_best.push_back(-f);
      if (-f > out.best_quotient) {
        out.best_quotient = -f;
        out.best_params.clear();
      }
      break;
    }
    std::vector<std::vector<double>> v(d + 1, z0);
    for (std::size_t i = 0; i < d; ++i) {
      v[i + 1][i] += v[i + 1][i] + opts.simplex_size <= 1.0 ? opts.simplex_size
                                                            : -opts.simplex_size;
    }
    std::vector<double> f = evaluate(v, true);
    for (std::size_t it = 0; it < opts.max_iter; ++it) {
      std::vector<std::size_t> order(d + 1);
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return f[a] < f[b]; });
      std::vector<std::vector<double>> sv(d + 1);
      std::vector<double> sf(d + 1);
      for (std::size_t i = 0; i <= d; ++i) {
        sv[i] = v[order[i]];
        sf[i] = f[order[i]];
      }
      v = sv;
      f = sf;
      if (std::isfinite(f[d]) &&
          std::abs(f[d] - f[0]) <= opts.f_tol * std::abs(f[0])) {
        break;
      }
      std::vector<double> c(d, 0.0);
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t k = 0; k < d; ++k) c[k] += v[i][k] / d;
      }
      auto along = [&](double t) {
        std::vector<double> z(d);
        for (std::size_t k = 0; k < d; ++k) z[k] = c[k] + t * (v[d][k] - c[k]);
        return clamp01(z);
      };
      const auto xr = along(-1.0);
      const double fr = one(xr);
      if (fr < f[0]) {
        const auto xe = along(-2.0);
        const double fe = one(xe);
        if (fe < fr) {
          v[d] = xe;
          f[d] = fe;
        } else {
          v[d] = xr;
          f[d] = fr;
        }
      } else if (fr < f[d - 1]) {
        v[d] = xr;
        f[d] = fr;
      } else {
        const bool outside = fr < f[d];
        const auto xc = along(outside ? -0.5 : 0.5);
        const double fc = one(xc);
        if (fc < (outside ? fr : f[d])) {
          v[d] = xc;
          f[d] = fc;
        } else {
          std::vector<std::vector<double>> shrunk;
          for (std::size_t i = 1; i <= d; ++i) {
            for (std::size_t k = 0; k < d; ++k) v[i][k] = v[0][k] + 0.5 * (v[i][k] - v[0][k]);
            shrunk.push_back(v[i]);
          }
          const std::vector<double> fs = evaluate(shrunk, true);
          for (std::size_t i = 1; i <= d; ++i) f[i] = fs[i - 1];
        }
      }
    }
    const std::size_t b = std::min_element(f.begin(), f.end()) - f.begin();
    out.restart_best.push_back(-f[b]);
    if (-f[b] > out.best_quotient) {
      out.best_quotient = -f[b];
      out.best_params = to_params(v[b]);
    }
  }
  double lo = kInf, hi = -kInf;
  for (double q : out.restart_best) {
    lo = std::min(lo, q);
    hi = std::max(hi, q);
  }
  out.spread = hi > 0.0 ? (hi - lo) / hi : kNaN;
  return out;
}

// ---------------------------------------------------------------------------
// Families and sweeps.

std::vector<TestFunction> standard_family(const QuasiNormSpec& n,
                                          const ExponentSet& e,
                                          std::uint64_t seed) {
  const GroupSpec& g = n.group();
  const double Q = homogeneous_dimension(g);
  const CounterRng rng(seed);
  std::vector<TestFunction> fam;
  for (std::size_t i = 0; i < 20; ++i) {
    std::vector<double> sigma(g.dim());
    for (std::size_t c = 0; c < g.dim(); ++c) {
      sigma[c] = std::pow(rng.log_uniform(1, i, c, 0.4, 2.5), g.weight(c));
    }
    const Point c = i % 4 == 0 ? identity(g) : random_point(g, rng, 2, i, 0.2, 3.0);
    fam.push_back(TestFunction::gaussian(n, sigma, 1.0, c));
  }
  for (std::size_t i = 0; i < 10; ++i) {
    const double R = rng.log_uniform(3, i, 0, 0.3, 3.0);
    const Point c = i % 2 == 0 ? identity(g) : random_point(g, rng, 4, i, 0.2, 2.0);
    fam.push_back(TestFunction::ball(n, R, 1.0, c));
  }
  for (std::size_t i = 0; i < 10; ++i) {
    const double s = rng.uniform(5, i, 0, Q + 0.5, Q + 3.0);
    const double delta = rng.log_uniform(5, i, 1, 0.5, 2.0);
    const Point c = i % 3 == 0 ? random_point(g, rng, 6, i, 0.2, 2.0) : identity(g);
    fam.push_back(TestFunction::power_decay(n, s, delta, 1.0, c));
  }
  for (std::size_t i = 0; i < 10; ++i) {
    const double gamma = rng.uniform(7, i, 0, 0.5 * Q + 0.25, 0.5 * Q + 2.0);
    const Point c = i % 3 == 1 ? random_point(g, rng, 8, i, 0.2, 2.0) : identity(g);
    fam.push_back(TestFunction::conformal(n, gamma, 1.0, c));
  }
  for (const TestFunction& u : fam) {
    if (!u.in_weighted_lp(e.p, e.alpha)) {
      throw std::logic_error("standard_family: " + u.name() +
                             " is not in the weighted L^p space");
    }
  }
  return fam;
}

void write_quotient_csv(std::ostream& os, const std::vector<QuotientRow>& rows) {
  os << "id,function,t,quotient,error\n";
  const auto prec = os.precision(17);
  for (const QuotientRow& r : rows) {
    os << r.id << ",\"" << r.function << "\"," << r.t << ',' << r.quotient
       << ',' << r.error << '\n';
  }
  os.precision(prec);
}

Sweep boundedness_sweep(const QuasiNormSpec& n, const ExponentSet& e,
                        const std::vector<TestFunction>& family,
                        const std::vector<double>& t_list,
                        const QuadratureSpec& spec, double tolerance) {
  check_basic(n, e);
  if (t_list.empty()) throw std::invalid_argument("boundedness_sweep: empty t_list");
  Sweep out;
  const std::size_t nt = t_list.size();
  out.rows.resize(family.size() * nt);
  const QuadratureSpec inner = serial(spec);
  for_indices(
      out.rows.size(),
      [&](std::size_t k) {
        QuotientRow& row = out.rows[k];
        row.id = k / nt;
        row.t = t_list[k % nt];
        row.function = family[row.id].name();
        try {
          const QuotientResult r =
              sw_quotient(n, e, family[row.id].dilated(row.t), inner);
          row.quotient = r.skipped ? kNaN : r.value;
          row.error = r.error;
        } catch (const std::exception&) {
          row.quotient = row.error = kNaN;
        }
      },
      spec.exec);

  VerificationReport& rep = out.report;
  rep = VerificationReport("boundedness_sweep");
  nlohmann::ordered_json in;
  in["norm"] = n.name();
  in["exponents"] = e.to_json();
  in["family_size"] = family.size();
  in["t"] = t_list;
  in["tolerance"] = tolerance;
  rep.set_inputs(in);
  rep.set_seed(spec.seed);
  rep.set_samples(out.rows.size());
  bool finite = true;
  for (std::size_t i = 0; i < family.size(); ++i) {
    double lo = kInf, hi = 0.0;
    for (std::size_t j = 0; j < nt; ++j) {
      const double q = out.rows[i * nt + j].quotient;
      if (!std::isfinite(q)) {
        finite = false;
        hi = kInf;
        continue;
      }
      lo = std::min(lo, q);
      hi = std::max(hi, q);
    }
    const double var = (hi - lo) / lo;
    rep.add_quantity("variation[" + std::to_string(i) + "]", var);
    out.max_variation = std::max(out.max_variation, var);
    out.max_quotient = std::max(out.max_quotient, hi);
  }
  rep.add_quantity("max_quotient", out.max_quotient);
  rep.add_quantity("max_variation", out.max_variation);
  rep.check_true("max quotient finite", finite && std::isfinite(out.max_quotient));
  rep.check_le("max variation along t", out.max_variation, tolerance);
  return out;
}

// ---------------------------------------------------------------------------
// Weak type.

WeakTypeResult weak_type_check(const QuasiNormSpec& n, const ExponentSet& e,
                               const TestFunction& u,
                               const std::vector<double>& zetas,
                               const QuadratureSpec& spec,
                               const WeakTypeOptions& opts) {
  check_basic(n, e);
  const double Q = homogeneous_dimension(n.group());
  if (!(e.lambda * e.p_prime() > Q * (1.0 + 1e-12))) {
    throw std::invalid_argument("weak_type_check: needs lambda p' > Q");
  }
  if (zetas.empty()) throw std::invalid_argument("weak_type_check: no levels");
  for (double z : zetas) {
    if (!(z > 0.0)) throw std::invalid_argument("weak_type_check: zeta > 0");
  }
  if (u.is_zero()) throw std::invalid_argument("weak_type_check: u = 0");
  WeakTypeResult out;
  out.zetas = zetas;
  const double norm = lp_norm(u, e.p, spec).value;
  const double mass = lp_norm(u, 1.0, spec).value;

  // The superlevel set of the smallest level reaches out to about
  // (mass / zeta)^(1/lambda).
  const double zmin = *std::min_element(zetas.begin(), zetas.end());
  QuadratureSpec s = spec;
  s.L = std::max(spec.L, 2.0 * std::pow(mass / zmin, 1.0 / e.lambda) +
                             n(u.center()) + u.window_radius());
  auto fit = [&](const std::vector<double>& zs, const QuadratureSpec& sp,
                 std::size_t pts, std::vector<double>* ratios) {
    WeakOptions wo;
    wo.points_per_shell = pts;
    const WeakDistribution wd = weak_distribution(n, e.lambda, u, zs, sp, wo);
    double c = 0.0;
    for (const LevelMeasure& lm : wd.levels) {
      const double r = std::pow(lm.zeta, e.q) * lm.measure.value / std::pow(norm, e.q);
      if (ratios) ratios->push_back(r);
      c = std::max(c, r);
    }
    return c;
  };
  out.C_fit = fit(zetas, s, opts.points_per_shell, &out.ratios);
  std::vector<double> fine;
  std::vector<double> sorted = zetas;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    fine.push_back(sorted[i]);
    if (i + 1 < sorted.size()) fine.push_back(std::sqrt(sorted[i] * sorted[i + 1]));
  }
  QuadratureSpec s2 = s;
  s2.seed = spec.seed + 1;
  out.C_refit = fit(fine, s2, 2 * opts.points_per_shell, nullptr);

  // mu(zeta) from ||K2||_p' ||u||_p = zeta / 2, solved by bisection in log mu.
  const SplitNorm k1 = k1_l1_norm(n, {1.0, e.lambda}, spec);
  const SplitNorm k2 = k2_lpprime_norm(n, {1.0, e.lambda}, e.p, spec);
  const double qi = k2.induced_q;
  auto k2_norm = [&](double mu) { return k2.closed_form * std::pow(mu, -Q / qi); };
  std::vector<double> lz, lmu;
  for (double z : sorted) {
    double a = -60.0, b = 60.0;
    for (int it = 0; it < 200; ++it) {
      const double m = 0.5 * (a + b);
      (k2_norm(std::exp(m)) * norm > 0.5 * z ? a : b) = m;
    }
    const double mu = std::exp(0.5 * (a + b));
    lz.push_back(std::log(z));
    lmu.push_back(std::log(mu));
    const double k1n = k1.closed_form * std::pow(mu, Q - e.lambda);
    const double bound = std::pow(2.0 * k1n * norm / z, e.p);
    out.C_proof = std::max(out.C_proof, std::pow(z, e.q) * bound / std::pow(norm, e.q));
  }
  out.theta = sorted.size() > 1 ? -Q * ls_slope(lz, lmu) : kNaN;

  VerificationReport& rep = out.report;
  rep = VerificationReport("weak_type");
  nlohmann::ordered_json in;
  in["norm"] = n.name();
  in["exponents"] = e.to_json();
  in["function"] = u.to_json();
  in["zetas"] = zetas;
  in["domain_radius"] = s.L;
  in["points_per_shell"] = opts.points_per_shell;
  in["tolerance"] = opts.tolerance;
  rep.set_inputs(in);
  rep.set_seed(spec.seed);
  rep.add_quantity("norm_p", norm);
  for (std::size_t i = 0; i < zetas.size(); ++i) {
    rep.add_quantity("ratio[zeta=" + fmt(zetas[i]) + "]", out.ratios[i]);
  }
  rep.add_quantity("C_fit", out.C_fit);
  rep.add_quantity("C_refit", out.C_refit);
  rep.add_quantity("C_proof", out.C_proof);
  rep.add_quantity("theta", out.theta);
  rep.add_quantity("induced_q", qi);
  rep.check_true("C_fit positive and finite", out.C_fit > 0.0 && std::isfinite(out.C_fit));
  rep.check_le("|C_refit - C_fit| / C_fit", std::abs(out.C_refit - out.C_fit) / out.C_fit,
               opts.tolerance);
  rep.check_le("C_fit <= C_proof", out.C_fit, out.C_proof);
  if (sorted.size() > 1) {
    rep.check_le("|theta - q|", std::abs(out.theta - e.q), 1e-6);
  }
  return out;
}

}  // namespace rieszlab
