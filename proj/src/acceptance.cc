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


#include "rieszlab/acceptance.h"

#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "rieszlab/group.h"
#include "rieszlab/hardy.h"
#include "rieszlab/harness.h"
#include "rieszlab/quad.h"
#include "rieszlab/quasinorm.h"
#include "rieszlab/riesz.h"
#include "rieszlab/test_function.h"

namespace rieszlab {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v, int digits = 4) {
  std::ostringstream os;
  os.precision(digits);
  os << v;
  return os.str();
}

QuadratureSpec polar(std::size_t angular, std::uint64_t seed) {
  QuadratureSpec s;
  s.method = Method::kPolar;
  s.angular = angular;
  s.seed = seed;
  return s;
}

QuasiNormSpec r2() { return QuasiNormSpec::euclidean(GroupSpec::euclidean(2)); }
QuasiNormSpec h1() { return QuasiNormSpec::koranyi(GroupSpec::heisenberg(1)); }

// Q = 2, lambda = 1, p = 4/3, q = 4.
ExponentSet conformal_r2() { return {2, 4.0 / 3.0, 4, 1, 0, 0}; }

struct Ctx {
  const AcceptanceOptions& opts;
  VerificationReport& rep;
  std::ostringstream summary;

  double tol(double t) const { return t * opts.tolerance_scale; }
};

// 1. Quasi-norm axioms on every applicable (group, norm) pair.
void axioms(Ctx& c) {
  const std::vector<GroupSpec> groups = {GroupSpec::euclidean(2),
                                         GroupSpec::abelian({1, 3}),
                                         GroupSpec::heisenberg(1)};
  double worst = 0.0;
  std::size_t pairs = 0;
  for (const GroupSpec& g : groups) {
    std::vector<QuasiNormSpec> norms;
    if (g.all_weights_one()) norms.push_back(QuasiNormSpec::euclidean(g));
    norms.push_back(QuasiNormSpec::max_weighted(g));
    norms.push_back(QuasiNormSpec::sum_weighted(g));
    if (g.law() == GroupLaw::kHeisenberg) norms.push_back(QuasiNormSpec::koranyi(g));
    for (const QuasiNormSpec& n : norms) {
      const VerificationReport r =
          check_axioms(n, 10000, c.opts.seed, c.tol(1e-12));
      worst = std::max({worst, r.quantity("symmetry_max_rel_violation"),
                        r.quantity("homogeneity_max_rel_violation")});
      c.rep.merge(r, n.name() + "/");
      ++pairs;
    }
  }
  c.summary << pairs << " norms, worst relative violation " << fmt(worst);
}

// 2. Sphere measures against classical surface areas.
void sphere(Ctx& c) {
  struct Case {
    QuasiNormSpec n;
    double expected;
    double tol;
  };
  const std::vector<Case> cases = {
      {QuasiNormSpec::euclidean(GroupSpec::euclidean(2)), 2 * kPi, 0.005},
      {QuasiNormSpec::euclidean(GroupSpec::euclidean(3)), 4 * kPi, 0.01},
      {QuasiNormSpec::euclidean(GroupSpec::euclidean(1)), 2.0, 0.001},
  };
  QuadratureSpec s;
  s.method = Method::kQuasiMonteCarlo;
  s.seed = c.opts.seed;
  for (const Case& k : cases) {
    const Estimate e = sphere_measure(k.n, s);
    const std::string tag = "R^" + std::to_string(k.n.group().dim());
    c.rep.add_quantity("|S| " + tag, e.value, e.error);
    const double rel = std::abs(e.value - k.expected) / k.expected;
    c.rep.check_le("relative error " + tag, rel, c.tol(k.tol));
    c.summary << tag << " " << fmt(e.value, 6) << " ";
  }
}

// 3. Radial closed forms and ||K1||_1.
void radial(Ctx& c) {
  struct Config {
    double s, a, b;
  };
  const std::vector<Config> configs = {
      {1.0, 0.0, 1.0}, {0.5, 0.1, 2.0}, {2.0, 0.5, 3.0}, {-1.0, 1.0, kInf},
      {-0.5, 0.01, 50.0}};
  const std::vector<QuasiNormSpec> norms = {
      r2(), QuasiNormSpec::sum_weighted(GroupSpec::abelian({1, 3})), h1()};
  QuadratureSpec s;
  s.method = Method::kQuasiMonteCarlo;
  s.seed = c.opts.seed;
  double worst = 0.0;
  for (const QuasiNormSpec& n : norms) {
    for (const Config& k : configs) {
      const PowerIntegral r = annulus_power_integral(n, k.s, k.a, k.b, s);
      const std::string tag = n.name() + " s=" + fmt(k.s) + " (" + fmt(k.a) +
                              ", " + fmt(k.b) + ")";
      c.rep.add_quantity(tag, r.numeric.value, r.numeric.error);
      const double rel =
          r.divergent ? kInf
                      : std::abs(r.numeric.value - r.closed_form) / r.closed_form;
      worst = std::max(worst, rel);
      c.rep.check_le("relative error " + tag, rel, c.tol(0.01));
    }
  }
  const SplitNorm k1 = k1_l1_norm(r2(), {1.0, 1.0}, s);
  c.rep.add_quantity("||K1||_1", k1.numeric.value, k1.numeric.error);
  const double rel = std::abs(k1.numeric.value - 2 * kPi) / (2 * kPi);
  c.rep.check_le("||K1||_1 vs 2 pi", rel, c.tol(0.01));
  c.summary << "worst annulus error " << fmt(worst) << ", ||K1||_1 = "
            << fmt(k1.numeric.value, 6);
}

double max_profile_slope(const HardyVerdict& v) {
  double m = 0.0;
  for (std::size_t i = 1; i < v.profile.size(); ++i) {
    const ProfilePoint& a = v.profile[i - 1];
    const ProfilePoint& b = v.profile[i];
    m = std::max(m, std::abs(std::log(b.A / a.A) / std::log(b.R / a.R)));
  }
  return m;
}

// 4. Hardy factors for both proof steps at two exponent sets, plus one
// inadmissible pair.
void hardy(Ctx& c) {
  struct Pair {
    std::string name;
    QuasiNormSpec n;
    HardySide side;
    double w, u;
  };
  // Step 1: W = |x|^-(beta+lambda)q, U = |x|^(alpha p). Step 2:
  // W = |x|^-beta q, U = |x|^(alpha+lambda)p.
  const QuasiNormSpec r4 = QuasiNormSpec::euclidean(GroupSpec::euclidean(4));
  const std::vector<Pair> pairs = {
      {"R^4 step 1", r4, HardySide::kInner, -12.0, 0.0},
      {"R^4 step 2", r4, HardySide::kOuter, 0.0, 6.0},
      {"H1 step 1", h1(), HardySide::kInner, -11.0, 0.5},
      {"H1 step 2", h1(), HardySide::kOuter, -1.0, 5.5},
  };
  HardyOptions o;
  o.slope_tol = c.tol(1e-3);
  o.slack = c.tol(0.05);
  const QuadratureSpec s = polar(16, c.opts.seed);
  double worst_slope = 0.0, worst_ratio = 0.0;
  for (const Pair& pr : pairs) {
    const auto fs = hardy_sample_family(pr.n, 20, c.opts.seed);
    const HardyVerdict v = hardy_verify(pr.n, pr.side, WeightSpec::power(pr.w),
                                        WeightSpec::power(pr.u), 2, 4, fs, s, o);
    const double slope = max_profile_slope(v);
    worst_slope = std::max(worst_slope, slope);
    const double ratio = v.sandwich.C_empirical / v.sandwich.upper;
    worst_ratio = std::max(worst_ratio, ratio);
    c.rep.add_quantity(pr.name + " A", v.A_value);
    c.rep.add_quantity(pr.name + " C_empirical", v.sandwich.C_empirical);
    c.rep.check_true(pr.name + " finite", v.finite, v.reason);
    c.rep.check_le(pr.name + " |log-log slope of A|", slope, o.slope_tol);
    c.rep.check_le(pr.name + " C_empirical / ((p')^(1/p') p^(1/q) A)", ratio,
                   1.0 + o.slack);
  }
  // W = |x|^-2, U = 1 on Q = 4: the outer integral of W diverges.
  const auto fs = hardy_sample_family(r4, 20, c.opts.seed);
  const HardyVerdict bad =
      hardy_verify(r4, HardySide::kInner, WeightSpec::power(-2),
                   WeightSpec::power(0), 2, 4, fs, s, o);
  bool monotone = bad.growth.size() >= 2;
  for (std::size_t i = 1; i < bad.growth.size(); ++i) {
    monotone = monotone && bad.growth[i].ratio > bad.growth[i - 1].ratio;
    c.rep.add_quantity("inadmissible ratio[t=" + fmt(bad.growth[i].t) + "]",
                       bad.growth[i].ratio);
  }
  c.rep.check_true("inadmissible pair finite=false", !bad.finite, bad.reason);
  c.rep.check_true("inadmissible pair ratio grows along dilates", monotone);
  c.summary << "worst slope " << fmt(worst_slope) << ", worst C/bound "
            << fmt(worst_ratio) << ", inadmissible finite="
            << (bad.finite ? "true" : "false");
}

// 5. Dilation invariance and broken-balance drift.
void dilation(Ctx& c) {
  const QuasiNormSpec n = r2();
  const TestFunction u = TestFunction::gaussian(n, {1.0});
  const QuadratureSpec s = polar(32, c.opts.seed);
  DilationOptions o;
  o.spread_tolerance = c.tol(0.02);
  o.drift_tolerance = c.tol(0.02);
  const VerificationReport inv =
      dilation_invariance_check(n, conformal_r2(), u, {0.25, 1.0, 4.0}, s, o);
  o.lambda_shift = 0.2;
  const VerificationReport drift =
      dilation_invariance_check(n, conformal_r2(), u, {0.25, 1.0, 4.0}, s, o);
  c.rep.merge(inv, "balanced/");
  c.rep.merge(drift, "shifted/");
  c.summary << "spread " << fmt(inv.quantity("spread")) << ", drift "
            << fmt(drift.quantity("drift_exponent"), 6) << " (predicted "
            << fmt(drift.quantity("predicted_drift")) << ")";
}

// 6. Stein-Weiss boundedness on the Heisenberg group.
void stein_weiss(Ctx& c) {
  const QuasiNormSpec n = h1();
  const ExponentSet e{4, 2, 4, 2.5, 0.25, 0.25};
  const ExponentVerdict v = validate_exponents(4, 2, 2.5, 0.25, 0.25);
  c.rep.check_true("exponents admissible", v.admissible);
  const Sweep sw = boundedness_sweep(n, e, standard_family(n, e, c.opts.seed),
                                     {1e-2, 1e-1, 1.0, 1e1, 1e2},
                                     polar(8, c.opts.seed), c.tol(0.05));
  c.rep.merge(sw.report, "");
  c.summary << sw.rows.size() / 5 << " functions, max quotient "
            << fmt(sw.max_quotient) << ", max variation "
            << fmt(sw.max_variation);
}

// 7. Zone decomposition, pointwise zone bounds and the dyadic p = q case.
void zones(Ctx& c) {
  const QuasiNormSpec n = r2();
  DecompositionOptions o;
  o.samples = 10000;
  o.triangle_samples = 10000;
  o.seed = c.opts.seed;
  o.tolerance = c.tol(0.02);
  const Decomposition d =
      decomposition_profile(n, conformal_r2(), TestFunction::gaussian(n, {1.0}),
                            polar(32, c.opts.seed), o);
  c.rep.merge(d.report, "zones/");
  const ExponentSet e{2, 2, 2, 1.5, 0.25, 0.25};
  const DyadicProfile dy =
      dyadic_profile(n, e, TestFunction::gaussian(n, {1.0}), -4, 4,
                     polar(32, c.opts.seed), c.tol(0.10));
  c.rep.merge(dy.report, "dyadic/");
  const double sum = d.zones[0].value + d.zones[1].value + d.zones[2].value;
  std::size_t violations = 0;
  for (const ZoneBound& b : d.bounds) violations += b.violations;
  c.summary << "I1+I2+I3 / direct " << fmt(sum / d.direct.value)
            << ", zone bound violations " << violations << ", dyadic C_fit "
            << fmt(dy.C_fit);
}

// 8. Weak type for the normalized ball.
void weak(Ctx& c) {
  const QuasiNormSpec n = r2();
  // ||u||_4/3 = 1.
  const TestFunction u = TestFunction::ball(n, 1.0, std::pow(kPi, -0.75));
  std::vector<double> z;
  for (int i = 0; i <= 40; ++i) z.push_back(0.1 * std::pow(30.0, i / 40.0));
  WeakTypeOptions o;
  o.tolerance = c.tol(0.10);
  const WeakTypeResult w =
      weak_type_check(n, conformal_r2(), u, z, polar(32, c.opts.seed), o);
  c.rep.merge(w.report, "");
  c.summary << "C_fit " << fmt(w.C_fit) << ", C_refit " << fmt(w.C_refit)
            << ", theta " << fmt(w.theta);
}

// 9. Simplex search over conformal profiles.
void extremizer(Ctx& c) {
  const QuasiNormSpec n = r2();
  const QuadratureSpec s = polar(8, c.opts.seed);
  // Frozen oracle for (1 + |x|^2)^-3/2.
  const double oracle = 2.0 * std::sqrt(kPi);
  const QuotientResult direct =
      hls_quotient(n, conformal_r2(), TestFunction::conformal(n, 1.5), s);
  c.rep.add_quantity("oracle quotient", oracle);
  c.rep.add_quantity("profile quotient at this resolution", direct.value,
                     direct.error);
  ParamFamily f;
  f.make = [&](std::span<const double> x) {
    return TestFunction::conformal(n, x[0]).dilated(x[1]);
  };
  f.lo = {0.9, 0.25};
  f.hi = {4.0, 4.0};
  f.start = {3.0, 1.0};
  f.log_scale = {false, true};
  OptimizerOptions o;
  o.restarts = 3;
  o.max_iter = 30;
  o.simplex_size = 0.2;
  o.seed = c.opts.seed;
  const ExtremizeResult r = extremize(n, conformal_r2(), f, o, s);
  c.rep.add_quantity("best quotient", r.best_quotient);
  c.rep.add_quantity("best gamma", r.best_params.at(0));
  c.rep.add_quantity("restart spread", r.spread);
  c.rep.check_ge("best / oracle", r.best_quotient / oracle,
                 1.0 - c.tol(0.02));
  c.rep.check_lt("multi-start spread", r.spread, c.tol(0.01));
  c.summary << "best " << fmt(r.best_quotient, 6) << " at gamma "
            << fmt(r.best_params.at(0)) << " vs oracle " << fmt(oracle, 6)
            << ", spread " << fmt(r.spread);
}

struct Entry {
  const char* title;
  void (*run)(Ctx&);
};

const Entry kEntries[kCriteria] = {
    {"quasi-norm axioms", axioms},
    {"sphere measure", sphere},
    {"radial closed forms", radial},
    {"Hardy machinery", hardy},
    {"dilation invariance", dilation},
    {"Stein-Weiss boundedness", stein_weiss},
    {"proof-zone checks", zones},
    {"weak type", weak},
    {"extremizer sanity", extremizer},
};

}  // namespace

std::string CriterionResult::line() const {
  std::ostringstream os;
  os << (passed ? "[PASS] " : "[FAIL] ") << id << " " << title << ": "
     << summary << " (" << fmt(seconds, 3) << " s)";
  return os.str();
}

nlohmann::ordered_json CriterionResult::to_json() const {
  nlohmann::ordered_json j;
  j["id"] = id;
  j["title"] = title;
  j["passed"] = passed;
  j["summary"] = summary;
  j["seconds"] = seconds;
  j["report"] = report.to_json();
  return j;
}

CriterionResult run_criterion(int id, const AcceptanceOptions& opts) {
  if (id < 1 || id > kCriteria) {
    throw std::invalid_argument("acceptance criterion must be in 1.." +
                                std::to_string(kCriteria));
  }
  if (!(opts.tolerance_scale > 0.0)) {
    throw std::invalid_argument("tolerance scale must be positive");
  }
  const Entry& entry = kEntries[id - 1];
  CriterionResult out;
  out.id = id;
  out.title = entry.title;
  out.report = VerificationReport("criterion " + std::to_string(id));
  out.report.set_seed(opts.seed);
  out.report.set_inputs({{"seed", opts.seed},
                         {"tolerance_scale", opts.tolerance_scale}});
  const auto t0 = std::chrono::steady_clock::now();
  Ctx c{opts, out.report, {}};
  try {
    entry.run(c);
    out.summary = c.summary.str();
  } catch (const std::exception& ex) {
    out.report.check_true("completed", false, ex.what());
    out.summary = std::string("error: ") + ex.what();
  }
  out.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t0).count();
  out.report.set_runtime(out.seconds);
  out.passed = out.report.all_passed();
  return out;
}

std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids,
                                            const AcceptanceOptions& opts) {
  std::vector<CriterionResult> out;
  for (int id : ids) out.push_back(run_criterion(id, opts));
  return out;
}

}  // namespace rieszlab
