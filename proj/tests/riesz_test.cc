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

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "rieszlab/group.h"
#include "rieszlab/kernels.h"
#include "rieszlab/quad.h"
#include "rieszlab/quasinorm.h"
#include "rieszlab/test_function.h"

namespace {

using ::rieszlab::Estimate;
using ::rieszlab::Execution;
using ::rieszlab::GroupSpec;
using ::rieszlab::KernelSplit;
using ::rieszlab::Method;
using ::rieszlab::Point;
using ::rieszlab::QuadratureSpec;
using ::rieszlab::QuasiNormSpec;
using ::rieszlab::TestFunction;

constexpr double kPi = std::numbers::pi;

QuasiNormSpec R2() { return QuasiNormSpec::euclidean(GroupSpec::euclidean(2)); }
QuasiNormSpec H1() { return QuasiNormSpec::koranyi(GroupSpec::heisenberg(1)); }

QuadratureSpec Polar() {
  QuadratureSpec s;
  s.method = Method::kPolar;
  return s;
}

QuadratureSpec Qmc(std::size_t samples = 1 << 17) {
  QuadratureSpec s;
  s.samples = samples;
  return s;
}

TEST(RieszApplyTest, Examples) {
  const auto n = R2();
  for (const QuadratureSpec& s : {Polar(), Qmc()}) {
    const Estimate b =
        rieszlab::riesz_apply(n, 1.0, TestFunction::ball(n, 1.0), Point{0, 0}, s);
    EXPECT_NEAR(b.value, 2 * kPi, 0.01 * 2 * kPi) << rieszlab::to_string(s.method);
    const Estimate g = rieszlab::riesz_apply(
        n, 1.0, TestFunction::gaussian(n, {1.0}), Point{0, 0}, s);
    EXPECT_NEAR(g.value, std::pow(kPi, 1.5), 0.01 * std::pow(kPi, 1.5));
    EXPECT_EQ(rieszlab::riesz_apply(n, 1.0, TestFunction::zero(n), Point{1, 2}, s)
                  .value,
              0.0);
  }
}

TEST(RieszApplyTest, PolarIsAccurate) {
  const auto n = R2();
  const auto s = Polar();
  EXPECT_NEAR(rieszlab::riesz_apply(n, 1.0, TestFunction::ball(n, 1.0),
                                    Point{0, 0}, s).value,
              2 * kPi, 1e-9);
  EXPECT_NEAR(rieszlab::riesz_apply(n, 1.0, TestFunction::gaussian(n, {1.0}),
                                    Point{0, 0}, s).value,
              std::pow(kPi, 1.5), 1e-4);
  // (1 + |y|^2)^(-3/2) in R^2 with lambda = 1.
  const auto c = TestFunction::conformal(n, 1.5);
  EXPECT_NEAR(rieszlab::riesz_apply(n, 1.0, c, Point{0, 0}, s).value, 2 * kPi,
              1e-3);
  EXPECT_NEAR(rieszlab::riesz_apply(n, 1.0, c, Point{1, 0}, s).value,
              4.442882938159386, 2e-3);
  // Disk potential outside the disk, by 2-D adaptive quadrature.
  const auto b = TestFunction::ball(n, 1.0);
  EXPECT_NEAR(rieszlab::riesz_apply(n, 1.0, b, Point{2, 0}, s).value,
              1.6251955458398408, 1e-5);
  EXPECT_NEAR(rieszlab::riesz_apply(n, 1.0, b, Point{0, 10}, s).value,
              0.3145534447794359, 1e-5);
}

TEST(RieszApplyTest, RejectsBadOrder) {
  const auto n = R2();
  const auto u = TestFunction::ball(n, 1.0);
  EXPECT_THROW(rieszlab::riesz_apply(n, 0.0, u, Point{0, 0}, Polar()),
               std::invalid_argument);
  EXPECT_THROW(rieszlab::riesz_apply(n, 2.0, u, Point{0, 0}, Polar()),
               std::invalid_argument);
  EXPECT_THROW(rieszlab::riesz_apply(n, 1.0, u, Point{0, 0, 0}, Polar()),
               std::invalid_argument);
}

struct Case {
  const char* name;
  QuasiNormSpec norm;
  double lambda;
  TestFunction u;
  Point x;
};

std::vector<Case> Cases() {
  const auto r2 = R2();
  const auto h1 = H1();
  const auto a13 = QuasiNormSpec::sum_weighted(GroupSpec::abelian({1, 3}));
  return {
      {"R2ball", r2, 1.0, TestFunction::ball(r2, 1.0), Point{0.4, 0.3}},
      {"R2gauss", r2, 1.0, TestFunction::gaussian(r2, {1.0, 2.0}, 1.0, Point{1, 0}),
       Point{-0.5, 0.5}},
      {"R2conf", r2, 1.5, TestFunction::conformal(r2, 1.5), Point{2, 1}},
      {"H1gauss", h1, 2.5,
       TestFunction::gaussian(h1, {1.0}, 1.0, Point{0.5, -0.2, 0.3}),
       Point{1, 1, 1}},
      {"H1ball", h1, 2.0, TestFunction::ball(h1, 1.0), Point{0.3, 0.2, 0.1}},
      {"A13power", a13, 1.0, TestFunction::power_decay(a13, 6.0), Point{0.5, 0.5}},
  };
}

// Polar and box quadrature are independent code paths.
TEST(RieszApplyTest, PolarAgreesWithQmc) {
  for (const auto& c : Cases()) {
    const Estimate p = rieszlab::riesz_apply(c.norm, c.lambda, c.u, c.x, Polar());
    const Estimate q =
        rieszlab::riesz_apply(c.norm, c.lambda, c.u, c.x, Qmc(1 << 18));
    EXPECT_NEAR(p.value, q.value, 4 * (p.error + q.error) + 0.01 * q.value)
        << c.name;
  }
}

// I(u o D_t)(x) = t^(lambda - Q) (I u)(D_t x).
TEST(RieszApplyTest, ScalingLaw) {
  for (const auto& c : Cases()) {
    const auto& g = c.norm.group();
    const double Q = rieszlab::homogeneous_dimension(g);
    for (double t : {0.25, 4.0}) {
      const double lhs =
          rieszlab::riesz_apply(c.norm, c.lambda, c.u.dilated(t), c.x, Polar()).value;
      const double rhs =
          std::pow(t, c.lambda - Q) *
          rieszlab::riesz_apply(c.norm, c.lambda, c.u, rieszlab::dilate(g, t, c.x),
                                Polar())
              .value;
      EXPECT_NEAR(lhs, rhs, 0.02 * std::abs(rhs)) << c.name << " t=" << t;
    }
  }
}

TEST(RieszApplyTest, HalvingEpsStaysInsideErrorBar) {
  for (const auto& c : Cases()) {
    if (c.u.has_jump()) continue;  // the ball path has no excised ball
    QuadratureSpec s = Polar();
    s.eps = 0.02 * c.u.scale();
    const Estimate a = rieszlab::riesz_apply(c.norm, c.lambda, c.u, c.x, s);
    s.eps /= 2;
    const Estimate b = rieszlab::riesz_apply(c.norm, c.lambda, c.u, c.x, s);
    EXPECT_LT(std::abs(a.value - b.value), std::max(a.error, b.error)) << c.name;
  }
  const auto n = R2();
  const auto u = TestFunction::gaussian(n, {1.0});
  QuadratureSpec s = Qmc(1 << 18);
  s.eps = 0.02;
  const Estimate a = rieszlab::riesz_apply(n, 1.0, u, Point{0.2, 0.1}, s);
  s.eps = 0.01;
  const Estimate b = rieszlab::riesz_apply(n, 1.0, u, Point{0.2, 0.1}, s);
  EXPECT_LT(std::abs(a.value - b.value), 4 * std::max(a.error, b.error));
}

TEST(RieszApplyTest, LinearInU) {
  const auto n = H1();
  const auto u = TestFunction::conformal(n, 2.0);
  const Point x{0.5, 0.5, -0.5};
  const double v = rieszlab::riesz_apply(n, 2.0, u, x, Polar()).value;
  EXPECT_NEAR(rieszlab::riesz_apply(n, 2.0, u.scaled(-2.5), x, Polar()).value,
              -2.5 * v, 1e-12 * std::abs(v));
}

TEST(RieszApplyTest, LeftTranslationCovariance) {
  // I(u(c^-1 .))(c x) = I u(x).
  const auto n = H1();
  const auto& g = n.group();
  const Point c{1.0, -0.5, 2.0};
  const Point x{0.2, 0.4, -0.3};
  const auto u = TestFunction::gaussian(n, {1.0, 0.5, 2.0});
  const auto uc = TestFunction::gaussian(n, {1.0, 0.5, 2.0}, 1.0, c);
  const double a = rieszlab::riesz_apply(n, 2.0, u, x, Polar()).value;
  const double b =
      rieszlab::riesz_apply(n, 2.0, uc, rieszlab::multiply(g, c, x), Polar()).value;
  EXPECT_NEAR(a, b, 1e-9 * a);
}

TEST(RieszApplyTest, ManyIsScheduleIndependent) {
  const auto n = H1();
  const auto u = TestFunction::gaussian(n, {1.0}, 1.0, Point{0.5, 0, 0});
  std::vector<Point> xs;
  for (int i = 0; i < 12; ++i) xs.push_back(Point{0.3 * i, -0.1 * i, 0.05 * i});
  QuadratureSpec s = Polar();
  s.angular = 16;
  s.exec = Execution::kSerial;
  const auto serial = rieszlab::riesz_apply_many(n, 2.0, u, xs, s);
  s.exec = Execution::kParallel;
  for (int threads : {1, 3}) {
    rieszlab::set_thread_count(threads);
    const auto par = rieszlab::riesz_apply_many(n, 2.0, u, xs, s);
    ASSERT_EQ(par.size(), xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      EXPECT_EQ(serial[i].value, par[i].value);
      EXPECT_EQ(serial[i].value,
                rieszlab::riesz_apply(n, 2.0, u, xs[i], s).value);
    }
  }
  rieszlab::set_thread_count(1);
}

TEST(RieszApplyTest, WeightedInputMatchesQmc) {
  const auto n = R2();
  const auto u = TestFunction::gaussian(n, {1.0}, 1.0, Point{0.5, 0});
  const Point x{-0.3, 0.4};
  const Estimate p = rieszlab::riesz_apply(n, 1.0, u, x, Polar(), 0.5);
  const Estimate q = rieszlab::riesz_apply(n, 1.0, u, x, Qmc(1 << 18), 0.5);
  EXPECT_NEAR(p.value, q.value, 4 * (p.error + q.error) + 0.01 * q.value);
}

TEST(RieszApplyTest, WeightNearTheOrigin) {
  const auto n = R2();
  const auto u = TestFunction::gaussian(n, {1.0});
  // 2 pi int e^(-r^2) r^(-1/2) dr = pi Gamma(1/4).
  const double at0 = kPi * std::tgamma(0.25);
  EXPECT_NEAR(rieszlab::riesz_apply(n, 1.0, u, Point{0, 0}, Polar(), 0.5).value,
              at0, 1e-4 * at0);
  const Estimate a = rieszlab::riesz_apply(n, 1.0, u, Point{1e-3, 0}, Polar(), 0.5);
  EXPECT_FALSE(a.divergent);
  EXPECT_NEAR(a.value, at0, 0.01 * at0);
  const Estimate q = rieszlab::riesz_apply(n, 1.0, u, Point{0.05, 0.02}, Qmc(1 << 18), 0.5);
  const Estimate p = rieszlab::riesz_apply(n, 1.0, u, Point{0.05, 0.02}, Polar(), 0.5);
  EXPECT_NEAR(p.value, q.value, 4 * (p.error + q.error) + 0.01 * q.value);
  EXPECT_TRUE(
      rieszlab::riesz_apply(n, 1.0, u, Point{0, 0}, Polar(), 1.0).divergent);
}

TEST(LpNormTest, Examples) {
  const auto n = R2();
  for (const QuadratureSpec& s : {Polar(), Qmc()}) {
    EXPECT_NEAR(rieszlab::lp_norm(TestFunction::ball(n, 1.0), 2, s).value,
                std::sqrt(kPi), 0.005 * std::sqrt(kPi));
    EXPECT_EQ(rieszlab::lp_norm(TestFunction::ball(n, 1.0, 0.0), 2, s).value, 0.0);
    EXPECT_NEAR(rieszlab::lp_norm(TestFunction::gaussian(n, {1.0}), 2, s).value,
                std::sqrt(kPi / 2), 0.005 * std::sqrt(kPi / 2));
  }
}

TEST(LpNormTest, DivergenceAndValidation) {
  const auto n = R2();
  const Estimate e =
      rieszlab::lp_norm(TestFunction::power_decay(n, 1.5), 1.0, Polar());
  EXPECT_TRUE(e.divergent);
  EXPECT_FALSE(e.reason.empty());
  EXPECT_THROW(rieszlab::lp_norm(TestFunction::ball(n, 1.0), 0.5, Polar()),
               std::invalid_argument);
}

TEST(LpNormTest, DilationScaling) {
  // ||u o D_t||_p = t^(-Q/p) ||u||_p.
  const auto n = H1();
  const auto u = TestFunction::conformal(n, 2.0, 1.0, Point{1, 0, 1});
  const double p = 1.5;
  const double base = rieszlab::lp_norm(u, p, Polar()).value;
  for (double t : {0.25, 4.0}) {
    EXPECT_NEAR(rieszlab::lp_norm(u.dilated(t), p, Polar()).value,
                std::pow(t, -4.0 / p) * base, 1e-3 * std::pow(t, -4.0 / p) * base);
  }
}

TEST(LpNormTest, WeightedMatchesRadialValue) {
  // || |x|^a 1_B ||_p^p = |S| / (Q + a p) in R^2.
  const auto n = R2();
  const double a = -0.5, p = 2.0;
  const double want = std::pow(2 * kPi / (2 + a * p), 1 / p);
  EXPECT_NEAR(rieszlab::lp_norm(TestFunction::ball(n, 1.0), p, Polar(), a).value,
              want, 1e-3 * want);
}

TEST(KernelSplitTest, K1) {
  const auto n = R2();
  const auto r = rieszlab::k1_l1_norm(n, {1.0, 1.0}, Polar());
  EXPECT_NEAR(r.closed_form, 2 * kPi, 1e-12);
  EXPECT_NEAR(r.numeric.value, 2 * kPi, 0.01 * 2 * kPi);
  const auto r2 = rieszlab::k1_l1_norm(n, {2.0, 1.0}, Polar());
  EXPECT_NEAR(r2.numeric.value, 2.0 * r.numeric.value, 1e-9 * r.numeric.value);
  EXPECT_NEAR(r2.closed_form, 2.0 * r.closed_form, 1e-12);
  // Blow-up as lambda -> Q.
  const auto near = rieszlab::k1_l1_norm(n, {1.0, 1.999}, Polar());
  EXPECT_NEAR(near.blow_up, 1000.0, 1e-6);
  EXPECT_NEAR(near.closed_form, 2 * kPi * 1000.0, 1e-6);
  EXPECT_THROW(rieszlab::k1_l1_norm(n, {1.0, 2.0}, Polar()), std::invalid_argument);
  EXPECT_THROW(rieszlab::k1_l1_norm(n, {0.0, 1.0}, Polar()), std::invalid_argument);
}

TEST(KernelSplitTest, K2) {
  const auto n = R2();
  const auto r = rieszlab::k2_lpprime_norm(n, {1.0, 1.5}, 2.0, Polar());
  EXPECT_FALSE(r.divergent);
  EXPECT_DOUBLE_EQ(r.induced_q, 4.0);
  EXPECT_NEAR(r.closed_form, std::sqrt(2 * kPi), 1e-12);
  EXPECT_NEAR(r.numeric.value, r.closed_form, 0.01 * r.closed_form);
  const auto r2 = rieszlab::k2_lpprime_norm(n, {2.0, 1.5}, 2.0, Polar());
  EXPECT_NEAR(r2.closed_form, std::pow(2.0, -0.5) * r.closed_form, 1e-12);
  EXPECT_NEAR(r2.numeric.value, std::pow(2.0, -0.5) * r.numeric.value,
              1e-6 * r.numeric.value);
  // lambda p' = Q.
  const auto edge = rieszlab::k2_lpprime_norm(n, {1.0, 1.0}, 2.0, Polar());
  EXPECT_TRUE(edge.divergent);
  EXPECT_FALSE(edge.reason.empty());
}

TEST(KernelSplitTest, AcrossNorms) {
  for (const auto& n : {H1(), QuasiNormSpec::max_weighted(GroupSpec::heisenberg(1)),
                        QuasiNormSpec::sum_weighted(GroupSpec::abelian({1, 3}))}) {
    const auto k1 = rieszlab::k1_l1_norm(n, {1.5, 2.5}, Polar());
    EXPECT_NEAR(k1.numeric.value, k1.closed_form, 0.01 * k1.closed_form) << n.name();
    const auto k2 = rieszlab::k2_lpprime_norm(n, {0.5, 3.0}, 2.0, Polar());
    EXPECT_NEAR(k2.numeric.value, k2.closed_form, 0.01 * k2.closed_form) << n.name();
    EXPECT_NEAR(k2.induced_q, 4.0, 1e-12);
  }
}

TEST(WeakDistributionTest, Trivial) {
  const auto n = R2();
  const auto zero = rieszlab::weak_distribution(n, 1.0, TestFunction::zero(n),
                                                {0.1, 1.0}, Polar());
  ASSERT_EQ(zero.levels.size(), 2u);
  for (const auto& l : zero.levels) EXPECT_EQ(l.measure.value, 0.0);
  QuadratureSpec s = Polar();
  s.angular = 16;
  const auto w = rieszlab::weak_distribution(
      n, 1.0, TestFunction::ball(n, 1.0), {1.0, 1e3}, s, {512});
  EXPECT_LE(w.max_value, 2 * kPi * 1.001);
  EXPECT_GT(w.levels[0].measure.value, 0.0);
  EXPECT_EQ(w.levels[1].measure.value, 0.0);
  EXPECT_THROW(rieszlab::weak_distribution(n, 1.0, TestFunction::ball(n, 1.0),
                                           {0.0}, s),
               std::invalid_argument);
}

TEST(WeakDistributionTest, MonotoneInZeta) {
  const auto n = R2();
  QuadratureSpec s = Polar();
  s.angular = 16;
  const std::vector<double> zs = {0.5, 1.0, 2.0, 4.0};
  const auto w = rieszlab::weak_distribution(
      n, 1.0, TestFunction::gaussian(n, {1.0}), zs, s, {1024});
  for (std::size_t i = 1; i < zs.size(); ++i) {
    EXPECT_LE(w.levels[i].measure.value, w.levels[i - 1].measure.value);
  }
}

TEST(WeakDistributionTest, BallSuperlevelMatchesRadialProfile) {
  // I 1_B is radial and decreasing, so {I u > zeta} is a disk whose radius
  // comes from the potential itself.
  const auto n = R2();
  const auto u = TestFunction::ball(n, 1.0);
  QuadratureSpec s = Polar();
  s.angular = 32;
  const double zeta = 3.0;
  double lo = 0.0, hi = 4.0;
  for (int i = 0; i < 40; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double v = rieszlab::riesz_apply(n, 1.0, u, Point{mid, 0}, s).value;
    (v > zeta ? lo : hi) = mid;
  }
  const double want = kPi * lo * lo;
  const auto w = rieszlab::weak_distribution(n, 1.0, u, {zeta}, s, {4096});
  EXPECT_NEAR(w.levels[0].measure.value, want,
              4 * w.levels[0].measure.error + 0.02 * want);
}

TEST(BilinearFormTest, Trivial) {
  const auto n = R2();
  const auto g = TestFunction::gaussian(n, {1.0});
  EXPECT_EQ(rieszlab::bilinear_form(n, TestFunction::zero(n), g, 1, 0, 0, Polar())
                .value,
            0.0);
  EXPECT_EQ(rieszlab::bilinear_form(n, g, TestFunction::zero(n), 1, 0, 0, Polar())
                .value,
            0.0);
}

TEST(BilinearFormTest, GaussianPairing) {
  // pi^2 sqrt(pi/2) via x +- y coordinates.
  const auto n = R2();
  const auto g = TestFunction::gaussian(n, {1.0});
  QuadratureSpec s = Polar();
  s.angular = 16;
  const Estimate e = rieszlab::bilinear_form(n, g, g, 1.0, 0.0, 0.0, s);
  EXPECT_NEAR(e.value, 12.369714725596571, 0.02 * 12.369714725596571);
}

TEST(BilinearFormTest, MatchesPairingOfPotential) {
  const auto n = R2();
  const auto u = TestFunction::ball(n, 1.0, 1.0, Point{0.5, 0});
  const auto h = TestFunction::conformal(n, 2.0);
  QuadratureSpec s = Polar();
  s.angular = 16;
  const double direct = rieszlab::bilinear_form(n, u, h, 1.0, 0.0, 0.0, s).value;
  QuadratureSpec box = Qmc(1 << 12);
  box.L = 12.0;
  QuadratureSpec inner = Polar();
  inner.angular = 16;
  inner.exec = Execution::kSerial;
  const Estimate pairing = rieszlab::integrate(
      [&](const Point& x) {
        return h(x) * rieszlab::riesz_apply(n, 1.0, u, x, inner).value;
      },
      rieszlab::Region::box(n.group(), 12.0), box);
  EXPECT_NEAR(direct, pairing.value, 4 * pairing.error + 0.02 * direct);
}

TEST(BilinearFormTest, SwapSymmetry) {
  const auto n = H1();
  const auto u = TestFunction::gaussian(n, {1.0}, 1.0, Point{0.5, 0, 0.5});
  const auto h = TestFunction::conformal(n, 2.5);
  QuadratureSpec s = Polar();
  s.angular = 8;
  s.radial_order = 4;
  const double a = rieszlab::bilinear_form(n, u, h, 2.0, 0.5, 0.25, s).value;
  const double b = rieszlab::bilinear_form(n, h, u, 2.0, 0.25, 0.5, s).value;
  EXPECT_NEAR(a, b, 0.02 * a);
}

}  // namespace
