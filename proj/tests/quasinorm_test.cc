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

#include "rieszlab/quasinorm.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "rieszlab/group.h"
#include "rieszlab/rng.h"

namespace {

using ::rieszlab::CounterRng;
using ::rieszlab::GroupSpec;
using ::rieszlab::Point;
using ::rieszlab::QuasiNormSpec;

std::vector<QuasiNormSpec> AllNorms() {
  auto r2 = GroupSpec::euclidean(2);
  auto a13 = GroupSpec::abelian({1, 3});
  auto h1 = GroupSpec::heisenberg(1);
  auto h2 = GroupSpec::heisenberg(2);
  return {QuasiNormSpec::euclidean(r2),     QuasiNormSpec::max_weighted(r2),
          QuasiNormSpec::sum_weighted(r2),  QuasiNormSpec::max_weighted(a13),
          QuasiNormSpec::sum_weighted(a13), QuasiNormSpec::max_weighted(h1),
          QuasiNormSpec::sum_weighted(h1),  QuasiNormSpec::koranyi(h1),
          QuasiNormSpec::koranyi(h1, 3.0),  QuasiNormSpec::koranyi(h2)};
}

TEST(EvaluateTest, Examples) {
  EXPECT_DOUBLE_EQ(
      QuasiNormSpec::euclidean(GroupSpec::euclidean(2))(Point{3, 4}), 5.0);
  EXPECT_DOUBLE_EQ(
      QuasiNormSpec::max_weighted(GroupSpec::abelian({1, 2}))(Point{2, 9}),
      3.0);
  EXPECT_DOUBLE_EQ(
      QuasiNormSpec::koranyi(GroupSpec::heisenberg(1))(Point{0, 0, 1}), 2.0);
  EXPECT_DOUBLE_EQ(
      QuasiNormSpec::sum_weighted(GroupSpec::euclidean(2), 2)(Point{3, -4}),
      5.0);
}

TEST(EvaluateTest, ExtremeScalesDoNotOverflow) {
  auto n = QuasiNormSpec::sum_weighted(GroupSpec::abelian({1, 3}), 6);
  EXPECT_NEAR(n(Point{1e200, 0}), 1e200, 1e186);
  EXPECT_NEAR(n(Point{1e-200, 0}), 1e-200, 1e-214);
}

TEST(QuasiNormSpecTest, Validation) {
  EXPECT_THROW(QuasiNormSpec::euclidean(GroupSpec::abelian({1, 3})),
               std::invalid_argument);
  EXPECT_THROW(QuasiNormSpec::euclidean(GroupSpec::heisenberg(1)),
               std::invalid_argument);
  EXPECT_THROW(QuasiNormSpec::koranyi(GroupSpec::euclidean(3)),
               std::invalid_argument);
  EXPECT_THROW(QuasiNormSpec::koranyi(GroupSpec::heisenberg(1), 0.0),
               std::invalid_argument);
  EXPECT_THROW(QuasiNormSpec::sum_weighted(GroupSpec::heisenberg(1), 3),
               std::invalid_argument);
  EXPECT_THROW(QuasiNormSpec::sum_weighted(GroupSpec::abelian({1, 3}), 4),
               std::invalid_argument);
}

TEST(QuasiNormSpecTest, DefaultSumExponent) {
  EXPECT_EQ(rieszlab::default_sum_exponent(GroupSpec::euclidean(2)), 2);
  EXPECT_EQ(rieszlab::default_sum_exponent(GroupSpec::heisenberg(1)), 4);
  EXPECT_EQ(rieszlab::default_sum_exponent(GroupSpec::abelian({1, 3})), 6);
  EXPECT_EQ(rieszlab::default_sum_exponent(GroupSpec::abelian({2, 3})), 12);
  EXPECT_EQ(rieszlab::default_sum_exponent(GroupSpec::abelian({1, 1.5})), 4);
}

TEST(CheckAxiomsTest, EveryBuiltinNorm) {
  for (const auto& n : AllNorms()) {
    auto r = check_axioms(n, 10000, 17);
    EXPECT_TRUE(r.all_passed()) << n.name() << "\n" << r.to_json().dump(2);
    EXPECT_EQ(r.quantity("norm_at_origin"), 0.0);
    EXPECT_LE(r.quantity("symmetry_max_rel_violation"), 1e-12);
    EXPECT_LE(r.quantity("homogeneity_max_rel_violation"), 1e-12);
  }
}

TEST(QuasiTriangleTest, DeclaredTriangleNormsPass) {
  int declared = 0;
  for (const auto& n : AllNorms()) {
    if (!n.declared_triangle()) continue;
    ++declared;
    auto est = quasi_triangle_constant(n, 200000, 5);
    EXPECT_LE(est.constant, 1 + 1e-10) << n.name();
  }
  EXPECT_GE(declared, 6);
}

TEST(QuasiTriangleTest, LargeGaugeConstantIsOnlyQuasi) {
  auto n = QuasiNormSpec::koranyi(GroupSpec::heisenberg(1), 100.0);
  EXPECT_FALSE(n.declared_triangle());
  EXPECT_GT(quasi_triangle_constant(n, 200000, 5).constant, 1.1);
}

TEST(QuasiTriangleTest, Deterministic) {
  auto n = QuasiNormSpec::sum_weighted(GroupSpec::heisenberg(1));
  EXPECT_EQ(quasi_triangle_constant(n, 5000, 9).constant,
            quasi_triangle_constant(n, 5000, 9).constant);
}

TEST(RescaleTest, LandsOnUnitSphere) {
  CounterRng rng(23);
  for (const auto& n : AllNorms()) {
    for (int i = 0; i < 200; ++i) {
      Point z = random_point(n.group(), rng, 0, i, 1e-3, 1e3);
      EXPECT_NEAR(n(rescale_to_unit_sphere(n, z)), 1.0, 1e-10) << n.name();
    }
  }
  auto n = QuasiNormSpec::euclidean(GroupSpec::euclidean(2));
  EXPECT_THROW(rescale_to_unit_sphere(n, Point{0, 0}), std::invalid_argument);
}

TEST(EquivalenceTest, IdenticalNorms) {
  auto n = QuasiNormSpec::koranyi(GroupSpec::heisenberg(1));
  auto c = equivalence_constants(n, n, 2000, 1);
  EXPECT_NEAR(c.c_low, 1.0, 1e-12);
  EXPECT_NEAR(c.c_high, 1.0, 1e-12);
}

TEST(EquivalenceTest, MaxAgainstEuclidean) {
  auto g = GroupSpec::euclidean(2);
  auto euc = QuasiNormSpec::euclidean(g);
  auto mx = QuasiNormSpec::max_weighted(g);
  auto c = equivalence_constants(mx, euc, 100000, 2);
  EXPECT_NEAR(c.c_low, 1.0, 0.01);
  EXPECT_NEAR(c.c_high, std::sqrt(2.0), 0.01 * std::sqrt(2.0));
  auto d = equivalence_constants(euc, mx, 100000, 2);
  EXPECT_NEAR(d.c_low, 1 / std::sqrt(2.0), 0.01);
  EXPECT_NEAR(d.c_high, 1.0, 0.01);
}

TEST(EquivalenceTest, KoranyiAgainstMax) {
  auto g = GroupSpec::heisenberg(1);
  auto c = equivalence_constants(QuasiNormSpec::koranyi(g),
                                 QuasiNormSpec::max_weighted(g), 100000, 3);
  EXPECT_GT(c.c_low, 0.0);
  EXPECT_LE(c.c_low, c.c_high);
  EXPECT_NEAR(c.c_low, 0.473011, 0.005);
  EXPECT_NEAR(c.c_high, 1.0, 0.005);
}

TEST(EquivalenceTest, SandwichHoldsOnFreshPoints) {
  auto norms = AllNorms();
  CounterRng rng(29);
  for (const auto& n1 : norms) {
    for (const auto& n2 : norms) {
      if (!(n1.group() == n2.group())) continue;
      auto c = equivalence_constants(n1, n2, 20000, 4);
      for (int i = 0; i < 500; ++i) {
        Point x = random_point(n1.group(), rng, 1, i);
        // Sampled extremes can miss the true ones slightly.
        EXPECT_GE(n2(x), c.c_low * n1(x) * (1 - 2e-2) - 1e-9);
        EXPECT_LE(n2(x), c.c_high * n1(x) * (1 + 2e-2) + 1e-9);
      }
    }
  }
}

}  // namespace
