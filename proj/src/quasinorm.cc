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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "rieszlab/kernels.h"

namespace rieszlab {
namespace {

bool is_integer(double v) { return v == std::floor(v) && std::abs(v) < 1e6; }

int even_ceiling(double v) {
  int r = static_cast<int>(std::ceil(v - 1e-12));
  return r % 2 == 0 ? r : r + 1;
}

double int_pow(double base, int e) {
  double r = 1.0;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

}  // namespace

int default_sum_exponent(const GroupSpec& g) {
  const int floor_rho = even_ceiling(2.0 * g.max_weight());
  bool integral = true;
  long long l = 1;
  for (double w : g.weights()) {
    if (!is_integer(w)) {
      integral = false;
      break;
    }
    l = std::lcm(l, static_cast<long long>(w));
  }
  if (!integral) return floor_rho;
  const int rho = static_cast<int>(std::min<long long>(2 * l, 12));
  return std::max(rho, floor_rho);
}

QuasiNormSpec::QuasiNormSpec(GroupSpec g, NormKind kind, double param,
                             bool triangle)
    : group_(std::move(g)), kind_(kind), param_(param), triangle_(triangle) {
  for (std::size_t i = 0; i < group_.dim(); ++i) {
    const double w = group_.weight(i);
    double e = 0.0;
    switch (kind_) {
      case NormKind::kMaxWeighted:
        e = 1.0 / w;
        break;
      case NormKind::kSumWeighted:
        e = param_ / w;
        break;
      default:
        e = 2.0;
        break;
    }
    expo_[i] = e;
    int_expo_[i] = (is_integer(e) && e >= 1.0 && e <= 64.0) ? static_cast<int>(e) : 0;
  }
}

QuasiNormSpec QuasiNormSpec::euclidean(const GroupSpec& g) {
  if (!g.all_weights_one() || g.law() != GroupLaw::kAbelian) {
    throw std::invalid_argument(
        "euclidean norm requires an abelian group with all weights 1");
  }
  return QuasiNormSpec(g, NormKind::kEuclidean, 0.0, true);
}

QuasiNormSpec QuasiNormSpec::max_weighted(const GroupSpec& g) {
  bool triangle = false;
  if (g.law() == GroupLaw::kAbelian) {
    triangle = std::all_of(g.weights().begin(), g.weights().end(),
                           [](double w) { return w >= 1.0; });
  } else {
    triangle = g.heisenberg_n() == 1;
  }
  return QuasiNormSpec(g, NormKind::kMaxWeighted, 0.0, triangle);
}

QuasiNormSpec QuasiNormSpec::sum_weighted(const GroupSpec& g,
                                          std::optional<int> rho) {
  const int r = rho.value_or(default_sum_exponent(g));
  if (r <= 0 || r % 2 != 0) {
    throw std::invalid_argument("sum norm: rho must be a positive even integer");
  }
  if (r < 2.0 * g.max_weight()) {
    throw std::invalid_argument("sum norm: rho must be >= 2 * max weight");
  }
  bool triangle = g.law() == GroupLaw::kAbelian &&
                  std::all_of(g.weights().begin(), g.weights().end(),
                              [](double w) { return w >= 1.0; });
  return QuasiNormSpec(g, NormKind::kSumWeighted, r, triangle);
}

QuasiNormSpec QuasiNormSpec::koranyi(const GroupSpec& g, double c) {
  if (g.law() != GroupLaw::kHeisenberg) {
    throw std::invalid_argument("koranyi gauge requires a Heisenberg group");
  }
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw std::invalid_argument("koranyi gauge constant must be positive");
  }
  return QuasiNormSpec(g, NormKind::kKoranyi, c, c == 16.0);
}

double QuasiNormSpec::operator()(const Point& x) const {
  const std::size_t n = group_.dim();
  switch (kind_) {
    case NormKind::kEuclidean: {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
      return std::sqrt(s);
    }
    case NormKind::kMaxWeighted: {
      double m = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double a = std::abs(x[i]);
        const double w = group_.weight(i);
        const double v = w == 1.0 ? a : (w == 2.0 ? std::sqrt(a) : std::pow(a, expo_[i]));
        m = std::max(m, v);
      }
      return m;
    }
    case NormKind::kSumWeighted: {
      // Factor out the dominant term so that huge or tiny points do not
      // overflow: |x| = M * (sum (|x_i|^(1/nu_i) / M)^rho)^(1/rho).
      double m = 0.0;
      std::array<double, kMaxDim> h{};
      for (std::size_t i = 0; i < n; ++i) {
        const double a = std::abs(x[i]);
        const double w = group_.weight(i);
        h[i] = w == 1.0 ? a : (w == 2.0 ? std::sqrt(a) : std::pow(a, 1.0 / w));
        m = std::max(m, h[i]);
      }
      if (m == 0.0) return 0.0;
      const int rho = static_cast<int>(param_);
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += int_pow(h[i] / m, rho);
      return m * std::pow(s, 1.0 / param_);
    }
    case NormKind::kKoranyi: {
      const std::size_t hn = group_.heisenberg_n();
      double z2 = 0.0;
      for (std::size_t i = 0; i < 2 * hn; ++i) z2 += x[i] * x[i];
      const double t = x[2 * hn];
      return std::sqrt(std::sqrt(z2 * z2 + param_ * t * t));
    }
  }
  return 0.0;
}

double QuasiNormSpec::unit_ball_extent(std::size_t i) const {
  if (kind_ == NormKind::kKoranyi && i == 2 * group_.heisenberg_n()) {
    return 1.0 / std::sqrt(param_);
  }
  return 1.0;
}

std::string QuasiNormSpec::name() const {
  std::ostringstream os;
  switch (kind_) {
    case NormKind::kEuclidean:
      os << "euclidean";
      break;
    case NormKind::kMaxWeighted:
      os << "max";
      break;
    case NormKind::kSumWeighted:
      os << "sum(rho=" << param_ << ")";
      break;
    case NormKind::kKoranyi:
      os << "koranyi(c=" << param_ << ")";
      break;
  }
  os << " on " << group_.name();
  return os.str();
}

Point random_point(const GroupSpec& g, const CounterRng& rng,
                   std::uint64_t stream, std::uint64_t index, double scale_lo,
                   double scale_hi) {
  Point z(g.dim());
  for (std::size_t i = 0; i < g.dim(); ++i) {
    z[i] = rng.uniform(stream, index, i, -1.0, 1.0);
  }
  const double s = rng.log_uniform(stream, index, kMaxDim, scale_lo, scale_hi);
  return dilate(g, s, z);
}

VerificationReport check_axioms(const QuasiNormSpec& n, std::size_t samples,
                                std::uint64_t seed, double tolerance) {
  if (samples == 0) throw std::invalid_argument("check_axioms: samples >= 1");
  const GroupSpec& g = n.group();
  const CounterRng rng(seed);
  double sym = 0.0, hom = 0.0, def = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const Point x = random_point(g, rng, 1, i);
    const double nx = n(x);
    if (!(nx > 0.0)) {
      def = 1.0;
      continue;
    }
    sym = std::max(sym, std::abs(n(inverse(g, x)) - nx) / nx);
    const double t = rng.log_uniform(2, i, 0, 1e-2, 1e2);
    hom = std::max(hom, std::abs(n(dilate(g, t, x)) - t * nx) / (t * nx));
  }
  const double at_origin = n(identity(g));

  VerificationReport r("axioms");
  r.set_inputs({{"norm", n.name()}, {"samples", samples}, {"seed", seed}});
  r.set_seed(seed);
  r.set_samples(samples);
  r.add_quantity("symmetry_max_rel_violation", sym);
  r.add_quantity("homogeneity_max_rel_violation", hom);
  r.add_quantity("norm_at_origin", at_origin);
  r.check_le("i_symmetry", sym, tolerance);
  r.check_le("ii_homogeneity", hom, tolerance);
  r.check_le("iii_definiteness_nonzero", def, 0.0,
             "every sampled nonzero point has positive norm");
  r.check_le("iii_definiteness_origin", std::abs(at_origin), 0.0);
  return r;
}

TriangleEstimate quasi_triangle_constant(const QuasiNormSpec& n,
                                         std::size_t samples,
                                         std::uint64_t seed) {
  if (samples == 0) {
    throw std::invalid_argument("quasi_triangle_constant: samples >= 1");
  }
  const GroupSpec& g = n.group();
  const CounterRng rng(seed);
  double best = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const Point x = random_point(g, rng, 11, i);
    // Every third pair probes near-aligned directions, where the sup of
    // |xy|/(|x|+|y|) tends to be approached.
    Point y = random_point(g, rng, 12, i);
    if (i % 3 == 2) {
      const double s = rng.log_uniform(13, i, 0, 1e-2, 1e2);
      y = dilate(g, s, x);
      for (std::size_t k = 0; k < g.dim(); ++k) {
        y[k] += 1e-2 * y.max_abs() * rng.uniform(14, i, k, -1.0, 1.0);
      }
    }
    const double denom = n(x) + n(y);
    if (denom > 0.0) best = std::max(best, n(multiply(g, x, y)) / denom);
  }
  return {best, samples, seed};
}

Point rescale_to_unit_sphere(const QuasiNormSpec& n, const Point& z) {
  if (z.is_zero()) throw std::invalid_argument("cannot rescale the origin");
  const GroupSpec& g = n.group();
  auto f = [&](double t) { return n(dilate(g, t, z)); };
  double lo = 1.0, hi = 1.0;
  while (f(lo) > 1.0) lo *= 0.5;
  while (f(hi) < 1.0) hi *= 2.0;
  // Bisect in log t; the map t -> |D_t z| is increasing.
  for (int it = 0; it < 200 && hi / lo - 1.0 > 1e-15; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (f(mid) < 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double t = std::abs(f(lo) - 1.0) <= std::abs(f(hi) - 1.0) ? lo : hi;
  return dilate(g, t, z);
}

EquivalenceConstants equivalence_constants(const QuasiNormSpec& n1,
                                           const QuasiNormSpec& n2,
                                           std::size_t samples,
                                           std::uint64_t seed) {
  if (!(n1.group() == n2.group())) {
    throw std::invalid_argument("equivalence_constants: norms on different groups");
  }
  const GroupSpec& g = n1.group();
  const CounterRng rng(seed);
  EquivalenceConstants out;
  out.samples = samples;
  out.seed = seed;
  out.c_low = std::numeric_limits<double>::infinity();
  out.c_high = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    Point z(g.dim());
    for (std::size_t k = 0; k < g.dim(); ++k) z[k] = rng.normal(21, i, k);
    if (z.is_zero()) {
      ++out.skipped;
      continue;
    }
    const Point x = rescale_to_unit_sphere(n1, z);
    const double ratio = n2(x) / n1(x);
    out.c_low = std::min(out.c_low, ratio);
    out.c_high = std::max(out.c_high, ratio);
  }
  return out;
}

}  // namespace rieszlab
