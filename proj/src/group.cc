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

#include "rieszlab/group.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace rieszlab {

Point::Point(std::size_t dim) : dim_(dim) {
  if (dim > kMaxDim) {
    throw std::invalid_argument("Point: dimension " + std::to_string(dim) +
                                " exceeds kMaxDim");
  }
}

Point::Point(std::initializer_list<double> coords) : Point(coords.size()) {
  std::copy(coords.begin(), coords.end(), c_.begin());
}

Point::Point(std::span<const double> coords) : Point(coords.size()) {
  std::copy(coords.begin(), coords.end(), c_.begin());
}

bool Point::is_zero() const {
  for (std::size_t i = 0; i < dim_; ++i) {
    if (c_[i] != 0.0) return false;
  }
  return true;
}

double Point::max_abs() const {
  double m = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) m = std::max(m, std::abs(c_[i]));
  return m;
}

bool operator==(const Point& a, const Point& b) {
  if (a.dim_ != b.dim_) return false;
  for (std::size_t i = 0; i < a.dim_; ++i) {
    if (a.c_[i] != b.c_[i]) return false;
  }
  return true;
}

std::string to_string(const Point& x) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) os << ", ";
    os << x[i];
  }
  os << ')';
  return os.str();
}

GroupSpec::GroupSpec(GroupLaw law, std::size_t heisenberg_n,
                     std::vector<double> weights)
    : law_(law), heisenberg_n_(heisenberg_n), weights_(std::move(weights)) {}

GroupSpec GroupSpec::abelian(std::vector<double> weights) {
  if (weights.empty() || weights.size() > kMaxDim) {
    throw std::invalid_argument("abelian group: need 1.." +
                                std::to_string(kMaxDim) + " weights");
  }
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("abelian group: weights must be positive");
    }
  }
  return GroupSpec(GroupLaw::kAbelian, 0, std::move(weights));
}

GroupSpec GroupSpec::euclidean(std::size_t dim) {
  return abelian(std::vector<double>(dim, 1.0));
}

GroupSpec GroupSpec::heisenberg(std::size_t n) {
  if (n == 0 || 2 * n + 1 > kMaxDim) {
    throw std::invalid_argument("heisenberg group: n must be in 1.." +
                                std::to_string((kMaxDim - 1) / 2));
  }
  std::vector<double> w(2 * n + 1, 1.0);
  w.back() = 2.0;
  return GroupSpec(GroupLaw::kHeisenberg, n, std::move(w));
}

double GroupSpec::max_weight() const {
  return *std::max_element(weights_.begin(), weights_.end());
}

bool GroupSpec::all_weights_one() const {
  return std::all_of(weights_.begin(), weights_.end(),
                     [](double w) { return w == 1.0; });
}

std::string GroupSpec::name() const {
  std::ostringstream os;
  if (law_ == GroupLaw::kHeisenberg) {
    os << "Heisenberg(" << heisenberg_n_ << ")";
  } else {
    os << "Abelian(";
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      if (i) os << ',';
      os << weights_[i];
    }
    os << ")";
  }
  return os.str();
}

double homogeneous_dimension(const GroupSpec& g) {
  double q = 0.0;
  for (double w : g.weights()) q += w;
  return q;
}

Point identity(const GroupSpec& g) { return Point(g.dim()); }

void check_conforms(const GroupSpec& g, const Point& x) {
  if (x.size() != g.dim()) {
    throw std::invalid_argument("point of dimension " +
                                std::to_string(x.size()) + " used on " +
                                g.name());
  }
  for (double c : x.coords()) {
    if (!std::isfinite(c)) {
      throw std::invalid_argument("point has non-finite coordinate: " +
                                  to_string(x));
    }
  }
}

Point multiply(const GroupSpec& g, const Point& x, const Point& y) {
  if (x.size() != g.dim() || y.size() != g.dim()) {
    throw std::invalid_argument("multiply: dimension mismatch on " + g.name());
  }
  Point r(g.dim());
  for (std::size_t i = 0; i < g.dim(); ++i) r[i] = x[i] + y[i];
  if (g.law() == GroupLaw::kHeisenberg) {
    const std::size_t n = g.heisenberg_n();
    double symplectic = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      symplectic += x[i] * y[n + i] - x[n + i] * y[i];
    }
    r[2 * n] += 0.5 * symplectic;
  }
  return r;
}

Point inverse(const GroupSpec& g, const Point& x) {
  if (x.size() != g.dim()) {
    throw std::invalid_argument("inverse: dimension mismatch on " + g.name());
  }
  Point r(g.dim());
  for (std::size_t i = 0; i < g.dim(); ++i) r[i] = -x[i];
  return r;
}

Dilation::Dilation(const GroupSpec& g, double t) : t_(t), dim_(g.dim()) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("dilation factor must be positive and finite");
  }
  for (std::size_t i = 0; i < dim_; ++i) {
    const double w = g.weight(i);
    pow_[i] = w == 1.0 ? t : (w == 2.0 ? t * t : std::pow(t, w));
  }
}

Point Dilation::apply(const Point& x) const {
  Point r(dim_);
  for (std::size_t i = 0; i < dim_; ++i) r[i] = pow_[i] * x[i];
  return r;
}

Point dilate(const GroupSpec& g, double t, const Point& x) {
  if (x.size() != g.dim()) {
    throw std::invalid_argument("dilate: dimension mismatch on " + g.name());
  }
  return Dilation(g, t).apply(x);
}

namespace {

double determinant(std::array<std::array<double, kMaxDim>, kMaxDim> a,
                   std::size_t n) {
  double det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (a[pivot][col] == 0.0) return 0.0;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

}  // namespace

double left_translation_jacobian_det(const GroupSpec& g, const Point& x,
                                     const Point& y, double h) {
  const std::size_t n = g.dim();
  std::array<std::array<double, kMaxDim>, kMaxDim> jac{};
  for (std::size_t j = 0; j < n; ++j) {
    Point yp = y, ym = y;
    yp[j] += h;
    ym[j] -= h;
    const Point fp = multiply(g, x, yp);
    const Point fm = multiply(g, x, ym);
    for (std::size_t i = 0; i < n; ++i) jac[i][j] = (fp[i] - fm[i]) / (2 * h);
  }
  return determinant(jac, n);
}

}  // namespace rieszlab
