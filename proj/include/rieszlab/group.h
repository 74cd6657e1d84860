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

#ifndef RIESZLAB_GROUP_H_
#define RIESZLAB_GROUP_H_

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace rieszlab {

// Largest topological dimension a Point can hold (Heisenberg(4) has N = 9).
inline constexpr std::size_t kMaxDim = 9;

// A point of a homogeneous group in exponential coordinates. Fixed capacity
// so that points live on the stack inside quadrature loops.
class Point {
 public:
  Point() = default;
  explicit Point(std::size_t dim);
  Point(std::initializer_list<double> coords);
  explicit Point(std::span<const double> coords);

  std::size_t size() const { return dim_; }
  double& operator[](std::size_t i) { return c_[i]; }
  double operator[](std::size_t i) const { return c_[i]; }

  std::span<double> coords() { return {c_.data(), dim_}; }
  std::span<const double> coords() const { return {c_.data(), dim_}; }

  bool is_zero() const;
  double max_abs() const;

  friend bool operator==(const Point& a, const Point& b);

 private:
  std::array<double, kMaxDim> c_{};
  std::size_t dim_ = 0;
};

std::string to_string(const Point& x);

enum class GroupLaw { kAbelian, kHeisenberg };

// A homogeneous group on R^N: the group law plus the dilation weights
// nu_1..nu_N. Heisenberg(n) uses coordinates (a, b, t) with a, b in R^n and
// weights (1,...,1,2).
class GroupSpec {
 public:
  static GroupSpec abelian(std::vector<double> weights);
  static GroupSpec euclidean(std::size_t dim);
  static GroupSpec heisenberg(std::size_t n);

  GroupLaw law() const { return law_; }
  std::size_t dim() const { return weights_.size(); }
  // n for Heisenberg(n); 0 for abelian groups.
  std::size_t heisenberg_n() const { return heisenberg_n_; }
  std::span<const double> weights() const { return weights_; }
  double weight(std::size_t i) const { return weights_[i]; }
  double max_weight() const;
  bool all_weights_one() const;

  std::string name() const;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;

 private:
  GroupSpec(GroupLaw law, std::size_t heisenberg_n, std::vector<double> weights);

  GroupLaw law_ = GroupLaw::kAbelian;
  std::size_t heisenberg_n_ = 0;
  std::vector<double> weights_;
};

// Q = nu_1 + ... + nu_N.
double homogeneous_dimension(const GroupSpec& g);

Point identity(const GroupSpec& g);

// x . y. Heisenberg(n):
//   (a1,b1,t1).(a2,b2,t2) = (a1+a2, b1+b2, t1+t2 + (a1.b2 - b1.a2)/2).
Point multiply(const GroupSpec& g, const Point& x, const Point& y);

// x^{-1}; coordinate negation for both built-in laws.
Point inverse(const GroupSpec& g, const Point& x);

// D_t(x) = (t^nu_1 x_1, ..., t^nu_N x_N). Throws std::invalid_argument for
// t <= 0.
Point dilate(const GroupSpec& g, double t, const Point& x);

// Precomputed t^nu_i for repeated dilation by the same factor.
class Dilation {
 public:
  Dilation(const GroupSpec& g, double t);
  double factor() const { return t_; }
  Point apply(const Point& x) const;
  double scale(std::size_t i) const { return pow_[i]; }

 private:
  double t_;
  std::size_t dim_;
  std::array<double, kMaxDim> pow_{};
};

// Throws std::invalid_argument unless x has g's dimension and finite entries.
void check_conforms(const GroupSpec& g, const Point& x);

// Determinant of the Jacobian of y -> x . y at y, by central differences.
double left_translation_jacobian_det(const GroupSpec& g, const Point& x,
                                     const Point& y, double h = 1e-5);

}  // namespace rieszlab

#endif  // RIESZLAB_GROUP_H_
