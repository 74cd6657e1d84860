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

#include "rieszlab/gauss.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace rieszlab {
namespace {

// Weights w with sum_k w_k x_k^j = moment(j) for j < x.size().
template <class M>
std::vector<double> moment_weights(const std::vector<double>& x, M moment) {
  const std::size_t m = x.size();
  std::vector<std::vector<double>> a(m, std::vector<double>(m + 1));
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < m; ++k) a[j][k] = std::pow(x[k], j);
    a[j][m] = moment(j);
  }
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t piv = c;
    for (std::size_t i = c + 1; i < m; ++i) {
      if (std::abs(a[i][c]) > std::abs(a[piv][c])) piv = i;
    }
    std::swap(a[c], a[piv]);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == c) continue;
      const double f = a[i][c] / a[c][c];
      for (std::size_t k = c; k <= m; ++k) a[i][k] -= f * a[c][k];
    }
  }
  std::vector<double> w(m);
  for (std::size_t k = 0; k < m; ++k) w[k] = a[k][m] / a[k][k];
  return w;
}

GaussRule compute(std::size_t n) {
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    double p0 = 1.0, p1 = z;
    for (std::size_t k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (z * p1 - p0) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    r.x[i] = -z;
    r.x[n - 1 - i] = z;
    r.w[i] = r.w[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.x[n / 2] = 0.0;
  r.w_low = r.w;
  if (n >= 3) {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < n; ++i) {
      const bool central = n % 2 == 1 ? i == n / 2 : (i == n / 2 || i + 1 == n / 2);
      if (!central) keep.push_back(i);
    }
    std::vector<double> xs;
    for (std::size_t k : keep) xs.push_back(r.x[k]);
    const std::vector<double> wl = moment_weights(
        xs, [](std::size_t j) { return j % 2 == 0 ? 2.0 / (j + 1.0) : 0.0; });
    std::fill(r.w_low.begin(), r.w_low.end(), 0.0);
    for (std::size_t k = 0; k < keep.size(); ++k) r.w_low[keep[k]] = wl[k];
  }
  if (n <= kMaxCumulativeOrder) {
    r.cumulative.resize(n * n);
    for (std::size_t j = 0; j < n; ++j) {
      const double b = r.x[j];
      const std::vector<double> wj = moment_weights(r.x, [b](std::size_t m) {
        return (std::pow(b, m + 1.0) - std::pow(-1.0, m + 1.0)) / (m + 1.0);
      });
      std::copy(wj.begin(), wj.end(), r.cumulative.begin() + j * n);
    }
  }
  return r;
}

}  // namespace

const GaussRule& gauss_legendre(std::size_t n) {
  if (n == 0 || n > 512) throw std::invalid_argument("gauss_legendre: 1 <= n <= 512");
  static std::mutex mu;
  static std::map<std::size_t, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute(n)).first;
  return it->second;
}

}  // namespace rieszlab
