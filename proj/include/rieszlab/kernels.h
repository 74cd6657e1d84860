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

// Data-parallel loop kernels. Every kernel has a serial reference path and an
// OpenMP path that produce bit-identical results: work is cut into fixed-size
// blocks independent of the thread count, each block is reduced serially,
// and block partials are combined by pairwise summation in index order.

#ifndef RIESZLAB_KERNELS_H_
#define RIESZLAB_KERNELS_H_

#include <cstddef>
#include <span>
#include <vector>

namespace rieszlab {

enum class Execution { kSerial, kParallel };

inline constexpr std::size_t kBlockSize = 512;

// Sets the OpenMP thread count (no-op when n <= 0).
void set_thread_count(int n);
int thread_count();

// Pairwise (cascade) summation of a contiguous range.
double pairwise_sum(std::span<const double> v);

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
};

namespace detail {

template <class F>
Moments block_moments(std::size_t begin, std::size_t end, F& f) {
  // Serial cascade over the block: pairwise on a small buffer.
  double vals[kBlockSize];
  double sq[kBlockSize];
  std::size_t m = 0;
  for (std::size_t i = begin; i < end; ++i, ++m) {
    const double v = f(i);
    vals[m] = v;
    sq[m] = v * v;
  }
  return {pairwise_sum({vals, m}), pairwise_sum({sq, m})};
}

Moments combine(std::span<const Moments> parts);

}  // namespace detail

// Sum and sum of squares of f(0..n-1).
template <class F>
Moments blocked_moments(std::size_t n, F f, Execution exec) {
  const std::size_t blocks = (n + kBlockSize - 1) / kBlockSize;
  std::vector<Moments> parts(blocks);
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(blocks); ++b) {
      const std::size_t lo = static_cast<std::size_t>(b) * kBlockSize;
      const std::size_t hi = lo + kBlockSize < n ? lo + kBlockSize : n;
      parts[b] = detail::block_moments(lo, hi, f);
    }
  } else {
    for (std::size_t b = 0; b < blocks; ++b) {
      const std::size_t lo = b * kBlockSize;
      const std::size_t hi = lo + kBlockSize < n ? lo + kBlockSize : n;
      parts[b] = detail::block_moments(lo, hi, f);
    }
  }
  return detail::combine(parts);
}

template <class F>
double blocked_sum(std::size_t n, F f, Execution exec) {
  return blocked_moments(n, f, exec).sum;
}

// Runs f(i) for every index; f must only touch per-index state.
template <class F>
void for_indices(std::size_t n, F f, Execution exec) {
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
      f(static_cast<std::size_t>(i));
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) f(i);
  }
}

// out[i] = f(i). Elements are independent, so the result does not depend on
// the schedule.
template <class F>
std::vector<double> map_indices(std::size_t n, F f, Execution exec) {
  std::vector<double> out(n);
  for_indices(n, [&](std::size_t i) { out[i] = f(i); }, exec);
  return out;
}

}  // namespace rieszlab

#endif  // RIESZLAB_KERNELS_H_
