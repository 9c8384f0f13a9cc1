// Copyright 2026 The lptest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <unordered_set>
#include <vector>

#include "lptest/common.hpp"

namespace lptest {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for trial `index` of a run seeded with `seed`. Independent of the
/// order in which trials are executed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 0x5851f42d4c957f2dULL));
}

/// Seeded generator. All draws go through this class so that a run is
/// reproducible bit-for-bit from its seed; the bounded integer and real
/// draws avoid the implementation-defined std distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). `bound` must be positive.
  std::uint64_t uniform_index(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  /// Uniform integer in [lo, hi].
  long long uniform_int(long long lo, long long hi) {
    return lo + static_cast<long long>(uniform_index(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  /// Uniform real in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    double u1;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  template <class It>
  void shuffle(It first, It last) {
    const auto n = static_cast<std::uint64_t>(last - first);
    for (std::uint64_t i = n; i > 1; --i) {
      const auto j = uniform_index(i);
      std::iter_swap(first + (i - 1), first + j);
    }
  }

 private:
  std::mt19937_64 engine_;
};

/// Uniform r-subset of [0, n), returned sorted.
inline IndexList sample_without_replacement(std::size_t n, std::size_t r, Rng& rng) {
  r = std::min(r, n);
  IndexList out;
  if (4 * r >= n) {
    IndexList all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    for (std::size_t i = 0; i < r; ++i) {
      const auto j = i + rng.uniform_index(n - i);
      std::swap(all[i], all[j]);
    }
    out.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(r));
  } else {
    // Floyd's algorithm.
    std::unordered_set<std::size_t> chosen;
    chosen.reserve(2 * r);
    for (std::size_t j = n - r; j < n; ++j) {
      const auto t = static_cast<std::size_t>(rng.uniform_index(j + 1));
      if (!chosen.insert(t).second) chosen.insert(j);
    }
    out.assign(chosen.begin(), chosen.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Uniform element of [0, n) \ excluded, where `excluded` is sorted and
/// strictly smaller than n in size.
inline std::size_t uniform_outside(std::size_t n, const IndexList& excluded, Rng& rng) {
  std::size_t j = static_cast<std::size_t>(rng.uniform_index(n - excluded.size()));
  // The j-th element of the complement.
  for (const auto e : excluded) {
    if (e <= j) {
      ++j;
    } else {
      break;
    }
  }
  return j;
}

}  // namespace lptest
