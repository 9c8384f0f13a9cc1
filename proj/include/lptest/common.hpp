// Copyright 2026 The lptest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lptest {

using Vector = std::vector<double>;
using IndexList = std::vector<std::size_t>;

/// Absolute tolerance for geometric and LP membership decisions on
/// normalized coordinates.
inline constexpr double kTolerance = 1e-9;

/// Half-width of the implicit bounding box used by the LP engine.
inline constexpr double kLpBox = 1e6;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A solver could not certify its answer within tolerance.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// An exhaustive procedure would exceed its enumeration guard.
class TooLarge : public Error {
 public:
  using Error::Error;
};

class EmptyInstance : public Error {
 public:
  using Error::Error;
};

class BadLabel : public Error {
 public:
  using Error::Error;
};

class BadSpec : public Error {
 public:
  using Error::Error;
};

class CertificationFailed : public Error {
 public:
  using Error::Error;
};

class Overflow : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

inline double dot(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double squared_distance(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

/// Binomial coefficient saturating at UINT64_MAX.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(r);
}

inline std::size_t ceil_div_eps(double numerator, double epsilon) {
  // Guard against 10*d/eps landing a hair above an integer through rounding.
  const double q = numerator / epsilon;
  const double nearest = static_cast<double>(static_cast<long long>(q + 0.5));
  if (std::abs(q - nearest) <= 1e-9 * std::max(1.0, q)) return static_cast<std::size_t>(nearest);
  return static_cast<std::size_t>(std::ceil(q));
}

}  // namespace lptest
