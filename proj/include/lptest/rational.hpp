// Copyright 2026 The lptest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace lptest {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Exact value of a finite binary64 number.
inline Rational to_rational(double x) {
  if (x == 0.0) return Rational(0);
  int exponent = 0;
  const double mantissa = std::frexp(x, &exponent);
  // mantissa * 2^53 is an exact integer.
  const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Rational r{BigInt(scaled)};
  if (exponent > 0) {
    r *= Rational(BigInt(1) << exponent);
  } else if (exponent < 0) {
    r /= Rational(BigInt(1) << (-exponent));
  }
  return r;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string to_string(const Rational& r) { return r.str(); }

}  // namespace lptest
