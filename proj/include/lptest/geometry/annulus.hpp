// Copyright 2026 The lptest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "lptest/common.hpp"
#include "lptest/lp/lex_lp.hpp"
#include "lptest/random.hpp"

namespace lptest::geometry {

/// Half-width of the box on each center coordinate.
inline constexpr double kAnnulusCenterBox = 1e4;
/// Bound on the offsets a and w.
inline constexpr double kAnnulusOffsetBox = 1e9;

struct AnnulusCertificate {
  Vector center;
  double r_inner = 0.0;
  double r_outer = 0.0;
  /// r_outer^2 - r_inner^2, the minimized objective.
  double width = 0.0;
  /// r_outer^2 - |center|^2. Every point p satisfies
  /// outer_offset - width <= |p|^2 - 2 p.center <= outer_offset.
  double outer_offset = 0.0;
  /// Indices of the points whose rows pin the optimum, at most d+2.
  IndexList support;
};

/// f_p(c) = |p|^2 - 2 p.c, which equals |p - c|^2 - |c|^2.
inline double annulus_offset(const Vector& p, const Vector& c) { return dot(p, p) - 2.0 * dot(p, c); }

/// Whether p lies outside the closed annulus of `cert` by more than tol
/// (measured on the squared-offset scale).
inline bool outside_annulus(const AnnulusCertificate& cert, const Vector& p, double tol = kTolerance) {
  const double f = annulus_offset(p, cert.center);
  const double slack = tol * std::max(1.0, std::abs(cert.outer_offset)) +
                       8.0 * std::numeric_limits<double>::epsilon() * (dot(p, p) + 2.0 * std::abs(dot(p, cert.center)));
  return f > cert.outer_offset + slack || f < cert.outer_offset - cert.width - slack;
}

/// Annulus minimizing r_outer^2 - r_inner^2 as a linear program in
/// (w, c, a) with b = a - w: b <= f_p(c) <= a for every point. Ties are
/// broken by the lexicographic minimum of (w, c_1, ..., c_d, a), which makes
/// the certificate unique.
inline AnnulusCertificate min_annulus(const std::vector<Vector>& points, Rng& rng) {
  if (points.empty()) throw std::invalid_argument("min_annulus: empty point set");
  const std::size_t d = points.front().size();
  if (d < 1) throw std::invalid_argument("min_annulus: dimension must be >= 1");
  for (const auto& p : points) {
    if (p.size() != d) throw std::invalid_argument("min_annulus: inconsistent dimensions");
  }
  // Variables u = (-w, -c_1, ..., -c_d, -a); maximizing u lexicographically
  // minimizes (w, c, a).
  const std::size_t nv = d + 2;
  std::vector<lp::LexRow<double>> rows;
  rows.reserve(2 * points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    const double pp = dot(p, p);
    lp::LexRow<double> out;
    out.a.assign(nv, 0.0);
    for (std::size_t j = 0; j < d; ++j) out.a[j + 1] = 2.0 * p[j];
    out.a[d + 1] = 1.0;
    out.b = -pp;
    out.id = static_cast<int>(2 * i);
    lp::LexRow<double> in;
    in.a.assign(nv, 0.0);
    in.a[0] = 1.0;
    for (std::size_t j = 0; j < d; ++j) in.a[j + 1] = -2.0 * p[j];
    in.a[d + 1] = -1.0;
    in.b = pp;
    in.id = static_cast<int>(2 * i + 1);
    rows.push_back(std::move(out));
    rows.push_back(std::move(in));
  }
  Vector box(nv, kAnnulusCenterBox);
  box[0] = kAnnulusOffsetBox;
  box[d + 1] = kAnnulusOffsetBox;
  lp::LexLp<double> solver(nv, box);
  const auto res = solver.solve(std::move(rows), &rng);
  if (!res.feasible) throw NumericalFailure("min_annulus: LP reported infeasible");
  for (const double v : res.point) {
    if (!std::isfinite(v)) throw NumericalFailure("min_annulus: non-finite LP solution");
  }

  AnnulusCertificate cert;
  cert.width = std::max(0.0, -res.point[0]);
  cert.center.resize(d);
  for (std::size_t j = 0; j < d; ++j) cert.center[j] = -res.point[j + 1];
  cert.outer_offset = -res.point[d + 1];
  const double cc = dot(cert.center, cert.center);
  cert.r_outer = std::sqrt(std::max(0.0, cert.outer_offset + cc));
  cert.r_inner = std::sqrt(std::max(0.0, cert.outer_offset - cert.width + cc));
  for (const int id : res.support) {
    const auto idx = static_cast<std::size_t>(id) / 2;
    if (cert.support.empty() || cert.support.back() != idx) cert.support.push_back(idx);
  }
  cert.support.erase(std::unique(cert.support.begin(), cert.support.end()), cert.support.end());
  for (const auto& p : points) {
    if (outside_annulus(cert, p, 1e-7)) throw NumericalFailure("min_annulus: certificate does not contain its input");
  }
  return cert;
}

inline AnnulusCertificate min_annulus(const std::vector<Vector>& points) {
  Rng rng(0x616e6eULL);
  return min_annulus(points, rng);
}

}  // namespace lptest::geometry
