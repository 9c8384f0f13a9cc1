// Copyright 2026 The lptest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "lptest/common.hpp"
#include "lptest/core/constraint_set.hpp"
#include "lptest/random.hpp"

namespace lptest::geometry {

struct IntersectingBallCertificate {
  Vector center;
  /// Radius of the smallest ball meeting every body: max(minimax, 0).
  double radius = 0.0;
  /// min over x of max_i (|x - c_i| - rho_i). Negative when the bodies share
  /// interior points; this signed value is the LP-type objective.
  double minimax = 0.0;
  IndexList support;
};

namespace detail {

struct TightCandidate {
  Vector center;
  double value;
};

/// Points x in the affine hull of the centers of `subset` with
/// |x - c_i| - rho_i equal to a common value t for every member. Linear in
/// (x, t) after differencing the squared equations, leaving one quadratic.
inline std::vector<TightCandidate> tight_candidates(const std::vector<Ball>& balls, const IndexList& subset) {
  std::vector<TightCandidate> out;
  const auto& b0 = balls[subset[0]];
  const auto d = static_cast<Eigen::Index>(b0.center.size());
  const Eigen::Map<const Eigen::VectorXd> c0(b0.center.data(), d);
  const double rho0 = b0.radius;
  if (subset.size() == 1) {
    out.push_back({b0.center, -rho0});
    return out;
  }
  const auto m = static_cast<Eigen::Index>(subset.size() - 1);
  Eigen::MatrixXd v(d, m);
  Eigen::VectorXd alpha(m), beta(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const auto& bj = balls[subset[static_cast<std::size_t>(j) + 1]];
    v.col(j) = Eigen::Map<const Eigen::VectorXd>(bj.center.data(), d) - c0;
    alpha[j] = 0.5 * (v.col(j).squaredNorm() - (bj.radius * bj.radius - rho0 * rho0));
    beta[j] = -(bj.radius - rho0);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(v);
  qr.setThreshold(1e-12);
  if (qr.rank() < m) return out;
  const Eigen::MatrixXd gram = v.transpose() * v;
  const auto ldlt = gram.ldlt();
  // x(t) = c0 + u + t q
  const Eigen::VectorXd u = v * ldlt.solve(alpha);
  const Eigen::VectorXd q = v * ldlt.solve(beta);
  // |u + t q|^2 = (t + rho0)^2
  const double qa = q.squaredNorm() - 1.0;
  const double qb = 2.0 * (u.dot(q) - rho0);
  const double qc = u.squaredNorm() - rho0 * rho0;
  std::vector<double> roots;
  if (std::abs(qa) < 1e-14) {
    if (std::abs(qb) > 1e-14) roots.push_back(-qc / qb);
  } else {
    double disc = qb * qb - 4.0 * qa * qc;
    if (disc < 0.0 && disc > -1e-12 * std::max(1.0, qb * qb)) disc = 0.0;
    if (disc >= 0.0) {
      const double s = std::sqrt(disc);
      // Cancellation-free pair of roots.
      const double k = -0.5 * (qb + (qb >= 0.0 ? s : -s));
      if (k != 0.0) {
        roots.push_back(k / qa);
        roots.push_back(qc / k);
      } else {
        roots.push_back(0.0);
      }
    }
  }
  for (const double t : roots) {
    bool ok = true;
    for (const auto i : subset) {
      if (t + balls[i].radius < -1e-9 * std::max(1.0, std::abs(t))) ok = false;
    }
    if (!ok) continue;
    const Eigen::VectorXd x = c0 + u + t * q;
    out.push_back({Vector(x.data(), x.data() + d), t});
  }
  return out;
}

inline double gap(const Ball& b, const Vector& x) { return std::sqrt(squared_distance(b.center, x)) - b.radius; }

inline bool covers(const std::vector<Ball>& balls, const IndexList& members, const Vector& x, double t) {
  for (const auto i : members) {
    if (gap(balls[i], x) > t + kTolerance * std::max(1.0, std::abs(t))) return false;
  }
  return true;
}

struct SmallSolution {
  Vector center;
  double value = std::numeric_limits<double>::infinity();
  IndexList support;
};

/// Optimum over `members` by enumerating every tight subset of size at most
/// max_support and keeping the best candidate feasible for all members.
inline std::optional<SmallSolution> enumerate_optimum(const std::vector<Ball>& balls, const IndexList& members,
                                                      std::size_t max_support) {
  std::optional<SmallSolution> best;
  const std::size_t m = members.size();
  if (m >= 8 * sizeof(unsigned long long)) throw TooLarge("intersecting ball: too many members to enumerate");
  IndexList subset;
  // Subsets by increasing size so that ties favor smaller supports.
  for (std::size_t size = 1; size <= std::min(m, max_support); ++size) {
    std::vector<bool> mask(m, false);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(size), true);
    do {
      subset.clear();
      for (std::size_t i = 0; i < m; ++i)
        if (mask[i]) subset.push_back(members[i]);
      for (auto& cand : tight_candidates(balls, subset)) {
        if (best && cand.value >= best->value - 1e-12 * std::max(1.0, std::abs(best->value))) continue;
        if (!covers(balls, members, cand.center, cand.value)) continue;
        best = SmallSolution{std::move(cand.center), cand.value, subset};
      }
    } while (std::prev_permutation(mask.begin(), mask.end()));
  }
  return best;
}

}  // namespace detail

/// Smallest ball meeting every input ball. Iterates: solve exactly on the
/// current basis plus the most violated body, until nothing is violated.
inline IntersectingBallCertificate min_intersecting_ball(const std::vector<Ball>& balls, Rng& rng) {
  if (balls.empty()) throw std::invalid_argument("min_intersecting_ball: empty input");
  const auto d = balls.front().center.size();
  for (const auto& b : balls) {
    if (b.center.size() != d) throw std::invalid_argument("min_intersecting_ball: inconsistent dimensions");
    if (!(b.radius >= 0.0)) throw std::invalid_argument("min_intersecting_ball: negative radius");
  }
  IndexList basis{static_cast<std::size_t>(rng.uniform_index(balls.size()))};
  auto current = detail::enumerate_optimum(balls, basis, d + 1);
  const std::size_t budget = 50 * balls.size() + 1000;
  for (std::size_t iter = 0;; ++iter) {
    if (!current) throw NumericalFailure("min_intersecting_ball: basis primitive found no feasible candidate");
    if (iter > budget) throw NumericalFailure("min_intersecting_ball: iteration budget exhausted");
    double worst = kTolerance * std::max(1.0, std::abs(current->value));
    std::optional<std::size_t> entering;
    for (std::size_t i = 0; i < balls.size(); ++i) {
      const double excess = detail::gap(balls[i], current->center) - current->value;
      if (excess > worst) {
        worst = excess;
        entering = i;
      }
    }
    if (!entering) break;
    IndexList members = current->support;
    members.push_back(*entering);
    auto next = detail::enumerate_optimum(balls, members, d + 1);
    if (!next || next->value <= current->value) {
      throw NumericalFailure("min_intersecting_ball: no progress on basis update");
    }
    current = std::move(next);
  }
  IntersectingBallCertificate out;
  out.center = current->center;
  out.minimax = current->value;
  out.radius = std::max(0.0, current->value);
  out.support = current->support;
  std::sort(out.support.begin(), out.support.end());
  return out;
}

inline IntersectingBallCertificate min_intersecting_ball(const std::vector<Ball>& balls) {
  Rng rng(0x696e74ULL);
  return min_intersecting_ball(balls, rng);
}

}  // namespace lptest::geometry
