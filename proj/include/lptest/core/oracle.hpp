// Copyright 2026 The lptest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "lptest/common.hpp"
#include "lptest/core/instance.hpp"
#include "lptest/core/phi.hpp"
#include "lptest/geometry/intersecting_ball.hpp"
#include "lptest/lp/linear_program.hpp"

namespace lptest {

/// Largest number of distinct items the exhaustive oracles accept.
inline constexpr std::size_t kOracleGuard = 12;

namespace oracle {

/// Calls f(subset) for every subset of {0..m-1} with size in [lo, hi].
template <class F>
void for_each_subset(std::size_t m, std::size_t lo, std::size_t hi, F&& f) {
  IndexList s;
  for (std::size_t size = lo; size <= std::min(hi, m); ++size) {
    s.resize(size);
    for (std::size_t i = 0; i < size; ++i) s[i] = i;
    while (true) {
      f(static_cast<const IndexList&>(s));
      std::size_t i = size;
      while (i > 0 && s[i - 1] == m - size + i - 1) --i;
      if (i == 0) break;
      ++s[i - 1];
      for (std::size_t j = i; j < size; ++j) s[j] = s[j - 1] + 1;
    }
  }
}

struct BallCandidate {
  Vector center;
  double radius = std::numeric_limits<double>::infinity();
  IndexList support;
};

/// Smallest enclosing ball as the best of all circumscribed balls of at
/// most d+1 points. The center is written as c = sum mu_j q_j with
/// sum mu_j = 1, and |q_i - c|^2 = R^2 becomes linear in (mu, |c|^2 - R^2).
inline BallCandidate meb(const std::vector<Vector>& pts) {
  const std::size_t d = pts.front().size();
  BallCandidate best;
  for_each_subset(pts.size(), 1, d + 1, [&](const IndexList& s) {
    const auto m = static_cast<Eigen::Index>(s.size());
    Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(m + 1, m + 1);
    Eigen::VectorXd rhs(m + 1);
    for (Eigen::Index i = 0; i < m; ++i) {
      const auto& qi = pts[s[static_cast<std::size_t>(i)]];
      for (Eigen::Index j = 0; j < m; ++j) sys(i, j) = 2.0 * dot(qi, pts[s[static_cast<std::size_t>(j)]]);
      sys(i, m) = -1.0;
      rhs[i] = dot(qi, qi);
      sys(m, i) = 1.0;
    }
    rhs[m] = 1.0;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sys);
    lu.setThreshold(1e-12);
    if (!lu.isInvertible()) return;
    const Eigen::VectorXd mu = lu.solve(rhs);
    Vector c(d, 0.0);
    for (Eigen::Index j = 0; j < m; ++j)
      for (std::size_t t = 0; t < d; ++t) c[t] += mu[j] * pts[s[static_cast<std::size_t>(j)]][t];
    const double r = std::sqrt(squared_distance(c, pts[s[0]]));
    if (r >= best.radius) return;
    for (const auto& p : pts) {
      if (std::sqrt(squared_distance(p, c)) > r + 1e-10 * std::max(1.0, r)) return;
    }
    best = BallCandidate{c, r, s};
  });
  return best;
}

/// Smallest signed minimax distance to a family of balls, over all tight
/// subsets of at most d+1 balls.
inline BallCandidate intersecting(const std::vector<lptest::Ball>& balls) {
  const std::size_t d = balls.front().center.size();
  BallCandidate best;
  IndexList all(balls.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  for_each_subset(balls.size(), 1, d + 1, [&](const IndexList& s) {
    for (auto& cand : geometry::detail::tight_candidates(balls, s)) {
      if (cand.value >= best.radius) continue;
      if (!geometry::detail::covers(balls, all, cand.center, cand.value)) continue;
      best = BallCandidate{cand.center, cand.value, s};
    }
  });
  return best;
}

struct AnnulusValue {
  Vector center;
  double width = std::numeric_limits<double>::infinity();
};

/// min over c of max_p f_p(c) - min_p f_p(c) with f_p(c) = |p|^2 - 2 p.c.
/// The function is convex and piecewise linear on the arrangement of the
/// bisector hyperplanes f_p = f_q, so its minimum is attained at the
/// least-norm point of some intersection of at most d bisectors.
inline AnnulusValue annulus(const std::vector<Vector>& pts) {
  const std::size_t d = pts.front().size();
  std::vector<std::pair<Vector, double>> planes;  // (normal, offset)
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      Vector nrm(d);
      for (std::size_t t = 0; t < d; ++t) nrm[t] = 2.0 * (pts[j][t] - pts[i][t]);
      if (dot(nrm, nrm) == 0.0) continue;
      planes.emplace_back(std::move(nrm), dot(pts[j], pts[j]) - dot(pts[i], pts[i]));
    }
  }
  const auto width_at = [&](const Vector& c) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& p : pts) {
      const double f = dot(p, p) - 2.0 * dot(p, c);
      lo = std::min(lo, f);
      hi = std::max(hi, f);
    }
    return hi - lo;
  };
  AnnulusValue best;
  const auto consider = [&](const Vector& c) {
    const double w = width_at(c);
    if (w < best.width) best = AnnulusValue{c, w};
  };
  consider(Vector(d, 0.0));
  for_each_subset(planes.size(), 1, d, [&](const IndexList& s) {
    const auto m = static_cast<Eigen::Index>(s.size());
    Eigen::MatrixXd a(m, static_cast<Eigen::Index>(d));
    Eigen::VectorXd b(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const auto& [nrm, off] = planes[s[static_cast<std::size_t>(i)]];
      for (std::size_t t = 0; t < d; ++t) a(i, static_cast<Eigen::Index>(t)) = nrm[t];
      b[i] = off;
    }
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
    cod.setThreshold(1e-12);
    if (cod.rank() < m) return;
    const Eigen::VectorXd c = cod.solve(b);
    if (!c.allFinite()) return;
    consider(Vector(c.data(), c.data() + c.size()));
  });
  return best;
}

/// Outcome of exhaustive vertex enumeration for max x_1 (lexicographic)
/// inside the box |x_i| <= box.
struct LpVertexResult {
  lp::LpStatus status = lp::LpStatus::Infeasible;
  Vector point;
};

inline LpVertexResult lp_vertex_enumeration(const std::vector<HalfSpace>& constraints, std::size_t d,
                                            double box = kLpBox) {
  // All rows as a.x <= b, box included.
  std::vector<Vector> a;
  Vector b;
  for (const auto& c : constraints) {
    const auto row = lp::normalized_row(c, 0);
    a.push_back(row.a);
    b.push_back(row.b);
  }
  for (std::size_t i = 0; i < d; ++i) {
    Vector up(d, 0.0);
    up[i] = 1.0;
    a.push_back(up);
    b.push_back(box);
    up[i] = -1.0;
    a.push_back(up);
    b.push_back(box);
  }
  LpVertexResult best;
  bool found = false;
  const auto better = [&](const Vector& x, const Vector& y) {
    for (std::size_t i = 0; i < d; ++i) {
      if (std::abs(x[i] - y[i]) > 1e-12 * std::max(1.0, std::abs(y[i]))) return x[i] > y[i];
    }
    return false;
  };
  for_each_subset(a.size(), d, d, [&](const IndexList& s) {
    const auto dd = static_cast<Eigen::Index>(d);
    Eigen::MatrixXd m(dd, dd);
    Eigen::VectorXd rhs(dd);
    for (Eigen::Index i = 0; i < dd; ++i) {
      for (Eigen::Index j = 0; j < dd; ++j) m(i, j) = a[s[static_cast<std::size_t>(i)]][static_cast<std::size_t>(j)];
      rhs[i] = b[s[static_cast<std::size_t>(i)]];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    lu.setThreshold(1e-12);
    if (!lu.isInvertible()) return;
    const Eigen::VectorXd sol = lu.solve(rhs);
    const Vector x(sol.data(), sol.data() + dd);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (dot(a[r], x) > b[r] + 1e-9 * std::max(1.0, std::abs(b[r]))) return;
    }
    if (!found || better(x, best.point)) {
      best.point = x;
      found = true;
    }
  });
  if (!found) return {};
  best.status = best.point[0] >= box * (1.0 - 1e-12) ? lp::LpStatus::Unbounded : lp::LpStatus::Feasible;
  return best;
}

}  // namespace oracle

/// phi by exhaustive search over candidate bases: all circumscribed or
/// tight balls of at most d+1 items, all bisector-arrangement vertices for
/// the annulus, all vertices for the linear kinds. Independent of the main
/// solvers' incremental machinery; meant for tests.
inline PhiValue bruteforce_phi(const ProblemInstance& inst, const SubsetView& subset) {
  if (subset.empty()) return PhiValue::neg_inf();
  const auto distinct = subset.distinct_items();
  if (distinct.size() > kOracleGuard) {
    throw TooLarge("bruteforce_phi: " + std::to_string(distinct.size()) + " distinct items exceed the guard of " +
                   std::to_string(kOracleGuard));
  }
  const auto& cs = inst.constraints();
  const auto expanded = [&](const IndexList& local) {
    IndexList out;
    for (const auto i : local) out.push_back(distinct[i].second);
    return out;
  };
  switch (inst.kind()) {
    case ProblemKind::MEB: {
      std::vector<Vector> pts;
      for (const auto& [item, e] : distinct) pts.push_back(std::get<Point>(cs.item(item)).coords);
      const auto b = oracle::meb(pts);
      if (!std::isfinite(b.radius)) throw NumericalFailure("bruteforce_phi: no enclosing candidate");
      auto v = PhiValue::finite(b.radius);
      v.solution.certificate = geometry::BallCertificate{b.center, b.radius, expanded(b.support)};
      v.solution.basis = expanded(b.support);
      return v;
    }
    case ProblemKind::IntersectingBall: {
      std::vector<Ball> balls;
      for (const auto& [item, e] : distinct) balls.push_back(std::get<Ball>(cs.item(item)));
      const auto b = oracle::intersecting(balls);
      if (!std::isfinite(b.radius)) throw NumericalFailure("bruteforce_phi: no tight candidate");
      auto v = PhiValue::finite(b.radius);
      v.solution.certificate =
          geometry::IntersectingBallCertificate{b.center, std::max(0.0, b.radius), b.radius, expanded(b.support)};
      v.solution.basis = expanded(b.support);
      return v;
    }
    case ProblemKind::Annulus: {
      std::vector<Vector> pts;
      for (const auto& [item, e] : distinct) pts.push_back(std::get<Point>(cs.item(item)).coords);
      const auto a = oracle::annulus(pts);
      return PhiValue::finite(a.width);
    }
    case ProblemKind::LinearFeasibility:
    case ProblemKind::Separability: {
      std::vector<HalfSpace> rows;
      for (const auto& [item, e] : distinct) rows.push_back(linear_constraint_of(inst, cs.item(item)));
      const auto r = oracle::lp_vertex_enumeration(rows, lp_variables(inst));
      if (r.status == lp::LpStatus::Infeasible) return PhiValue::pos_inf();
      Vector tail;
      for (std::size_t i = 1; i < r.point.size(); ++i) tail.push_back(-r.point[i]);
      auto v = PhiValue::finite(-r.point[0], std::move(tail));
      v.solution.certificate = LpCertificate{true, r.point};
      return v;
    }
  }
  throw std::logic_error("bruteforce_phi: unhandled kind");
}

}  // namespace lptest
