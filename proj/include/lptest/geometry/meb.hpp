// Copyright 2026 The lptest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <list>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "lptest/common.hpp"
#include "lptest/random.hpp"

namespace lptest::geometry {

struct BallCertificate {
  Vector center;
  double radius = 0.0;
  /// Indices into the input list, at most d+1.
  IndexList support;
};

/// Circumradius of the regular simplex with j+1 vertices and unit edges.
inline double simplex_circumradius(std::size_t j) {
  if (j < 1) throw std::invalid_argument("simplex_circumradius: j must be >= 1");
  const double jd = static_cast<double>(j);
  return std::sqrt(jd / (2.0 * (jd + 1.0)));
}

/// Vertices e_i / sqrt(2), i = 1..j+1, of the unit-edge regular j-simplex
/// in R^{j+1}.
inline std::vector<Vector> unit_simplex_vertices(std::size_t j) {
  std::vector<Vector> out(j + 1, Vector(j + 1, 0.0));
  for (std::size_t i = 0; i <= j; ++i) out[i][i] = 1.0 / std::sqrt(2.0);
  return out;
}

namespace detail {

/// Move-to-front smallest enclosing ball. The ball is kept as the
/// circumsphere of the support stack with its center in the affine hull of
/// the stack; points that are affinely dependent on the stack are refused.
class MoveToFrontMeb {
 public:
  explicit MoveToFrontMeb(const std::vector<Vector>& points) : points_(points), dim_(points.front().size()) {
    center_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim_));
  }

  BallCertificate solve(Rng& rng) {
    std::vector<std::size_t> order(points_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(order.begin(), order.end());
    list_.assign(order.begin(), order.end());
    sqr_radius_ = -1.0;
    stack_.clear();
    mtf(list_.end());

    BallCertificate out;
    out.center.assign(center_.data(), center_.data() + center_.size());
    out.radius = std::sqrt(std::max(0.0, sqr_radius_));
    // Support points whose barycentric weight vanishes do not pin the ball.
    const auto weights = barycentric(support_);
    for (std::size_t i = 0; i < support_.size(); ++i) {
      if (weights[i] > -1e-9) out.support.push_back(support_[i]);
    }
    std::sort(out.support.begin(), out.support.end());
    for (const auto& p : points_) {
      if (std::sqrt(squared_distance(p, out.center)) > out.radius + 1e-7 * std::max(1.0, out.radius)) {
        throw NumericalFailure("min_enclosing_ball: result does not enclose its input");
      }
    }
    return out;
  }

 private:
  Eigen::Map<const Eigen::VectorXd> at(std::size_t i) const {
    return {points_[i].data(), static_cast<Eigen::Index>(dim_)};
  }

  bool outside(std::size_t i) const {
    if (sqr_radius_ < 0.0) return true;
    const double r = std::sqrt(sqr_radius_);
    const double dist = (at(i) - center_).norm();
    return dist > r + kTolerance * std::max(1.0, r);
  }

  void mtf(std::list<std::size_t>::iterator end) {
    if (stack_.size() == dim_ + 1) return;
    for (auto it = list_.begin(); it != end;) {
      const auto current = it++;
      if (!outside(*current)) continue;
      if (!push(*current)) continue;
      mtf(current);
      stack_.pop_back();
      list_.splice(list_.begin(), list_, current);
    }
  }

  // Circumcenter of the stack plus candidate, center in their affine hull.
  bool push(std::size_t idx) {
    stack_.push_back(idx);
    const auto m = static_cast<Eigen::Index>(stack_.size() - 1);
    if (m == 0) {
      center_ = at(idx);
      sqr_radius_ = 0.0;
      support_ = stack_;
      return true;
    }
    Eigen::MatrixXd v(static_cast<Eigen::Index>(dim_), m);
    const Eigen::VectorXd q0 = at(stack_[0]);
    for (Eigen::Index j = 0; j < m; ++j) v.col(j) = at(stack_[static_cast<std::size_t>(j) + 1]) - q0;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(v);
    qr.setThreshold(1e-12);
    if (qr.rank() < m) {
      stack_.pop_back();
      return false;
    }
    const Eigen::MatrixXd gram = v.transpose() * v;
    const Eigen::VectorXd rhs = 0.5 * gram.diagonal();
    const Eigen::VectorXd lambda = gram.ldlt().solve(rhs);
    if (!lambda.allFinite()) {
      stack_.pop_back();
      return false;
    }
    center_ = q0 + v * lambda;
    sqr_radius_ = (center_ - q0).squaredNorm();
    support_ = stack_;
    return true;
  }

  // Weights w with sum 1 and center = sum w_i p_i.
  std::vector<double> barycentric(const std::vector<std::size_t>& s) const {
    if (s.size() <= 1) return std::vector<double>(s.size(), 1.0);
    const auto m = static_cast<Eigen::Index>(s.size() - 1);
    Eigen::MatrixXd v(static_cast<Eigen::Index>(dim_), m);
    const Eigen::VectorXd q0 = at(s[0]);
    for (Eigen::Index j = 0; j < m; ++j) v.col(j) = at(s[static_cast<std::size_t>(j) + 1]) - q0;
    const Eigen::VectorXd lambda = v.colPivHouseholderQr().solve(center_ - q0);
    std::vector<double> w(s.size());
    w[0] = 1.0 - lambda.sum();
    for (Eigen::Index j = 0; j < m; ++j) w[static_cast<std::size_t>(j) + 1] = lambda[j];
    return w;
  }

  const std::vector<Vector>& points_;
  std::size_t dim_;
  std::list<std::size_t> list_;
  std::vector<std::size_t> stack_;
  std::vector<std::size_t> support_;
  Eigen::VectorXd center_;
  double sqr_radius_ = -1.0;
};

}  // namespace detail

/// Smallest enclosing ball by randomized move-to-front.
inline BallCertificate min_enclosing_ball(const std::vector<Vector>& points, Rng& rng) {
  if (points.empty()) throw std::invalid_argument("min_enclosing_ball: empty point set");
  const auto d = points.front().size();
  if (d < 1 || d > 16) throw std::invalid_argument("min_enclosing_ball: dimension must be in [1, 16]");
  for (const auto& p : points) {
    if (p.size() != d) throw std::invalid_argument("min_enclosing_ball: inconsistent dimensions");
  }
  detail::MoveToFrontMeb solver(points);
  return solver.solve(rng);
}

inline BallCertificate min_enclosing_ball(const std::vector<Vector>& points) {
  Rng rng(0x6d6562ULL);
  return min_enclosing_ball(points, rng);
}

}  // namespace lptest::geometry
