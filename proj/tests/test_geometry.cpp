// Copyright 2026 The lptest Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "support/test_support.hpp"

namespace lptest {
namespace {

using testing::random_points;

/// max_p f_p(c) - min_p f_p(c) with f_p(c) = |p|^2 - 2 p.c.
double annulus_width_at(const std::vector<Vector>& pts, const Vector& c) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& p : pts) {
    const double f = geometry::annulus_offset(p, c);
    lo = std::min(lo, f);
    hi = std::max(hi, f);
  }
  return hi - lo;
}

/// Compass descent in 256 directions from a starting center.
double compass_descent(const std::vector<Vector>& pts, Vector best, double step) {
  double best_w = annulus_width_at(pts, best);
  while (step > 1e-13) {
    bool moved = false;
    for (int k = 0; k < 256; ++k) {
      const double a = 2.0 * std::numbers::pi * k / 256.0;
      const Vector c{best[0] + step * std::cos(a), best[1] + step * std::sin(a)};
      const double w = annulus_width_at(pts, c);
      if (w < best_w) {
        best_w = w;
        best = c;
        moved = true;
      }
    }
    if (!moved) step *= 0.5;
  }
  return best_w;
}

/// Dense center grid; compass descent from every grid-local minimum.
double annulus_grid_oracle(const std::vector<Vector>& pts, double half_width) {
  const int steps = 200;
  const double h = 2.0 * half_width / steps;
  std::vector<double> w((steps + 1) * (steps + 1));
  const auto at = [&](int i, int j) -> double& { return w[static_cast<std::size_t>(i * (steps + 1) + j)]; };
  for (int i = 0; i <= steps; ++i)
    for (int j = 0; j <= steps; ++j) at(i, j) = annulus_width_at(pts, {-half_width + h * i, -half_width + h * j});
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= steps; ++i) {
    for (int j = 0; j <= steps; ++j) {
      bool local = true;
      for (int di = -1; di <= 1 && local; ++di)
        for (int dj = -1; dj <= 1 && local; ++dj) {
          const int a = i + di, b = j + dj;
          if (a < 0 || b < 0 || a > steps || b > steps) continue;
          local = at(a, b) >= at(i, j);
        }
      if (local) best = std::min(best, compass_descent(pts, {-half_width + h * i, -half_width + h * j}, h));
    }
  }
  return best;
}

TEST(Meb, SinglePoint) {
  const auto b = geometry::min_enclosing_ball({{3.0, -2.0}});
  EXPECT_EQ(b.radius, 0.0);
}

TEST(Meb, UnitSimplexCircumradius) {
  for (std::size_t j = 1; j <= 10; ++j) {
    const auto b = geometry::min_enclosing_ball(geometry::unit_simplex_vertices(j));
    const double expected = std::sqrt(static_cast<double>(j) / (2.0 * static_cast<double>(j + 1)));
    EXPECT_NEAR(b.radius, expected, 1e-9) << "j = " << j;
  }
}

TEST(Meb, CircumradiusValues) {
  EXPECT_NEAR(geometry::simplex_circumradius(1), 0.5, 1e-15);
  EXPECT_NEAR(geometry::simplex_circumradius(3), 0.6123724357, 1e-10);
  for (std::size_t j = 1; j < 200; ++j) {
    EXPECT_LT(geometry::simplex_circumradius(j), geometry::simplex_circumradius(j + 1));
    EXPECT_LT(geometry::simplex_circumradius(j), 1.0 / std::sqrt(2.0));
  }
}

TEST(Meb, MatchesBruteForce) {
  Rng rng(201);
  for (int rep = 0; rep < 100; ++rep) {
    const auto d = static_cast<std::size_t>(rng.uniform_int(1, 3));
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 12));
    const auto pts = random_points(n, d, rng);
    const auto b = geometry::min_enclosing_ball(pts);
    const auto ref = oracle::meb(pts);
    EXPECT_NEAR(b.radius, ref.radius, 1e-9) << "instance " << rep;
  }
}

TEST(Meb, CertificateIsValid) {
  Rng rng(202);
  for (int rep = 0; rep < 50; ++rep) {
    const auto pts = random_points(40, 3, rng);
    const auto b = geometry::min_enclosing_ball(pts);
    ASSERT_LE(b.support.size(), 4U);
    for (const auto& p : pts) EXPECT_LE(std::sqrt(squared_distance(p, b.center)), b.radius * (1 + 1e-9) + 1e-12);
    std::vector<Vector> support;
    for (const auto i : b.support) {
      support.push_back(pts[i]);
      EXPECT_NEAR(std::sqrt(squared_distance(pts[i], b.center)), b.radius, 1e-9);
    }
    // The center of a smallest enclosing ball lies in the hull of its support.
    EXPECT_LT(testing::hull_residual(support, b.center), 1e-9);
  }
}

TEST(Meb, ScalingAndTranslationEquivariance) {
  Rng rng(203);
  const auto pts = random_points(25, 2, rng);
  const auto b = geometry::min_enclosing_ball(pts);
  auto moved = pts;
  for (auto& p : moved) {
    p[0] = 3.0 * p[0] + 7.0;
    p[1] = 3.0 * p[1] - 2.0;
  }
  const auto m = geometry::min_enclosing_ball(moved);
  EXPECT_NEAR(m.radius, 3.0 * b.radius, 1e-9);
  EXPECT_NEAR(m.center[0], 3.0 * b.center[0] + 7.0, 1e-9);
}

TEST(Meb, SeedDoesNotChangeResult) {
  Rng rng(204);
  const auto pts = random_points(30, 3, rng);
  Rng a(1);
  Rng b(2);
  EXPECT_NEAR(geometry::min_enclosing_ball(pts, a).radius, geometry::min_enclosing_ball(pts, b).radius, 1e-12);
}

TEST(IntersectingBall, CommonPointGivesZeroRadius) {
  const std::vector<Ball> balls{{{0, 0}, 1.0}, {{1, 0}, 1.0}, {{0.5, 0.5}, 1.0}};
  const auto b = geometry::min_intersecting_ball(balls);
  EXPECT_EQ(b.radius, 0.0);
  EXPECT_LT(b.minimax, 0.0);
}

TEST(IntersectingBall, TwoPointBalls) {
  const auto b = geometry::min_intersecting_ball({{{0, 0}, 0.0}, {{2, 0}, 0.0}});
  EXPECT_NEAR(b.radius, 1.0, 1e-12);
  EXPECT_NEAR(b.center[0], 1.0, 1e-12);
  EXPECT_NEAR(b.center[1], 0.0, 1e-12);
}

TEST(IntersectingBall, PointBallsReduceToMeb) {
  Rng rng(205);
  for (int rep = 0; rep < 30; ++rep) {
    const auto d = static_cast<std::size_t>(rng.uniform_int(1, 3));
    const auto pts = random_points(15, d, rng);
    std::vector<Ball> balls;
    for (const auto& p : pts) balls.push_back(Ball{p, 0.0});
    EXPECT_NEAR(geometry::min_intersecting_ball(balls).radius, geometry::min_enclosing_ball(pts).radius, 1e-8);
  }
}

TEST(IntersectingBall, MatchesBruteForce) {
  Rng rng(206);
  for (int rep = 0; rep < 30; ++rep) {
    std::vector<Ball> balls;
    for (int i = 0; i < 8; ++i) balls.push_back(Ball{{rng.uniform(-1, 1), rng.uniform(-1, 1)}, rng.uniform(0, 0.4)});
    const auto b = geometry::min_intersecting_ball(balls);
    const auto ref = oracle::intersecting(balls);
    EXPECT_NEAR(b.minimax, ref.radius, 1e-8) << "instance " << rep;
    for (const auto& ball : balls)
      EXPECT_LE(std::sqrt(squared_distance(ball.center, b.center)) - ball.radius, b.minimax + 1e-8);
  }
}

TEST(Annulus, ConcyclicPointsHaveZeroWidth) {
  std::vector<Vector> pts;
  for (int i = 0; i < 7; ++i) {
    const double a = 0.9 * i;
    pts.push_back({2.0 + 1.5 * std::cos(a), -1.0 + 1.5 * std::sin(a)});
  }
  const auto c = geometry::min_annulus(pts);
  EXPECT_NEAR(c.width, 0.0, 1e-9);
  EXPECT_NEAR(c.r_inner, c.r_outer, 1e-6);
  EXPECT_NEAR(c.r_outer, 1.5, 1e-6);
}

TEST(Annulus, ThreePointsMatchGridOracle) {
  const std::vector<Vector> pts{{1, 0}, {-1, 0}, {0, 2}};
  const auto c = geometry::min_annulus(pts);
  EXPECT_NEAR(c.width, annulus_grid_oracle(pts, 4.0), 1e-6);
  EXPECT_NEAR(c.width, oracle::annulus(pts).width, 1e-9);
}

TEST(Annulus, RandomSetsMatchGridOracle) {
  Rng rng(207);
  for (int rep = 0; rep < 10; ++rep) {
    const auto pts = random_points(7, 2, rng);
    const auto c = geometry::min_annulus(pts);
    EXPECT_NEAR(c.width, annulus_grid_oracle(pts, 4.0), 1e-6) << "instance " << rep;
    EXPECT_NEAR(c.width, oracle::annulus(pts).width, 1e-9);
    for (const auto& p : pts) EXPECT_FALSE(geometry::outside_annulus(c, p, 1e-7));
  }
}

TEST(Annulus, CollinearPointsApproximateSlab) {
  const std::vector<Vector> pts{{0, 0}, {1, 0}, {3, 0}, {4, 0}};
  const auto c = geometry::min_annulus(pts);
  EXPECT_NEAR(c.width, annulus_grid_oracle(pts, 5.0), 1e-6);
  for (const auto& p : pts) EXPECT_FALSE(geometry::outside_annulus(c, p, 1e-7));
}

}  // namespace
}  // namespace lptest
