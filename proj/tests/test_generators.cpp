// Copyright 2026 The lptest Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "support/test_support.hpp"

namespace lptest {
namespace {

using generators::Family;
using generators::FamilySpec;
using separability::LabeledPointSet;

FamilySpec spec_of(Family f, std::size_t d, std::size_t n, double eps, double k = 1.0) {
  FamilySpec s;
  s.family = f;
  s.d = d;
  s.n = n;
  s.epsilon = eps;
  s.k = k;
  return s;
}

LabeledPointSet pick(const LabeledPointSet& all, const IndexList& idx) {
  LabeledPointSet out;
  for (const auto i : idx) {
    out.points.push_back(all.points[i]);
    out.labels.push_back(all.labels[i]);
    out.multiplicities.push_back(all.multiplicities[i]);
  }
  return out;
}

/// Fewest label flips that make the set affinely separable.
std::size_t min_relabels(const LabeledPointSet& pts) {
  const std::size_t m = pts.points.size();
  std::size_t best = m;
  for (std::uint32_t mask = 0; mask < (1U << m); ++mask) {
    const auto flips = static_cast<std::size_t>(std::popcount(mask));
    if (flips >= best) continue;
    auto s = pts;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (1U << i)) s.labels[i] = -s.labels[i];
    if (generators::exactly_separable(s, 1)) best = flips;
  }
  return best;
}

TEST(MomentCurve, OneDimensionalAlternation) {
  const auto pts = generators::moment_curve_points(1);
  ASSERT_EQ(pts.points.size(), 4U);
  EXPECT_EQ(pts.labels, (std::vector<int>{-1, 1, -1, 1}));
  for (std::size_t i = 1; i < 4; ++i) EXPECT_LT(pts.points[i - 1][0], pts.points[i][0]);
  EXPECT_GE(min_relabels(pts), 1U);
}

TEST(MomentCurve, RelabelsAndSmallSubsets) {
  for (std::size_t d = 1; d <= 2; ++d) {
    const auto pts = generators::moment_curve_points(d);
    ASSERT_EQ(pts.points.size(), 3 * d + 1);
    for (std::size_t i = 0; i < pts.points.size(); ++i) {
      const double t = pts.points[i][0];
      for (std::size_t j = 1; j < d; ++j) EXPECT_NEAR(pts.points[i][j], std::pow(t, static_cast<double>(j + 1)), 1e-15);
    }
    EXPECT_GE(min_relabels(pts), d);
    std::size_t cases = 0;
    oracle::for_each_subset(pts.points.size(), d + 1, d + 1, [&](const IndexList& s) {
      for (std::uint32_t lab = 0; lab < (1U << (d + 1)); ++lab) {
        auto sub = pick(pts, s);
        for (std::size_t i = 0; i <= d; ++i) sub.labels[i] = (lab & (1U << i)) ? 1 : -1;
        EXPECT_TRUE(generators::exactly_separable(sub, 1));
        ++cases;
      }
    });
    EXPECT_EQ(cases, binomial(3 * d + 1, d + 1) << (d + 1));
  }
}

TEST(SeparabilityFamily, NearSizesAndSeparable) {
  const auto pts = generators::build_separability_family(spec_of(Family::MomentCurveNear, 2, 700, 0.2));
  EXPECT_EQ(pts.multiplicities, (std::vector<std::size_t>{70, 70, 560}));
  EXPECT_TRUE(generators::exactly_separable(pts, 1));
}

TEST(SeparabilityFamily, FarFamilyCertifiedByWeightedMaxFs) {
  const auto spec = spec_of(Family::MomentCurveFar, 2, 700, 0.3);
  const auto pts = generators::build_separability_family(spec);
  ASSERT_EQ(pts.points.size(), 7U);
  const separability::FeatureMap fm(2, 1);
  std::vector<HalfSpace> rows;
  lp::MaxFeasibleOptions opt;
  opt.exact = true;
  for (std::size_t i = 0; i < 7; ++i) {
    rows.push_back(separability::separation_constraint(fm.apply(pts.points[i]), pts.labels[i]));
    opt.weights.push_back(static_cast<double>(pts.multiplicities[i]));
  }
  const auto best = lp::max_feasible_subset(rows, 3, opt);
  const auto removal = static_cast<std::size_t>(700.0 - best.weight + 0.5);
  EXPECT_GE(static_cast<double>(removal), 0.3 * 700.0 / 3.0 - 1e-9);
  const auto g = generators::generate(spec);
  ASSERT_TRUE(g.certification.min_removal.has_value());
  EXPECT_EQ(*g.certification.min_removal, removal);
  EXPECT_NEAR(*g.certification.far_fraction, static_cast<double>(removal) / 700.0, 1e-15);
}

TEST(SeparabilityFamily, NearAndFarAgreeOnSmallSubsets) {
  const auto near = generators::build_separability_family(spec_of(Family::MomentCurveNear, 2, 700, 0.2));
  const auto far = generators::build_separability_family(spec_of(Family::MomentCurveFar, 2, 700, 0.3));
  // Every distinct point of the near family occurs in the far family with its label.
  for (std::size_t i = 0; i < near.points.size(); ++i) {
    bool found = false;
    for (std::size_t j = 0; j < far.points.size(); ++j)
      found = found || (far.points[j] == near.points[i] && far.labels[j] == near.labels[i]);
    EXPECT_TRUE(found);
  }
  // Any d+1 distinct far points look like the near family: separable.
  oracle::for_each_subset(far.points.size(), 3, 3, [&](const IndexList& s) {
    EXPECT_TRUE(generators::exactly_separable(pick(far, s), 1));
  });
}

TEST(MebFamily, NearRadiusEqualsK) {
  const auto fam = generators::build_meb_family(spec_of(Family::SimplexNear, 2, 1000, 0.2, 1.0));
  ASSERT_EQ(fam.points.size(), 3U);
  EXPECT_NEAR(geometry::min_enclosing_ball(fam.points).radius, 1.0, 1e-9);
  EXPECT_NEAR(oracle::meb(fam.points).radius, 1.0, 1e-9);
}

TEST(MebFamily, FarRadiusExceedsK) {
  const auto fam = generators::build_meb_family(spec_of(Family::SimplexFar, 2, 1000, 0.3, 1.0));
  ASSERT_EQ(fam.points.size(), 7U);
  const double expected = fam.ell * std::sqrt(6.0 / (2.0 * 7.0));
  const double r = geometry::min_enclosing_ball(fam.points).radius;
  EXPECT_NEAR(r, expected, 1e-9);
  EXPECT_GT(r, 1.0);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = i + 1; j < 7; ++j) EXPECT_NEAR(std::sqrt(squared_distance(fam.points[i], fam.points[j])), fam.ell, 1e-12);
}

TEST(MebFamily, FarCertificationByExhaustiveRemoval) {
  const auto spec = spec_of(Family::SimplexFar, 1, 40, 0.5, 1.0);
  const auto fam = generators::build_meb_family(spec);
  const std::size_t m = fam.points.size();
  std::size_t total = 0;
  for (const auto w : fam.multiplicities) total += w;
  EXPECT_EQ(total, 40U);
  std::size_t best_kept = 0;
  for (std::uint32_t mask = 1; mask < (1U << m); ++mask) {
    std::vector<Vector> kept;
    std::size_t weight = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask & (1U << i)) {
        kept.push_back(fam.points[i]);
        weight += fam.multiplicities[i];
      }
    }
    if (oracle::meb(kept).radius <= 1.0 + 1e-9) best_kept = std::max(best_kept, weight);
  }
  const std::size_t removal = total - best_kept;
  EXPECT_GE(static_cast<double>(removal), 0.5 * 40.0 / 3.0);
  const auto g = generators::generate(spec);
  EXPECT_EQ(*g.certification.min_removal, removal);
}

TEST(MebFamily, MultiplicityRounding) {
  EXPECT_EQ(generators::family_multiplicities(40, 0.5, 3), (std::vector<std::size_t>{6, 6, 6, 22}));
  EXPECT_THROW(generators::family_multiplicities(10, 0.1, 3), BadSpec);
  EXPECT_THROW(generators::family_multiplicities(6, 1.0, 3), BadSpec);
}

TEST(Discovery, ClosedFormAtDimensionOne) {
  EXPECT_NEAR(generators::group_discovery_expectation(1, 0.5), 5.0, 1e-12);
  const auto res = generators::empirical_group_discovery(spec_of(Family::SimplexFar, 1, 1000000, 0.5), 10000, 1);
  EXPECT_NEAR(res.mean_queries, 5.0, 0.5);
  EXPECT_EQ(res.curve.size(), 10000U);
}

TEST(Discovery, HalvingEpsilonDoublesMean) {
  const auto a = generators::empirical_group_discovery(spec_of(Family::SimplexFar, 2, 1000000, 0.5), 10000, 2);
  const auto b = generators::empirical_group_discovery(spec_of(Family::SimplexFar, 2, 1000000, 0.25), 10000, 3);
  const double ratio = b.mean_queries / a.mean_queries;
  EXPECT_GE(ratio, 1.8);
  EXPECT_LE(ratio, 2.2);
}

TEST(Discovery, DoublingDimensionGrowsMean) {
  const auto a = generators::empirical_group_discovery(spec_of(Family::MomentCurveFar, 2, 1000000, 0.5), 10000, 4);
  const auto b = generators::empirical_group_discovery(spec_of(Family::MomentCurveFar, 4, 1000000, 0.5), 10000, 5);
  const double ratio = b.mean_queries / a.mean_queries;
  EXPECT_GE(ratio, 1.5);
  EXPECT_LE(ratio, 3.0);
}

TEST(Discovery, NearFamilyIsRejected) {
  EXPECT_THROW(generators::empirical_group_discovery(spec_of(Family::SimplexNear, 2, 1000, 0.5), 10, 1), BadSpec);
}

TEST(RandomInstance, FeasibleMebFitsThreshold) {
  const auto g = generators::random_instance(ProblemKind::MEB, 3, 500, true, 0.1, 6, 2.0);
  const auto v = phi(g.instance, SubsetView::all(g.instance.constraints()));
  EXPECT_LE(v.value, 2.0);
}

TEST(RandomInstance, FarMebRemovalBound) {
  const auto g = generators::random_instance(ProblemKind::MEB, 2, 20, false, 0.3, 7);
  ASSERT_TRUE(g.certification.min_removal.has_value());
  const std::size_t far_count = 6;
  EXPECT_GE(*g.certification.min_removal + 3, far_count);
  // Dropping the planted points suffices.
  std::vector<Vector> inner;
  for (std::size_t i = 0; i + far_count < 20; ++i) inner.push_back(std::get<Point>(g.instance.constraints().item(i)).coords);
  EXPECT_LE(oracle::meb(inner).radius, 1.0);
  EXPECT_LE(*g.certification.min_removal, far_count);
}

TEST(RandomInstance, SeedDeterminism) {
  const auto a = generators::random_instance(ProblemKind::IntersectingBall, 3, 100, false, 0.1, 99);
  const auto b = generators::random_instance(ProblemKind::IntersectingBall, 3, 100, false, 0.1, 99);
  const auto c = generators::random_instance(ProblemKind::IntersectingBall, 3, 100, false, 0.1, 98);
  EXPECT_TRUE(a.instance.constraints() == b.instance.constraints());
  EXPECT_FALSE(a.instance.constraints() == c.instance.constraints());
}

}  // namespace
}  // namespace lptest
