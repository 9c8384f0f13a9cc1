// Copyright 2026 The lptest Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "support/test_support.hpp"

namespace lptest {
namespace {

using testing::point_set;
using testing::random_points;

ProblemInstance meb_instance(const std::vector<Vector>& pts) { return ProblemInstance(point_set(pts), ProblemKind::MEB); }

TEST(Phi, TwoPointsGiveMidpointBall) {
  const auto inst = meb_instance({{0, 0}, {2, 0}});
  const auto v = phi(inst, SubsetView::all(inst.constraints()));
  ASSERT_TRUE(v.is_finite());
  EXPECT_NEAR(v.value, 1.0, 1e-12);
  const auto& ball = std::get<geometry::BallCertificate>(v.solution.certificate);
  EXPECT_NEAR(ball.center[0], 1.0, 1e-12);
  EXPECT_NEAR(ball.center[1], 0.0, 1e-12);
}

TEST(Phi, EmptySubsetIsNegativeInfinity) {
  const auto inst = meb_instance({{0, 0}, {2, 0}});
  const auto v = phi(inst, SubsetView(inst.constraints(), {}));
  EXPECT_EQ(v.tag, PhiValue::Tag::NegInf);
}

TEST(Phi, TriangleMatchesBruteForce) {
  const auto inst = meb_instance({{0, 0}, {4, 0}, {2, 3}});
  const auto all = SubsetView::all(inst.constraints());
  const auto v = phi(inst, all);
  const auto b = bruteforce_phi(inst, all);
  EXPECT_NEAR(v.value, b.value, 1e-9);
  // Acute triangle: circumradius abc / 4A with sides 4, sqrt(13), sqrt(13) and area 6.
  EXPECT_NEAR(v.value, 13.0 / 6.0, 1e-9);
  EXPECT_LE(v.solution.basis.size(), inst.delta());
}

TEST(Phi, InteriorPointIsNotSupport) {
  const auto inst = meb_instance({{0, 0}, {4, 0}, {2, 3}, {1, 0}});
  const auto v = phi(inst, SubsetView::all(inst.constraints()));
  EXPECT_NEAR(v.value, 13.0 / 6.0, 1e-9);
  EXPECT_EQ(std::count(v.solution.basis.begin(), v.solution.basis.end(), 3U), 0);
}

TEST(Violators, InteriorAndExteriorPoints) {
  const auto inst = meb_instance({{0, 0}, {2, 0}, {1, 0}, {1, 5}});
  const auto v = violators(inst, SubsetView(inst.constraints(), {0, 1}));
  EXPECT_EQ(v, (IndexList{3}));
}

TEST(Violators, MatchDefinitionOnRandomInstances) {
  Rng rng(11);
  for (int rep = 0; rep < 10; ++rep) {
    const auto inst = meb_instance(random_points(8, 2, rng));
    const auto& cs = inst.constraints();
    auto r = sample_without_replacement(8, 3, rng);
    const SubsetView sub(cs, r);
    const auto base = phi(inst, sub);
    IndexList expected;
    for (std::size_t s = 0; s < 8; ++s) {
      if (sub.contains(s)) continue;
      if (!same_value(phi(inst, sub.with(s)), base)) expected.push_back(s);
    }
    EXPECT_EQ(violators(inst, sub), expected);
  }
}

TEST(Extreme, InteriorPointIsNotExtreme) {
  const auto inst = meb_instance({{0, 0}, {2, 0}, {1, 0}});
  EXPECT_EQ(extreme_elements(inst, SubsetView::all(inst.constraints())), (IndexList{0, 1}));
}

TEST(Extreme, SingletonIsExtreme) {
  const auto inst = meb_instance({{3, 1}});
  EXPECT_EQ(extreme_elements(inst, SubsetView::all(inst.constraints())), (IndexList{0}));
}

TEST(Extreme, MatchDefinitionOnRandomInstances) {
  Rng rng(12);
  for (int rep = 0; rep < 10; ++rep) {
    const auto inst = meb_instance(random_points(8, 2, rng));
    const auto sub = SubsetView::all(inst.constraints());
    const auto base = phi(inst, sub);
    IndexList expected;
    for (std::size_t s = 0; s < 8; ++s) {
      if (!same_value(phi(inst, sub.without(s)), base)) expected.push_back(s);
    }
    EXPECT_EQ(extreme_elements(inst, sub), expected);
  }
}

TEST(SamplingLemma, RZeroCountsEverySingleton) {
  Rng rng(13);
  const auto inst = meb_instance(random_points(6, 2, rng));
  const auto rep = sampling_lemma_check(inst, 0);
  EXPECT_TRUE(rep.equal);
  EXPECT_EQ(rep.v_r, Rational(6));
  EXPECT_EQ(rep.x_r1, Rational(1));
}

TEST(SamplingLemma, ExactOnRandomMeb) {
  Rng rng(14);
  const auto inst = meb_instance(random_points(6, 2, rng));
  const auto rep = sampling_lemma_check(inst, 2);
  EXPECT_TRUE(rep.equal) << to_string(rep.lhs) << " vs " << to_string(rep.rhs);
  EXPECT_TRUE(rep.within_bound);
}

TEST(SamplingLemma, ExactOnRandomLinearFeasibility) {
  Rng rng(15);
  const auto rows = testing::random_halfspaces(6, 2, rng, -1.0, 1.0);
  const ProblemInstance inst(testing::halfspace_set(rows), ProblemKind::LinearFeasibility);
  const auto rep = sampling_lemma_check(inst, 3);
  EXPECT_TRUE(rep.equal);
  EXPECT_TRUE(rep.within_bound);
}

TEST(SamplingLemma, GuardRejectsLargeEnumerations) {
  Rng rng(16);
  const auto inst = meb_instance(random_points(30, 2, rng));
  EXPECT_THROW(sampling_lemma_check(inst, 15), TooLarge);
}

TEST(Axioms, MebPassesExhaustively) {
  Rng rng(17);
  const auto inst = meb_instance(random_points(6, 2, rng));
  const auto rep = check_lp_type_axioms(inst, 6);
  EXPECT_TRUE(rep.passed()) << rep.first_violation;
  EXPECT_EQ(rep.subsets_evaluated, 64U);
}

TEST(Axioms, AnnulusPassesExhaustively) {
  Rng rng(18);
  const ProblemInstance inst(point_set(random_points(6, 2, rng)), ProblemKind::Annulus);
  const auto rep = check_lp_type_axioms(inst, 6);
  EXPECT_TRUE(rep.passed()) << rep.first_violation;
}

TEST(Axioms, ParityOfDistinctPointsIsRejected) {
  // Items 0 and 1 are copies of one point.
  const auto distinct = [](const IndexList& idx) {
    std::size_t count = 0;
    bool copy_seen = false;
    for (const auto i : idx) {
      if (i <= 1) {
        if (!copy_seen) ++count;
        copy_seen = true;
      } else {
        ++count;
      }
    }
    return count;
  };
  const auto rep = check_axioms(5, 5, [&](const IndexList& idx) {
    return PhiValue::finite(static_cast<double>(distinct(idx) % 2));
  });
  EXPECT_FALSE(rep.passed());
  EXPECT_FALSE(rep.monotonicity);
  EXPECT_FALSE(rep.first_violation.empty());
}

TEST(Axioms, CardinalityThresholdIsNotLocal) {
  // Monotone, but phi({}) = phi({0}) while only {0} jumps when 1 is added.
  const auto rep = check_axioms(4, 4, [](const IndexList& idx) {
    return PhiValue::finite(idx.size() >= 2 ? 1.0 : 0.0);
  });
  EXPECT_TRUE(rep.monotonicity);
  EXPECT_FALSE(rep.locality);
  ASSERT_TRUE(rep.witness_x.has_value());
}

TEST(BruteForce, DiametralCircle) {
  const auto inst = meb_instance({{0, 0}, {2, 0}, {1, 1}});
  const auto v = bruteforce_phi(inst, SubsetView::all(inst.constraints()));
  EXPECT_NEAR(v.value, 1.0, 1e-12);
  const auto& ball = std::get<geometry::BallCertificate>(v.solution.certificate);
  EXPECT_NEAR(ball.center[0], 1.0, 1e-12);
  EXPECT_NEAR(ball.center[1], 0.0, 1e-12);
}

TEST(BruteForce, IntervalEndpoint) {
  const ProblemInstance inst(testing::halfspace_set({HalfSpace{{1.0}, 0.0, Sense::GreaterEqual},
                                                     HalfSpace{{1.0}, 1.0, Sense::LessEqual}}),
                             ProblemKind::LinearFeasibility);
  const auto all = SubsetView::all(inst.constraints());
  // phi of the linear kinds is -x_1 so that the optimum is a minimum.
  EXPECT_NEAR(bruteforce_phi(inst, all).value, -1.0, 1e-12);
  EXPECT_NEAR(phi(inst, all).value, -1.0, 1e-12);
}

TEST(BruteForce, AgreesWithSolverInThreeDimensions) {
  Rng rng(19);
  const auto inst = meb_instance(random_points(10, 3, rng));
  const auto all = SubsetView::all(inst.constraints());
  EXPECT_NEAR(bruteforce_phi(inst, all).value, phi(inst, all).value, 1e-9);
}

TEST(BruteForce, GuardRejectsLargeSubsets) {
  Rng rng(20);
  const auto inst = meb_instance(random_points(13, 2, rng));
  EXPECT_THROW(bruteforce_phi(inst, SubsetView::all(inst.constraints())), TooLarge);
}

TEST(Instance, MultiplicitiesExpandIndexSpace) {
  const ConstraintSet cs({Point{{0.0}}, Point{{1.0}}}, {3, 2}, 1);
  EXPECT_EQ(cs.size(), 5U);
  EXPECT_EQ(cs.item_of(2), 0U);
  EXPECT_EQ(cs.item_of(3), 1U);
  const ProblemInstance inst(cs, ProblemKind::MEB);
  // Copies of one point never change phi.
  const auto v = phi(inst, SubsetView(cs, {0, 1, 2}));
  EXPECT_NEAR(v.value, 0.0, 1e-12);
  EXPECT_TRUE(violators(inst, SubsetView(cs, {0})).size() == 2);
}

TEST(Instance, DeltaMismatchIsRejected) {
  EXPECT_THROW(ProblemInstance(point_set({{0, 0}}), ProblemKind::MEB, std::nullopt, 5), BadSpec);
  EXPECT_EQ(ProblemInstance(point_set({{0, 0}}), ProblemKind::MEB).delta(), 3U);
  EXPECT_EQ(ProblemInstance(point_set({{0, 0}}), ProblemKind::Annulus).delta(), 4U);
}

TEST(Instance, WrongConstraintTypeIsRejected) {
  EXPECT_THROW(ProblemInstance(point_set({{0, 0}}), ProblemKind::LinearFeasibility), BadSpec);
}

}  // namespace
}  // namespace lptest
