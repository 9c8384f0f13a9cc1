// Copyright 2026 The lptest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "lptest/common.hpp"
#include "lptest/core/constraint_set.hpp"
#include "lptest/core/instance.hpp"
#include "lptest/geometry/annulus.hpp"
#include "lptest/geometry/intersecting_ball.hpp"
#include "lptest/geometry/meb.hpp"
#include "lptest/lp/linear_program.hpp"
#include "lptest/random.hpp"
#include "lptest/separability/feature_map.hpp"

namespace lptest {

/// Seed used by phi when the caller does not supply one.
inline constexpr std::uint64_t kPhiSeed = 0x7068692d73656564ULL;

/// Number of LP variables for the linear kinds.
inline std::size_t lp_variables(const ProblemInstance& inst) {
  if (inst.kind() == ProblemKind::Separability) return separability_variables(inst.dim(), inst.feature_degree());
  return inst.dim();
}

/// Largest basis of phi. The linear kinds send infeasible subsets to +inf,
/// and a minimal infeasible subsystem holds up to delta + 1 constraints.
inline std::size_t basis_bound(const ProblemInstance& inst) {
  return is_optimization_kind(inst.kind()) ? inst.delta() : inst.delta() + 1;
}

/// The half-space an item of a linear kind stands for. Separability items
/// are lifted by the instance's feature map before the reduction.
inline HalfSpace linear_constraint_of(const ProblemInstance& inst, const Constraint& c) {
  if (inst.kind() == ProblemKind::LinearFeasibility) return std::get<HalfSpace>(c);
  const auto& lp = std::get<LabeledPoint>(c);
  if (inst.feature_degree() == 0) return separability::separation_constraint(lp.coords, lp.label);
  const separability::FeatureMap fm(inst.dim(), inst.feature_degree());
  return separability::separation_constraint(fm.apply(lp.coords), lp.label);
}

inline std::vector<HalfSpace> linear_constraints(const ProblemInstance& inst) {
  std::vector<HalfSpace> out;
  out.reserve(inst.constraints().item_count());
  for (const auto& c : inst.constraints().items()) out.push_back(linear_constraint_of(inst, c));
  return out;
}

/// Objective of the subset: radius (MEB), signed minimax distance
/// (intersecting ball), squared-radius width (annulus), or -x_1 of the
/// lexicographic max-x_1 point (linear kinds; +inf when infeasible).
/// Multiplicity-invariant; phi of the empty set is -inf.
inline PhiValue phi(const ProblemInstance& inst, const SubsetView& subset, std::uint64_t seed = kPhiSeed) {
  if (subset.empty()) return PhiValue::neg_inf();
  const auto& cs = inst.constraints();
  const auto distinct = subset.distinct_items();
  Rng rng(seed);
  const auto to_expanded = [&](const IndexList& local) {
    IndexList out;
    out.reserve(local.size());
    for (const auto i : local) out.push_back(distinct[i].second);
    std::sort(out.begin(), out.end());
    return out;
  };

  switch (inst.kind()) {
    case ProblemKind::MEB: {
      std::vector<Vector> pts;
      for (const auto& [item, e] : distinct) pts.push_back(std::get<Point>(cs.item(item)).coords);
      auto cert = geometry::min_enclosing_ball(pts, rng);
      auto v = PhiValue::finite(cert.radius);
      v.solution.basis = to_expanded(cert.support);
      v.solution.certificate = std::move(cert);
      return v;
    }
    case ProblemKind::IntersectingBall: {
      std::vector<Ball> balls;
      for (const auto& [item, e] : distinct) balls.push_back(std::get<Ball>(cs.item(item)));
      auto cert = geometry::min_intersecting_ball(balls, rng);
      auto v = PhiValue::finite(cert.minimax);
      v.solution.basis = to_expanded(cert.support);
      v.solution.certificate = std::move(cert);
      return v;
    }
    case ProblemKind::Annulus: {
      std::vector<Vector> pts;
      for (const auto& [item, e] : distinct) pts.push_back(std::get<Point>(cs.item(item)).coords);
      auto cert = geometry::min_annulus(pts, rng);
      Vector tail(cert.center);
      tail.push_back(cert.outer_offset);
      auto v = PhiValue::finite(cert.width, std::move(tail));
      v.solution.basis = to_expanded(cert.support);
      v.solution.certificate = std::move(cert);
      return v;
    }
    case ProblemKind::LinearFeasibility:
    case ProblemKind::Separability: {
      std::vector<HalfSpace> rows;
      for (const auto& [item, e] : distinct) rows.push_back(linear_constraint_of(inst, cs.item(item)));
      const auto res = lp::solve_lp_max_x1(rows, lp_variables(inst), rng);
      if (res.status == lp::LpStatus::Infeasible) {
        auto v = PhiValue::pos_inf();
        v.solution.certificate = LpCertificate{false, {}};
        return v;
      }
      Vector tail;
      for (std::size_t i = 1; i < res.point.size(); ++i) tail.push_back(-res.point[i]);
      auto v = PhiValue::finite(-res.point[0], std::move(tail));
      v.solution.basis = to_expanded(res.basis);
      v.solution.certificate = LpCertificate{true, res.point};
      return v;
    }
  }
  throw std::logic_error("phi: unhandled kind");
}

/// Whether adding the constraint at `expanded` would change phi, decided
/// from the certificate of `phi_r` alone.
inline bool violates(const ProblemInstance& inst, const PhiValue& phi_r, std::size_t expanded,
                     double tol = kTolerance) {
  if (phi_r.tag == PhiValue::Tag::NegInf) return true;
  if (phi_r.tag == PhiValue::Tag::PosInf) return false;
  const auto& c = inst.constraints().at_expanded(expanded);
  const auto& cert = phi_r.solution.certificate;
  switch (inst.kind()) {
    case ProblemKind::MEB: {
      const auto& b = std::get<geometry::BallCertificate>(cert);
      const double dist = std::sqrt(squared_distance(std::get<Point>(c).coords, b.center));
      return dist > b.radius + tol * std::max(1.0, b.radius);
    }
    case ProblemKind::IntersectingBall: {
      const auto& b = std::get<geometry::IntersectingBallCertificate>(cert);
      const double excess = geometry::detail::gap(std::get<Ball>(c), b.center) - b.minimax;
      return excess > tol * std::max(1.0, std::abs(b.minimax));
    }
    case ProblemKind::Annulus:
      return geometry::outside_annulus(std::get<geometry::AnnulusCertificate>(cert), std::get<Point>(c).coords, tol);
    case ProblemKind::LinearFeasibility:
    case ProblemKind::Separability: {
      const auto& lp = std::get<LpCertificate>(cert);
      return lp::violates(linear_constraint_of(inst, c), lp.point, tol);
    }
  }
  throw std::logic_error("violates: unhandled kind");
}

/// Expanded indices s outside R with phi(R + s) != phi(R).
inline IndexList violators(const ProblemInstance& inst, const SubsetView& subset, std::uint64_t seed = kPhiSeed) {
  const auto value = phi(inst, subset, seed);
  IndexList out;
  for (std::size_t e = 0; e < inst.size(); ++e) {
    if (!subset.contains(e) && violates(inst, value, e)) out.push_back(e);
  }
  return out;
}

/// Expanded indices s in R with phi(R - s) != phi(R).
inline IndexList extreme_elements(const ProblemInstance& inst, const SubsetView& subset,
                                  std::uint64_t seed = kPhiSeed) {
  const auto& cs = inst.constraints();
  const auto value = phi(inst, subset, seed);
  IndexList out;
  const auto& idx = subset.indices();
  for (std::size_t i = 0; i < idx.size(); ++i) {
    // Another copy of the same item keeps the multiset's phi unchanged.
    const auto item = cs.item_of(idx[i]);
    const bool duplicated = (i > 0 && cs.item_of(idx[i - 1]) == item) ||
                            (i + 1 < idx.size() && cs.item_of(idx[i + 1]) == item);
    if (duplicated) continue;
    if (!same_value(phi(inst, subset.without(idx[i]), seed), value)) out.push_back(idx[i]);
  }
  return out;
}

}  // namespace lptest
