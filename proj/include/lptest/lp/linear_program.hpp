// Copyright 2026 The lptest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "lptest/common.hpp"
#include "lptest/core/constraint_set.hpp"
#include "lptest/lp/lex_lp.hpp"
#include "lptest/random.hpp"
#include "lptest/rational.hpp"

namespace lptest::lp {

using LinearConstraint = HalfSpace;

enum class LpStatus { Feasible, Infeasible, Unbounded };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Feasible: return "feasible";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "?";
}

struct LPResult {
  LpStatus status = LpStatus::Infeasible;
  /// Lexicographic optimum inside the box; set unless Infeasible.
  Vector point;
  /// x_1 of the point.
  double objective = 0.0;
  /// Direction with a.r <= 0 for every constraint and r_1 > 0, when Unbounded.
  Vector ray;
  /// Indices into the input list. Feasible/Unbounded: constraints pinning
  /// the optimum (at most d). Infeasible: an infeasible subsystem (at most d+1).
  IndexList basis;
};

/// a.x <= b form of a constraint, scaled so that ||a||_2 = 1.
inline LexRow<double> normalized_row(const LinearConstraint& c, int id) {
  double norm = 0.0;
  for (const double v : c.normal) norm += v * v;
  norm = std::sqrt(norm);
  const double s = (c.sense == Sense::LessEqual ? 1.0 : -1.0) / norm;
  LexRow<double> row;
  row.a.reserve(c.normal.size());
  for (const double v : c.normal) row.a.push_back(s * v);
  row.b = s * c.offset;
  row.id = id;
  return row;
}

/// Signed violation of c at x in units of distance; positive means violated.
inline double violation(const LinearConstraint& c, const Vector& x) {
  const auto row = normalized_row(c, 0);
  double lhs = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) lhs += row.a[i] * x[i];
  return lhs - row.b;
}

/// Whether x violates c beyond tolerance (relative roundoff allowance for
/// large coordinates included).
inline bool violates(const LinearConstraint& c, const Vector& x, double tol = kTolerance) {
  const auto row = normalized_row(c, 0);
  double lhs = 0.0;
  double magnitude = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    lhs += row.a[i] * x[i];
    magnitude += std::abs(row.a[i] * x[i]);
  }
  return !ScalarOps<double>::leq(lhs, row.b, magnitude, tol);
}

namespace detail {

inline LexOutcome<double> lex_solve(const std::vector<LinearConstraint>& cs, std::size_t d, double box, Rng* rng) {
  std::vector<LexRow<double>> rows;
  rows.reserve(cs.size());
  for (std::size_t i = 0; i < cs.size(); ++i) rows.push_back(normalized_row(cs[i], static_cast<int>(i)));
  LexLp<double> solver(d, Vector(d, box));
  return solver.solve(std::move(rows), rng);
}

inline IndexList to_indices(const std::vector<int>& ids) {
  IndexList out;
  out.reserve(ids.size());
  for (const int id : ids) out.push_back(static_cast<std::size_t>(id));
  return out;
}

}  // namespace detail

/// Maximizes x_1 over the constraints, ties broken lexicographically on
/// x_2, ..., x_d, inside the box |x_i| <= box. An optimum on the x_1 face
/// of the box is reported as Unbounded, with a recession ray when one exists.
inline LPResult solve_lp_max_x1(const std::vector<LinearConstraint>& constraints, std::size_t d, Rng& rng,
                                double box = kLpBox) {
  if (d < 1) throw std::invalid_argument("solve_lp_max_x1: dimension must be >= 1");
  for (const auto& c : constraints) {
    if (c.normal.size() != d) throw std::invalid_argument("solve_lp_max_x1: constraint dimension mismatch");
  }
  LPResult result;
  const auto outcome = detail::lex_solve(constraints, d, box, &rng);
  result.basis = detail::to_indices(outcome.support);
  if (!outcome.feasible) {
    result.status = LpStatus::Infeasible;
    return result;
  }
  for (const double v : outcome.point) {
    if (!std::isfinite(v)) throw NumericalFailure("solve_lp_max_x1: non-finite optimum");
  }
  result.point = outcome.point;
  result.objective = outcome.point[0];
  result.status = LpStatus::Feasible;
  if (result.objective >= box * (1.0 - 1e-12)) {
    result.status = LpStatus::Unbounded;
    std::vector<LinearConstraint> cone;
    cone.reserve(constraints.size());
    for (const auto& c : constraints) cone.push_back({c.normal, 0.0, c.sense});
    const auto ray = detail::lex_solve(cone, d, 1.0, nullptr);
    if (ray.feasible && ray.point[0] > kTolerance) result.ray = ray.point;
  }
  return result;
}

inline LPResult solve_lp_max_x1(const std::vector<LinearConstraint>& constraints, std::size_t d) {
  Rng rng(0x1f2e3d4c5b6a7988ULL);
  return solve_lp_max_x1(constraints, d, rng);
}

/// Exact feasibility of the system (inside the box) in rational arithmetic.
/// Returns the lexicographic optimum when feasible.
inline std::optional<std::vector<Rational>> exact_feasible_point(const std::vector<LinearConstraint>& constraints,
                                                                 std::size_t d, double box = kLpBox) {
  std::vector<LexRow<Rational>> rows;
  rows.reserve(constraints.size());
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const auto& c = constraints[i];
    const Rational s = c.sense == Sense::LessEqual ? Rational(1) : Rational(-1);
    LexRow<Rational> row;
    for (const double v : c.normal) row.a.push_back(s * to_rational(v));
    row.b = s * to_rational(c.offset);
    row.id = static_cast<int>(i);
    rows.push_back(std::move(row));
  }
  LexLp<Rational> solver(d, std::vector<Rational>(d, to_rational(box)));
  auto out = solver.solve(std::move(rows), nullptr);
  if (!out.feasible) return std::nullopt;
  return out.point;
}

inline bool exact_feasible(const std::vector<LinearConstraint>& constraints, std::size_t d) {
  return exact_feasible_point(constraints, d).has_value();
}

}  // namespace lptest::lp
