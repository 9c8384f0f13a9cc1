// Copyright 2026 The lptest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lptest/common.hpp"
#include "lptest/core/constraint_set.hpp"
#include "lptest/core/instance.hpp"
#include "lptest/core/oracle.hpp"
#include "lptest/geometry/meb.hpp"
#include "lptest/lp/linear_program.hpp"
#include "lptest/random.hpp"
#include "lptest/separability/feature_map.hpp"

namespace lptest::generators {

enum class Family { MomentCurveNear, MomentCurveFar, SimplexNear, SimplexFar, RandomFeasible, RandomFar };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::MomentCurveNear: return "moment-near";
    case Family::MomentCurveFar: return "moment-far";
    case Family::SimplexNear: return "simplex-near";
    case Family::SimplexFar: return "simplex-far";
    case Family::RandomFeasible: return "random-feasible";
    case Family::RandomFar: return "random-far";
  }
  return "?";
}

inline Family parse_family(const std::string& s) {
  for (const auto f : {Family::MomentCurveNear, Family::MomentCurveFar, Family::SimplexNear, Family::SimplexFar,
                       Family::RandomFeasible, Family::RandomFar}) {
    if (s == to_string(f)) return f;
  }
  throw BadSpec("unknown family '" + s + "'");
}

inline bool is_far(Family f) {
  return f == Family::MomentCurveFar || f == Family::SimplexFar || f == Family::RandomFar;
}

struct FamilySpec {
  Family family = Family::SimplexNear;
  std::size_t d = 1;
  std::size_t n = 100;
  double epsilon = 0.1;
  std::uint64_t seed = 0;
  /// Threshold for the ball families.
  double k = 1.0;
  /// Problem kind of the random families.
  ProblemKind kind = ProblemKind::MEB;
};

/// Record of how far an instance is from satisfying the property.
struct Certification {
  /// "exact-removal-search", "disjoint-contradictions", "containment" or
  /// "construction" (not verified).
  std::string method;
  bool certified = false;
  /// Smallest total multiplicity whose removal makes the instance satisfy
  /// the property, when known.
  std::optional<std::size_t> min_removal;
  /// min_removal / n.
  std::optional<double> far_fraction;
};

struct GeneratedInstance {
  ProblemInstance instance;
  FamilySpec spec;
  /// Fraction of the multiset carried by the light points after rounding.
  double epsilon_effective = 0.0;
  Certification certification;
};

/// Multiplicities of a heavy point (last) and `groups` light points sharing
/// floor(n eps / groups) copies each; the rounding remainder goes to the
/// heavy point.
inline std::vector<std::size_t> family_multiplicities(std::size_t n, double epsilon, std::size_t groups) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw BadSpec("epsilon must lie in (0, 1]");
  const double share = static_cast<double>(n) * epsilon / static_cast<double>(groups);
  const auto each = static_cast<std::size_t>(std::floor(share + 1e-9));
  if (each == 0) {
    throw BadSpec("n * epsilon / " + std::to_string(groups) + " rounds to zero copies per light point");
  }
  if (each * groups >= n) throw BadSpec("no copies left for the heavy point; lower epsilon");
  std::vector<std::size_t> m(groups, each);
  m.push_back(n - each * groups);
  return m;
}

// ---------------------------------------------------------------------------
// Moment curve

/// 3d+1 points (t, t^2, ..., t^d) with t_i = i/(3d+1), labeled (-1)^i.
inline separability::LabeledPointSet moment_curve_points(std::size_t d) {
  if (d < 1) throw BadSpec("moment curve needs d >= 1");
  separability::LabeledPointSet out;
  const std::size_t m = 3 * d + 1;
  for (std::size_t i = 1; i <= m; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(m);
    Vector p(d);
    double power = 1.0;
    for (std::size_t j = 0; j < d; ++j) {
      power *= t;
      p[j] = power;
    }
    out.points.push_back(std::move(p));
    out.labels.push_back(i % 2 == 0 ? 1 : -1);
    out.multiplicities.push_back(1);
  }
  return out;
}

/// Near: moment-curve points 1..d plus the heavy point 3d+1. Far: all 3d+1
/// points with the last one heavy.
inline separability::LabeledPointSet build_separability_family(const FamilySpec& spec) {
  if (spec.family != Family::MomentCurveNear && spec.family != Family::MomentCurveFar) {
    throw BadSpec("build_separability_family: not a moment-curve family");
  }
  const auto all = moment_curve_points(spec.d);
  const bool far = spec.family == Family::MomentCurveFar;
  const std::size_t light = far ? 3 * spec.d : spec.d;
  const auto mult = family_multiplicities(spec.n, spec.epsilon, light);
  separability::LabeledPointSet out;
  for (std::size_t i = 0; i < light; ++i) {
    out.points.push_back(all.points[i]);
    out.labels.push_back(all.labels[i]);
  }
  out.points.push_back(all.points.back());
  out.labels.push_back(all.labels.back());
  out.multiplicities = mult;
  return out;
}

/// Whether the labeled points are separable after lifting with the given
/// feature degree, decided in rational arithmetic.
inline bool exactly_separable(const separability::LabeledPointSet& pts, std::size_t feature_degree) {
  if (pts.points.empty()) return true;
  const separability::FeatureMap fm(pts.dim(), feature_degree);
  std::vector<HalfSpace> rows;
  for (std::size_t i = 0; i < pts.points.size(); ++i) {
    rows.push_back(separability::separation_constraint(fm.apply(pts.points[i]), pts.labels[i]));
  }
  return lp::exact_feasible(rows, fm.size());
}

/// Smallest total multiplicity whose removal leaves a separable set,
/// by exhaustive search over kept subsets of the distinct points.
inline std::size_t min_removal_to_separable(const separability::LabeledPointSet& pts, std::size_t feature_degree) {
  const std::size_t m = pts.points.size();
  if (m > 20) throw TooLarge("min_removal_to_separable: more than 20 distinct points");
  std::size_t total = 0;
  for (const auto w : pts.multiplicities) total += w;
  std::size_t best = total;
  // Kept subsets in decreasing order of kept weight would need sorting;
  // plain enumeration with a weight bound is cheap at this size.
  for (std::uint32_t mask = 0; mask < (1U << m); ++mask) {
    std::size_t removed = 0;
    separability::LabeledPointSet kept;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask & (1U << i)) {
        kept.points.push_back(pts.points[i]);
        kept.labels.push_back(pts.labels[i]);
        kept.multiplicities.push_back(pts.multiplicities[i]);
      } else {
        removed += pts.multiplicities[i];
      }
    }
    if (removed >= best) continue;
    if (exactly_separable(kept, feature_degree)) best = removed;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Simplex

struct MebFamily {
  std::vector<Vector> points;
  std::vector<std::size_t> multiplicities;
  double k = 1.0;
  /// Common edge length of the embedded simplex.
  double ell = 0.0;
};

/// Regular simplex with 3d+1 vertices e_i * ell / sqrt(2) in R^{3d+1},
/// scaled so that any d+1 of its vertices have circumradius k. Near: d
/// light vertices plus the heavy last vertex. Far: all 3d+1 vertices.
inline MebFamily build_meb_family(const FamilySpec& spec) {
  if (spec.family != Family::SimplexNear && spec.family != Family::SimplexFar) {
    throw BadSpec("build_meb_family: not a simplex family");
  }
  if (spec.d < 1) throw BadSpec("simplex family needs d >= 1");
  if (!(spec.k > 0.0)) throw BadSpec("simplex family needs k > 0");
  const bool far = spec.family == Family::SimplexFar;
  const std::size_t dim = 3 * spec.d + 1;
  const std::size_t light = far ? 3 * spec.d : spec.d;
  MebFamily out;
  out.k = spec.k;
  out.ell = spec.k / geometry::simplex_circumradius(spec.d);
  const double scale = out.ell / std::sqrt(2.0);
  const auto vertex = [&](std::size_t i) {
    Vector v(dim, 0.0);
    v[i] = scale;
    return v;
  };
  for (std::size_t i = 0; i < light; ++i) out.points.push_back(vertex(i));
  out.points.push_back(vertex(dim - 1));
  out.multiplicities = family_multiplicities(spec.n, spec.epsilon, light);
  return out;
}

/// Smallest total multiplicity whose removal leaves points enclosable in a
/// ball of radius k. A maximal enclosable subset is determined by its own
/// smallest enclosing ball, which is spanned by at most D+1 of its points,
/// so scanning the balls of all such small subsets is exact.
inline std::size_t min_removal_to_radius(const std::vector<Vector>& pts, const std::vector<std::size_t>& mult,
                                         double k) {
  const std::size_t m = pts.size();
  if (m > 20) throw TooLarge("min_removal_to_radius: more than 20 distinct points");
  const std::size_t dim = pts.front().size();
  std::size_t total = 0;
  for (const auto w : mult) total += w;
  const double limit = k + 1e-9 * std::max(1.0, k);
  std::size_t best_kept = 0;
  oracle::for_each_subset(m, 1, std::min(m, dim + 1), [&](const IndexList& s) {
    std::vector<Vector> sub;
    for (const auto i : s) sub.push_back(pts[i]);
    const auto ball = geometry::min_enclosing_ball(sub);
    if (ball.radius > limit) return;
    std::size_t kept = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (std::sqrt(squared_distance(pts[i], ball.center)) <= limit) kept += mult[i];
    }
    best_kept = std::max(best_kept, kept);
  });
  return total - best_kept;
}

// ---------------------------------------------------------------------------
// Uniform front end

namespace detail {

inline double effective_epsilon(const std::vector<std::size_t>& mult, std::size_t n) {
  std::size_t light = 0;
  for (std::size_t i = 0; i + 1 < mult.size(); ++i) light += mult[i];
  return static_cast<double>(light) / static_cast<double>(n);
}

inline Vector random_in_ball(std::size_t d, double radius, Rng& rng) {
  Vector v(d);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (auto& x : v) {
      x = rng.normal();
      norm += x * x;
    }
  } while (norm == 0.0);
  norm = std::sqrt(norm);
  const double r = radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(d));
  for (auto& x : v) x *= r / norm;
  return v;
}

inline GeneratedInstance random_ball_instance(const FamilySpec& spec, bool feasible) {
  Rng rng(spec.seed);
  const std::size_t d = spec.d;
  const double k = spec.k;
  std::size_t far_count = 0;
  if (!feasible) {
    far_count = static_cast<std::size_t>(std::ceil(spec.epsilon * static_cast<double>(spec.n) - 1e-9));
    if (far_count == 0 || far_count >= spec.n) throw BadSpec("random-far: epsilon * n must lie in [1, n)");
  }
  std::vector<Constraint> items;
  for (std::size_t i = 0; i + far_count < spec.n; ++i) {
    Vector c = random_in_ball(d, 0.9 * k, rng);
    if (spec.kind == ProblemKind::MEB) {
      items.emplace_back(Point{std::move(c)});
    } else {
      items.emplace_back(Ball{std::move(c), rng.uniform(0.0, 0.5 * k)});
    }
  }
  for (std::size_t i = 0; i < far_count; ++i) {
    Vector c = random_in_ball(d, 1.0, rng);
    const double norm = std::sqrt(dot(c, c));
    for (auto& x : c) x *= 10.0 * k / std::max(norm, 1e-300);
    if (norm == 0.0) c[0] = 10.0 * k;
    if (spec.kind == ProblemKind::MEB) {
      items.emplace_back(Point{std::move(c)});
    } else {
      items.emplace_back(Ball{std::move(c), 0.0});
    }
  }
  GeneratedInstance out{ProblemInstance(ConstraintSet(std::move(items), d), spec.kind, k), spec, 0.0, {}};
  out.epsilon_effective = static_cast<double>(far_count) / static_cast<double>(spec.n);
  if (feasible) {
    out.certification.method = "containment";
    out.certification.certified = true;
    out.certification.min_removal = 0;
    out.certification.far_fraction = 0.0;
    return out;
  }
  if (spec.kind == ProblemKind::MEB && spec.n <= 20) {
    std::vector<Vector> pts;
    for (const auto& c : out.instance.constraints().items()) pts.push_back(std::get<Point>(c).coords);
    const auto removal = min_removal_to_radius(pts, std::vector<std::size_t>(pts.size(), 1), k);
    out.certification.method = "exact-removal-search";
    out.certification.min_removal = removal;
    out.certification.far_fraction = static_cast<double>(removal) / static_cast<double>(spec.n);
    out.certification.certified = true;
    if (removal + d + 1 < far_count) {
      throw CertificationFailed("random-far: removal search found only " + std::to_string(removal) + " removals");
    }
  } else {
    out.certification.method = "construction";
  }
  return out;
}

inline GeneratedInstance random_linear_instance(const FamilySpec& spec, bool feasible) {
  Rng rng(spec.seed);
  const std::size_t d = spec.d;
  Vector xstar(d);
  for (auto& x : xstar) x = rng.uniform(-0.5, 0.5);
  std::vector<Constraint> items;
  std::vector<std::size_t> mult;
  std::size_t pair = 0;
  if (!feasible) {
    pair = static_cast<std::size_t>(std::ceil(spec.epsilon * static_cast<double>(spec.n) - 1e-9));
    if (pair == 0 || 2 * pair > spec.n) throw BadSpec("random-far linear: need 1 <= eps*n <= n/2");
    Vector e1(d, 0.0);
    e1[0] = 1.0;
    items.emplace_back(HalfSpace{e1, xstar[0] + 1.0, Sense::GreaterEqual});
    mult.push_back(pair);
    items.emplace_back(HalfSpace{e1, xstar[0], Sense::LessEqual});
    mult.push_back(pair);
  }
  for (std::size_t i = 2 * pair; i < spec.n; ++i) {
    Vector a = random_in_ball(d, 1.0, rng);
    const double norm = std::sqrt(dot(a, a));
    for (auto& x : a) x /= norm;
    items.emplace_back(HalfSpace{a, dot(a, xstar) + rng.uniform(0.0, 0.5), Sense::LessEqual});
    mult.push_back(1);
  }
  GeneratedInstance out{
      ProblemInstance(ConstraintSet(std::move(items), std::move(mult), d), ProblemKind::LinearFeasibility), spec,
      0.0, {}};
  out.epsilon_effective = static_cast<double>(pair) / static_cast<double>(spec.n);
  out.certification.certified = true;
  out.certification.min_removal = pair;
  out.certification.far_fraction = out.epsilon_effective;
  out.certification.method = feasible ? "containment" : "disjoint-contradictions";
  return out;
}

}  // namespace detail

/// Random fixture of the given kind: feasible instances share a witness
/// (points inside a 0.9k ball, constraints satisfied by a random x*); far
/// instances plant at least eps*n constraints that no witness satisfies.
inline GeneratedInstance random_instance(ProblemKind kind, std::size_t d, std::size_t n, bool feasible,
                                         double epsilon_target, std::uint64_t seed, double k = 1.0) {
  if (d < 1 || n < 1) throw BadSpec("random_instance: need d >= 1 and n >= 1");
  FamilySpec spec;
  spec.family = feasible ? Family::RandomFeasible : Family::RandomFar;
  spec.d = d;
  spec.n = n;
  spec.epsilon = epsilon_target;
  spec.seed = seed;
  spec.k = k;
  spec.kind = kind;
  switch (kind) {
    case ProblemKind::MEB:
    case ProblemKind::IntersectingBall: return detail::random_ball_instance(spec, feasible);
    case ProblemKind::LinearFeasibility: return detail::random_linear_instance(spec, feasible);
    default: break;
  }
  throw BadSpec(std::string("random_instance: kind ") + to_string(kind) + " is not supported");
}

/// Builds any family as a problem instance with its certification record.
/// Ball families are certified by exact removal search over the distinct
/// vertices, moment-curve families by exact rational LP over all kept
/// subsets of the distinct points.
inline GeneratedInstance generate(const FamilySpec& spec) {
  switch (spec.family) {
    case Family::MomentCurveNear:
    case Family::MomentCurveFar: {
      const auto pts = build_separability_family(spec);
      GeneratedInstance out{
          ProblemInstance(pts.to_constraint_set(), ProblemKind::Separability, std::nullopt, std::nullopt, 1), spec,
          detail::effective_epsilon(pts.multiplicities, spec.n), {}};
      const auto removal = min_removal_to_separable(pts, 1);
      out.certification.method = "exact-removal-search";
      out.certification.certified = true;
      out.certification.min_removal = removal;
      out.certification.far_fraction = static_cast<double>(removal) / static_cast<double>(spec.n);
      return out;
    }
    case Family::SimplexNear:
    case Family::SimplexFar: {
      const auto fam = build_meb_family(spec);
      std::vector<Constraint> items;
      for (const auto& p : fam.points) items.emplace_back(Point{p});
      const std::size_t dim = fam.points.front().size();
      GeneratedInstance out{ProblemInstance(ConstraintSet(std::move(items), fam.multiplicities, dim),
                                            ProblemKind::MEB, fam.k),
                            spec, detail::effective_epsilon(fam.multiplicities, spec.n), {}};
      const auto removal = min_removal_to_radius(fam.points, fam.multiplicities, fam.k);
      out.certification.method = "exact-removal-search";
      out.certification.certified = true;
      out.certification.min_removal = removal;
      out.certification.far_fraction = static_cast<double>(removal) / static_cast<double>(spec.n);
      return out;
    }
    case Family::RandomFeasible:
    case Family::RandomFar:
      return random_instance(spec.kind, spec.d, spec.n, spec.family == Family::RandomFeasible, spec.epsilon,
                             spec.seed, spec.k);
  }
  throw BadSpec("generate: unknown family");
}

}  // namespace lptest::generators
