// Copyright 2026 The lptest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lptest/common.hpp"
#include "lptest/core/constraint_set.hpp"
#include "lptest/geometry/annulus.hpp"
#include "lptest/geometry/intersecting_ball.hpp"
#include "lptest/geometry/meb.hpp"
#include "lptest/separability/feature_map.hpp"

namespace lptest {

enum class ProblemKind { MEB, IntersectingBall, Annulus, LinearFeasibility, Separability };

inline const char* to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::MEB: return "meb";
    case ProblemKind::IntersectingBall: return "intersecting-ball";
    case ProblemKind::Annulus: return "annulus";
    case ProblemKind::LinearFeasibility: return "linear-feasibility";
    case ProblemKind::Separability: return "separability";
  }
  return "?";
}

inline ProblemKind parse_problem_kind(const std::string& s) {
  for (const auto k : {ProblemKind::MEB, ProblemKind::IntersectingBall, ProblemKind::Annulus,
                       ProblemKind::LinearFeasibility, ProblemKind::Separability}) {
    if (s == to_string(k)) return k;
  }
  throw ParseError("unknown problem kind '" + s + "'");
}

/// Kinds whose objective is compared against a threshold k.
inline bool is_optimization_kind(ProblemKind k) {
  return k == ProblemKind::MEB || k == ProblemKind::IntersectingBall || k == ProblemKind::Annulus;
}

/// Number of LP variables of a separability instance over d-dimensional
/// points lifted with the given feature degree.
inline std::size_t separability_variables(std::size_t d, std::size_t feature_degree) {
  return separability::FeatureMap(d, feature_degree).size();
}

/// Combinatorial dimension of a kind in ambient dimension d.
inline std::size_t known_delta(ProblemKind kind, std::size_t d, std::size_t feature_degree = 0) {
  switch (kind) {
    case ProblemKind::MEB: return d + 1;
    case ProblemKind::IntersectingBall: return d + 1;
    case ProblemKind::Annulus: return d + 2;
    case ProblemKind::LinearFeasibility: return d;
    case ProblemKind::Separability: return separability_variables(d, feature_degree);
  }
  return 0;
}

/// Certificate of the linear kinds: the lexicographic max-x_1 point.
struct LpCertificate {
  bool feasible = false;
  Vector point;
};

using Certificate = std::variant<std::monostate, geometry::BallCertificate, geometry::IntersectingBallCertificate,
                                 geometry::AnnulusCertificate, LpCertificate>;

struct Solution {
  Certificate certificate;
  /// Expanded indices into the instance's constraint set, at most delta.
  IndexList basis;
};

/// Objective value with the infinite sentinels. Finite values carry a
/// lexicographic tail that refines the order among equal leading values.
struct PhiValue {
  enum class Tag { NegInf, Finite, PosInf };
  Tag tag = Tag::NegInf;
  double value = -std::numeric_limits<double>::infinity();
  Vector tail;
  Solution solution;

  static PhiValue neg_inf() { return {}; }
  static PhiValue pos_inf() {
    PhiValue v;
    v.tag = Tag::PosInf;
    v.value = std::numeric_limits<double>::infinity();
    return v;
  }
  static PhiValue finite(double value, Vector tail = {}) {
    PhiValue v;
    v.tag = Tag::Finite;
    v.value = value;
    v.tail = std::move(tail);
    return v;
  }
  bool is_finite() const { return tag == Tag::Finite; }
};

inline bool approx_equal(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

/// Three-way comparison of objective values: leading value first, then the
/// tail, each component equal within a relative tolerance.
inline int compare(const PhiValue& a, const PhiValue& b, double tol = kTolerance) {
  const auto rank = [](PhiValue::Tag t) { return static_cast<int>(t); };
  if (a.tag != b.tag) return rank(a.tag) < rank(b.tag) ? -1 : 1;
  if (!a.is_finite()) return 0;
  if (!approx_equal(a.value, b.value, tol)) return a.value < b.value ? -1 : 1;
  const std::size_t m = std::min(a.tail.size(), b.tail.size());
  for (std::size_t i = 0; i < m; ++i) {
    if (!approx_equal(a.tail[i], b.tail[i], tol)) return a.tail[i] < b.tail[i] ? -1 : 1;
  }
  return 0;
}

inline bool same_value(const PhiValue& a, const PhiValue& b, double tol = kTolerance) {
  return compare(a, b, tol) == 0;
}

inline std::string to_string(const PhiValue& v) {
  switch (v.tag) {
    case PhiValue::Tag::NegInf: return "-inf";
    case PhiValue::Tag::PosInf: return "+inf";
    case PhiValue::Tag::Finite: break;
  }
  return std::to_string(v.value);
}

/// A constraint set bound to a problem kind, its combinatorial dimension
/// and (for optimization kinds) a threshold k.
class ProblemInstance {
 public:
  /// delta defaults to the kind's known dimension; an explicit value must
  /// match it (use with_custom_delta to override).
  ProblemInstance(ConstraintSet constraints, ProblemKind kind, std::optional<double> k = std::nullopt,
                  std::optional<std::size_t> delta = std::nullopt, std::size_t feature_degree = 0)
      : constraints_(std::move(constraints)), kind_(kind), k_(k), feature_degree_(feature_degree) {
    check_compatible();
    const auto known = known_delta(kind_, constraints_.dim(), feature_degree_);
    if (delta && *delta != known) {
      throw BadSpec("delta " + std::to_string(*delta) + " does not match the known dimension " +
                    std::to_string(known) + " of kind " + to_string(kind_));
    }
    delta_ = known;
  }

  /// Instance with a user-chosen delta, for experiments probing other values.
  static ProblemInstance with_custom_delta(ConstraintSet constraints, ProblemKind kind, std::size_t delta,
                                           std::optional<double> k = std::nullopt, std::size_t feature_degree = 0) {
    if (delta < 1) throw BadSpec("delta must be >= 1");
    ProblemInstance inst(std::move(constraints), kind, k, std::nullopt, feature_degree);
    inst.delta_ = delta;
    return inst;
  }

  const ConstraintSet& constraints() const { return constraints_; }
  ProblemKind kind() const { return kind_; }
  std::size_t delta() const { return delta_; }
  std::optional<double> k() const { return k_; }
  std::size_t feature_degree() const { return feature_degree_; }
  std::size_t dim() const { return constraints_.dim(); }
  std::size_t size() const { return constraints_.size(); }

  ProblemInstance with_k(std::optional<double> k) const {
    ProblemInstance out(*this);
    out.k_ = k;
    return out;
  }

 private:
  void check_compatible() const {
    for (const auto& c : constraints_.items()) {
      bool ok = false;
      switch (kind_) {
        case ProblemKind::MEB:
        case ProblemKind::Annulus: ok = std::holds_alternative<Point>(c); break;
        case ProblemKind::IntersectingBall: ok = std::holds_alternative<Ball>(c); break;
        case ProblemKind::LinearFeasibility: ok = std::holds_alternative<HalfSpace>(c); break;
        case ProblemKind::Separability: ok = std::holds_alternative<LabeledPoint>(c); break;
      }
      if (!ok) throw BadSpec(std::string("constraint type does not match kind ") + to_string(kind_));
    }
    if (kind_ == ProblemKind::Separability) {
      for (const auto& c : constraints_.items()) {
        const int label = std::get<LabeledPoint>(c).label;
        if (label != 1 && label != -1) throw BadLabel("separability instances need labels +1/-1");
      }
    }
    if (feature_degree_ != 0 && kind_ != ProblemKind::Separability) {
      throw BadSpec("feature degree applies to separability instances only");
    }
  }

  ConstraintSet constraints_;
  ProblemKind kind_;
  std::optional<double> k_;
  std::size_t feature_degree_ = 0;
  std::size_t delta_ = 0;
};

}  // namespace lptest
