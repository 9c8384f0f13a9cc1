// Copyright 2026 The lptest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "lptest/common.hpp"
#include "lptest/core/constraint_set.hpp"

namespace lptest::separability {

/// Labeled points with multiplicities. Two-label sets use {+1, -1};
/// multi-label sets use {0, ..., labels-1}.
struct LabeledPointSet {
  std::vector<Vector> points;
  std::vector<int> labels;
  std::vector<std::size_t> multiplicities;

  std::size_t dim() const { return points.empty() ? 0 : points.front().size(); }
  std::size_t item_count() const { return points.size(); }
  std::size_t size() const {
    std::size_t n = 0;
    for (const auto m : multiplicities) n += m;
    return n;
  }

  void validate() const {
    if (labels.size() != points.size() || multiplicities.size() != points.size()) {
      throw std::invalid_argument("LabeledPointSet: points, labels and multiplicities must align");
    }
    for (const auto& p : points) {
      if (p.size() != dim() || p.empty()) throw std::invalid_argument("LabeledPointSet: inconsistent dimensions");
    }
    for (const auto m : multiplicities) {
      if (m < 1) throw std::invalid_argument("LabeledPointSet: multiplicities must be >= 1");
    }
  }

  /// Distinct labels in increasing order.
  std::vector<int> label_values() const {
    std::vector<int> out(labels);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  ConstraintSet to_constraint_set() const {
    validate();
    std::vector<Constraint> items;
    items.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) items.emplace_back(LabeledPoint{points[i], labels[i]});
    return ConstraintSet(std::move(items), multiplicities, dim());
  }

  static LabeledPointSet from_constraint_set(const ConstraintSet& cs) {
    LabeledPointSet out;
    for (std::size_t i = 0; i < cs.item_count(); ++i) {
      const auto* lp = std::get_if<LabeledPoint>(&cs.item(i));
      if (lp == nullptr) throw std::invalid_argument("LabeledPointSet: constraint set holds non-labeled items");
      out.points.push_back(lp->coords);
      out.labels.push_back(lp->label);
      out.multiplicities.push_back(cs.multiplicities()[i]);
    }
    return out;
  }
};

/// Graded monomial basis of total degree <= t in d variables. Degree 0
/// denotes the identity map (homogeneous linear separation).
class FeatureMap {
 public:
  /// Largest magnitude a lifted coordinate may take.
  static constexpr double kOverflowLimit = 1e12;

  FeatureMap(std::size_t d, std::size_t degree) : d_(d), degree_(degree) {
    if (d < 1) throw std::invalid_argument("FeatureMap: dimension must be >= 1");
    if (degree == 0) return;
    std::vector<int> e(d, 0);
    for (std::size_t g = 0; g <= degree; ++g) emit(e, 0, static_cast<int>(g));
  }

  std::size_t input_dim() const { return d_; }
  std::size_t degree() const { return degree_; }
  /// Number of lifted coordinates: C(t+d, d), or d for the identity map.
  std::size_t size() const { return degree_ == 0 ? d_ : exponents_.size(); }
  /// Exponent vectors in graded order, highest power of x_1 first within a
  /// degree; for d=2, t=2: 1, x1, x2, x1^2, x1 x2, x2^2.
  const std::vector<std::vector<int>>& exponents() const { return exponents_; }

  Vector apply(const Vector& p) const {
    if (p.size() != d_) throw std::invalid_argument("FeatureMap: point dimension mismatch");
    if (degree_ == 0) return p;
    Vector out;
    out.reserve(exponents_.size());
    for (const auto& e : exponents_) {
      double v = 1.0;
      for (std::size_t j = 0; j < d_; ++j) v *= std::pow(p[j], e[j]);
      if (!std::isfinite(v) || std::abs(v) > kOverflowLimit) {
        throw Overflow("FeatureMap: lifted coordinate exceeds 1e12; normalize the input first");
      }
      out.push_back(v);
    }
    return out;
  }

 private:
  void emit(std::vector<int>& e, std::size_t j, int remaining) {
    if (j + 1 == d_) {
      e[j] = remaining;
      exponents_.push_back(e);
      return;
    }
    for (int a = remaining; a >= 0; --a) {
      e[j] = a;
      emit(e, j + 1, remaining - a);
    }
  }

  std::size_t d_;
  std::size_t degree_;
  std::vector<std::vector<int>> exponents_;
};

inline LabeledPointSet lift(const LabeledPointSet& pts, const FeatureMap& fm) {
  pts.validate();
  LabeledPointSet out;
  out.labels = pts.labels;
  out.multiplicities = pts.multiplicities;
  out.points.reserve(pts.points.size());
  for (const auto& p : pts.points) out.points.push_back(fm.apply(p));
  return out;
}

/// The half-space for one labeled point: p.x >= 1 for +1, p.x <= -1 for -1.
inline HalfSpace separation_constraint(const Vector& p, int label) {
  if (label == 1) return HalfSpace{p, 1.0, Sense::GreaterEqual};
  if (label == -1) return HalfSpace{p, -1.0, Sense::LessEqual};
  throw BadLabel("reduce_to_constraints: label " + std::to_string(label) + " is not +1 or -1");
}

/// One constraint per point, multiplicities preserved; x ranges over the
/// point space.
inline ConstraintSet reduce_to_constraints(const LabeledPointSet& pts) {
  pts.validate();
  std::vector<Constraint> items;
  items.reserve(pts.points.size());
  for (std::size_t i = 0; i < pts.points.size(); ++i) {
    items.emplace_back(separation_constraint(pts.points[i], pts.labels[i]));
  }
  return ConstraintSet(std::move(items), pts.multiplicities, pts.dim());
}

}  // namespace lptest::separability
