// Copyright 2026 The lptest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

#include "lptest/common.hpp"
#include "lptest/random.hpp"
#include "lptest/rational.hpp"

namespace lptest::lp {

/// Comparison policy for the LP scalar type. Doubles use an absolute
/// tolerance plus a roundoff allowance; rationals compare exactly.
template <class T>
struct ScalarOps;

template <>
struct ScalarOps<double> {
  static double abs(double v) { return std::abs(v); }
  static bool negligible(double v, double scale) { return std::abs(v) <= 1e-12 * std::max(1.0, scale); }
  /// lhs <= rhs up to tolerance; `magnitude` bounds the terms that were
  /// summed into lhs.
  static bool leq(double lhs, double rhs, double magnitude, double tol) {
    const double slack = tol * std::max(1.0, std::abs(rhs)) +
                         8.0 * std::numeric_limits<double>::epsilon() * magnitude;
    return lhs <= rhs + slack;
  }
  static int sign(double v) { return (v > 0) - (v < 0); }
};

template <>
struct ScalarOps<Rational> {
  static Rational abs(const Rational& v) { return v < 0 ? Rational(-v) : v; }
  static bool negligible(const Rational& v, const Rational&) { return v == 0; }
  static bool leq(const Rational& lhs, const Rational& rhs, const Rational&, double) { return lhs <= rhs; }
  static int sign(const Rational& v) { return v.sign(); }
};

/// a . x <= b. Rows with a negative id are internal (box-derived) and never
/// reported in supports.
template <class T>
struct LexRow {
  std::vector<T> a;
  T b;
  int id = -1;
};

template <class T>
struct LexOutcome {
  bool feasible = false;
  std::vector<T> point;
  /// Feasible: ids of the constraints that pin the optimum (at most dim).
  /// Infeasible: ids of an infeasible subsystem (at most dim + 1).
  std::vector<int> support;
};

/// Randomized incremental (Seidel-style) LP over `dim` variables that
/// returns the lexicographic maximum of (x_1, ..., x_dim) subject to the
/// rows and the implicit box |x_i| <= box[i]. The lexicographic objective
/// makes the optimum unique, which is the symbolic-perturbation limit of
/// maximizing x_1 + t x_2 + t^2 x_3 + ... as t -> 0.
template <class T>
class LexLp {
 public:
  LexLp(std::size_t dim, std::vector<T> box, double tol = kTolerance)
      : dim_(dim), box_(std::move(box)), tol_(tol) {}

  std::size_t dim() const { return dim_; }

  /// `rng` permutes the insertion order; pass nullptr to keep input order.
  LexOutcome<T> solve(std::vector<LexRow<T>> rows, Rng* rng) const {
    if (rng != nullptr) rng->shuffle(rows.begin(), rows.end());
    Frame frame;
    frame.vars.resize(dim_);
    std::iota(frame.vars.begin(), frame.vars.end(), std::size_t{0});
    frame.coef.assign(dim_, std::vector<T>(dim_, T(0)));
    frame.cst.assign(dim_, T(0));
    for (std::size_t i = 0; i < dim_; ++i) frame.coef[i][i] = T(1);
    auto out = recurse(rows, frame);
    if (out.feasible) out.point = to_original(frame, out.point);
    std::sort(out.support.begin(), out.support.end());
    return out;
  }

 private:
  using Ops = ScalarOps<T>;

  // Current variables y (a subset of the original coordinates) and the
  // affine map x = coef * y + cst back to the original coordinates.
  struct Frame {
    std::vector<std::size_t> vars;
    std::vector<std::vector<T>> coef;
    std::vector<T> cst;
  };

  static std::vector<T> to_original(const Frame& f, const std::vector<T>& y) {
    std::vector<T> x(f.cst);
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t l = 0; l < y.size(); ++l) x[i] += f.coef[i][l] * y[l];
    return x;
  }

  // Lexicographic optimum over the box of the free variables alone.
  std::vector<T> box_optimum(const Frame& f) const {
    const std::size_t k = f.vars.size();
    std::vector<T> y(k, T(0));
    std::vector<bool> fixed(k, false);
    std::size_t remaining = k;
    for (std::size_t i = 0; i < f.coef.size() && remaining > 0; ++i) {
      T scale(0);
      for (std::size_t l = 0; l < k; ++l) scale = std::max<T>(scale, Ops::abs(f.coef[i][l]));
      for (std::size_t l = 0; l < k; ++l) {
        if (fixed[l] || Ops::negligible(f.coef[i][l], scale)) continue;
        y[l] = Ops::sign(f.coef[i][l]) > 0 ? box_[f.vars[l]] : T(-box_[f.vars[l]]);
        fixed[l] = true;
        --remaining;
      }
    }
    return y;
  }

  bool satisfied(const LexRow<T>& row, const std::vector<T>& y) const {
    T lhs(0);
    T magnitude(0);
    for (std::size_t l = 0; l < y.size(); ++l) {
      const T term = row.a[l] * y[l];
      lhs += term;
      magnitude += Ops::abs(term);
    }
    return Ops::leq(lhs, row.b, magnitude, tol_);
  }

  LexOutcome<T> recurse(const std::vector<LexRow<T>>& rows, const Frame& frame) const {
    const std::size_t k = frame.vars.size();
    LexOutcome<T> out;
    out.feasible = true;
    out.point = box_optimum(frame);

    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& h = rows[i];
      std::size_t pivot = 0;
      T best(0);
      for (std::size_t l = 0; l < k; ++l) {
        if (Ops::abs(h.a[l]) > best) {
          best = Ops::abs(h.a[l]);
          pivot = l;
        }
      }
      if (Ops::negligible(best, T(1))) {
        // Constant row 0 <= b.
        if (Ops::leq(T(0), h.b, T(0), tol_)) continue;
        LexOutcome<T> bad;
        if (h.id >= 0) bad.support.push_back(h.id);
        return bad;
      }
      if (satisfied(h, out.point)) continue;

      // Restrict to the hyperplane of h by eliminating the pivot variable:
      // y_p = (h.b - sum_{l != p} h.a_l y_l) / h.a_p.
      const T& hp = h.a[pivot];
      auto substitute = [&](const LexRow<T>& g) {
        LexRow<T> s;
        s.id = g.id;
        s.a.reserve(k - 1);
        const T ratio = g.a[pivot] / hp;
        for (std::size_t l = 0; l < k; ++l) {
          if (l != pivot) s.a.push_back(g.a[l] - ratio * h.a[l]);
        }
        s.b = g.b - ratio * h.b;
        return s;
      };

      std::vector<LexRow<T>> sub;
      sub.reserve(i + 2);
      {
        LexRow<T> up;
        up.a.assign(k, T(0));
        up.a[pivot] = T(1);
        up.b = box_[frame.vars[pivot]];
        LexRow<T> down = up;
        down.a[pivot] = T(-1);
        sub.push_back(substitute(up));
        sub.push_back(substitute(down));
      }
      for (std::size_t g = 0; g < i; ++g) sub.push_back(substitute(rows[g]));

      Frame next;
      next.vars.reserve(k - 1);
      for (std::size_t l = 0; l < k; ++l)
        if (l != pivot) next.vars.push_back(frame.vars[l]);
      next.coef.resize(frame.coef.size());
      next.cst.resize(frame.cst.size());
      for (std::size_t r = 0; r < frame.coef.size(); ++r) {
        const T ratio = frame.coef[r][pivot] / hp;
        next.coef[r].reserve(k - 1);
        for (std::size_t l = 0; l < k; ++l) {
          if (l != pivot) next.coef[r].push_back(frame.coef[r][l] - ratio * h.a[l]);
        }
        next.cst[r] = frame.cst[r] + ratio * h.b;
      }

      auto inner = recurse(sub, next);
      if (!inner.feasible) {
        if (h.id >= 0) inner.support.push_back(h.id);
        return inner;
      }

      std::vector<T> y(k, T(0));
      T acc = h.b;
      for (std::size_t l = 0, m = 0; l < k; ++l) {
        if (l == pivot) continue;
        y[l] = inner.point[m++];
        acc -= h.a[l] * y[l];
      }
      y[pivot] = acc / hp;
      out.point = std::move(y);
      out.support = std::move(inner.support);
      if (h.id >= 0) out.support.push_back(h.id);
    }
    return out;
  }

  std::size_t dim_;
  std::vector<T> box_;
  double tol_;
};

}  // namespace lptest::lp
