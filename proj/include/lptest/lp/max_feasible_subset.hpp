// Copyright 2026 The lptest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lptest/common.hpp"
#include "lptest/lp/linear_program.hpp"

namespace lptest::lp {

struct MaxFeasibleOptions {
  /// Largest list accepted before TooLarge.
  std::size_t guard = 25;
  /// Per-constraint weights (empty: all ones). The search maximizes the
  /// total kept weight.
  std::vector<double> weights;
  /// Decide every sub-LP in rational arithmetic.
  bool exact = false;
};

struct MaxFeasibleResult {
  /// Indices into the input list, ascending.
  IndexList subset;
  double weight = 0.0;
  /// Lexicographic max-x_1 point of the chosen subsystem.
  Vector point;
  /// Weight of the greedy incumbent the search started from.
  double greedy_weight = 0.0;
  std::size_t nodes = 0;
};

namespace detail {

class MaxFsSearch {
 public:
  MaxFsSearch(const std::vector<LinearConstraint>& cs, std::size_t d, const MaxFeasibleOptions& opt)
      : cs_(cs), d_(d), exact_(opt.exact) {
    weights_ = opt.weights.empty() ? std::vector<double>(cs.size(), 1.0) : opt.weights;
    if (weights_.size() != cs.size()) throw std::invalid_argument("max_feasible_subset: weights size mismatch");
    total_ = 0.0;
    for (const double w : weights_) total_ += w;
  }

  MaxFeasibleResult run() {
    // Greedy incumbent: keep each constraint that leaves the system feasible.
    IndexList greedy;
    double gw = 0.0;
    for (std::size_t i = 0; i < cs_.size(); ++i) {
      greedy.push_back(i);
      if (probe(greedy).feasible) {
        gw += weights_[i];
      } else {
        greedy.pop_back();
      }
    }
    best_ = greedy;
    best_weight_ = gw;
    greedy_weight_ = gw;

    removed_.assign(cs_.size(), false);
    kept_.assign(cs_.size(), false);
    branch(0.0);

    MaxFeasibleResult out;
    out.subset = best_;
    out.weight = best_weight_;
    out.greedy_weight = greedy_weight_;
    out.nodes = nodes_;
    std::vector<LinearConstraint> chosen;
    for (const auto i : best_) chosen.push_back(cs_[i]);
    Rng rng(0x6d61782d6673ULL);
    const auto lp = solve_lp_max_x1(chosen, d_, rng);
    out.point = lp.point;
    return out;
  }

 private:
  struct Probe {
    bool feasible;
    IndexList witness;  // infeasible subsystem, input indices
  };

  Probe probe(const IndexList& active) const {
    Probe p;
    if (exact_) {
      std::vector<LexRow<Rational>> rows;
      for (const auto i : active) {
        const auto& c = cs_[i];
        const Rational s = c.sense == Sense::LessEqual ? Rational(1) : Rational(-1);
        LexRow<Rational> row;
        for (const double v : c.normal) row.a.push_back(s * to_rational(v));
        row.b = s * to_rational(c.offset);
        row.id = static_cast<int>(i);
        rows.push_back(std::move(row));
      }
      LexLp<Rational> solver(d_, std::vector<Rational>(d_, to_rational(kLpBox)));
      const auto out = solver.solve(std::move(rows), nullptr);
      p.feasible = out.feasible;
      p.witness = to_indices(out.support);
    } else {
      std::vector<LexRow<double>> rows;
      for (const auto i : active) rows.push_back(normalized_row(cs_[i], static_cast<int>(i)));
      LexLp<double> solver(d_, Vector(d_, kLpBox));
      const auto out = solver.solve(std::move(rows), nullptr);
      p.feasible = out.feasible;
      p.witness = to_indices(out.support);
    }
    return p;
  }

  // Every feasible subsystem of the active set drops at least one member of
  // any infeasible subsystem W = {w_1, ..., w_m}. Branch i removes w_i and
  // keeps w_1..w_{i-1}, so the branches are disjoint and exhaustive.
  void branch(double removed_weight) {
    ++nodes_;
    if (total_ - removed_weight <= best_weight_) return;
    IndexList active;
    for (std::size_t i = 0; i < cs_.size(); ++i)
      if (!removed_[i]) active.push_back(i);
    const auto p = probe(active);
    if (p.feasible) {
      best_ = active;
      best_weight_ = total_ - removed_weight;
      return;
    }
    IndexList flipped;
    for (const auto w : p.witness) {
      if (kept_[w]) continue;
      removed_[w] = true;
      branch(removed_weight + weights_[w]);
      removed_[w] = false;
      kept_[w] = true;
      flipped.push_back(w);
    }
    for (const auto w : flipped) kept_[w] = false;
  }

  const std::vector<LinearConstraint>& cs_;
  std::size_t d_;
  bool exact_;
  std::vector<double> weights_;
  double total_ = 0.0;
  IndexList best_;
  double best_weight_ = 0.0;
  double greedy_weight_ = 0.0;
  std::vector<bool> removed_;
  std::vector<bool> kept_;
  std::size_t nodes_ = 0;
};

}  // namespace detail

/// Exact maximum-weight feasible subsystem by branch-and-bound over
/// infeasible subsystems reported by the LP engine.
inline MaxFeasibleResult max_feasible_subset(const std::vector<LinearConstraint>& constraints, std::size_t d,
                                             const MaxFeasibleOptions& options = {}) {
  if (constraints.size() > options.guard) {
    throw TooLarge("max_feasible_subset: " + std::to_string(constraints.size()) + " constraints exceed guard " +
                   std::to_string(options.guard));
  }
  detail::MaxFsSearch search(constraints, d, options);
  return search.run();
}

}  // namespace lptest::lp
