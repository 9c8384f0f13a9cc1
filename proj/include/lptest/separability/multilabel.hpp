// Copyright 2026 The lptest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "lptest/common.hpp"
#include "lptest/core/instance.hpp"
#include "lptest/lp/feasibility_tester.hpp"
#include "lptest/random.hpp"
#include "lptest/separability/feature_map.hpp"
#include "lptest/tester/verdict.hpp"

namespace lptest::separability {

struct MultiLabelConfig {
  double epsilon = 0.1;
  std::uint64_t seed = 0;
  /// Repetitions per pair are repetition_constant * ceil(ln l).
  std::size_t repetition_constant = 108;
  /// Overrides the repetition count when set.
  std::optional<std::size_t> repetitions;
  std::size_t feature_degree = 0;
};

struct PairVerdict {
  int label_a = 0;  // mapped to +1
  int label_b = 0;  // mapped to -1
  std::size_t runs = 0;
  std::size_t accepts = 0;
  std::size_t queries_used = 0;
  Decision decision = Decision::Accept;
};

struct MultiLabelVerdict {
  Decision decision = Decision::Accept;
  std::size_t queries_used = 0;
  /// Sum over all runs of the per-run budget.
  std::size_t budget = 0;
  double pair_epsilon = 0.0;
  std::size_t repetitions = 0;
  std::vector<PairVerdict> pairs;

  bool accepted() const { return decision == Decision::Accept; }
};

inline std::size_t multilabel_repetitions(std::size_t labels, const MultiLabelConfig& cfg) {
  if (cfg.repetitions) return *cfg.repetitions;
  const auto lg = static_cast<std::size_t>(std::ceil(std::log(static_cast<double>(labels)) - 1e-12));
  return cfg.repetition_constant * std::max<std::size_t>(1, lg);
}

/// Points labeled a or b, relabeled a -> +1 and b -> -1.
inline LabeledPointSet pair_subset(const LabeledPointSet& pts, int a, int b) {
  LabeledPointSet out;
  for (std::size_t i = 0; i < pts.points.size(); ++i) {
    if (pts.labels[i] != a && pts.labels[i] != b) continue;
    out.points.push_back(pts.points[i]);
    out.labels.push_back(pts.labels[i] == a ? 1 : -1);
    out.multiplicities.push_back(pts.multiplicities[i]);
  }
  return out;
}

/// Runs the two-label tester on every label pair with eps' = eps / C(l, 2),
/// repeated and decided by majority per pair; accepts iff every pair does.
inline MultiLabelVerdict run_multilabel_tester(const LabeledPointSet& pts, const MultiLabelConfig& cfg) {
  pts.validate();
  check_epsilon(cfg.epsilon);
  const auto labels = pts.label_values();
  if (labels.size() < 2) throw BadLabel("multi-label tester needs at least two labels");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != static_cast<int>(i)) throw BadLabel("multi-label labels must be 0..l-1");
  }
  const std::size_t l = labels.size();
  const double pairs = static_cast<double>(l * (l - 1) / 2);
  MultiLabelVerdict out;
  out.pair_epsilon = cfg.epsilon / pairs;
  out.repetitions = multilabel_repetitions(l, cfg);

  std::size_t pair_index = 0;
  for (std::size_t a = 0; a < l; ++a) {
    for (std::size_t b = a + 1; b < l; ++b, ++pair_index) {
      PairVerdict pv;
      pv.label_a = static_cast<int>(a);
      pv.label_b = static_cast<int>(b);
      const auto sub = pair_subset(pts, pv.label_a, pv.label_b);
      if (sub.points.empty()) {
        out.pairs.push_back(pv);
        continue;
      }
      const ProblemInstance inst(sub.to_constraint_set(), ProblemKind::Separability, std::nullopt, std::nullopt,
                                 cfg.feature_degree);
      const auto verdicts = run_indexed(out.repetitions, [&](std::size_t rep) {
        lp::FeasibilityConfig fc;
        fc.epsilon = out.pair_epsilon;
        fc.seed = derive_seed(cfg.seed, pair_index * out.repetitions + rep);
        return lp::run_linear_feasibility_tester(inst, fc);
      });
      for (const auto& v : verdicts) {
        ++pv.runs;
        if (v.accepted()) ++pv.accepts;
        pv.queries_used += v.queries_used;
        out.budget += v.budget;
      }
      pv.decision = 2 * pv.accepts > pv.runs ? Decision::Accept : Decision::Reject;
      out.queries_used += pv.queries_used;
      if (pv.decision == Decision::Reject) out.decision = Decision::Reject;
      out.pairs.push_back(pv);
    }
  }
  return out;
}

}  // namespace lptest::separability
