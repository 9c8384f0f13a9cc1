// Copyright 2026 The lptest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <set>

#include "lptest/common.hpp"
#include "lptest/core/instance.hpp"
#include "lptest/core/phi.hpp"
#include "lptest/lp/linear_program.hpp"
#include "lptest/lp/max_feasible_subset.hpp"
#include "lptest/random.hpp"
#include "lptest/tester/verdict.hpp"

namespace lptest::lp {

struct FeasibilityConfig {
  double epsilon = 0.1;
  std::uint64_t seed = 0;
  double sample_multiplier = 10.0;
  std::optional<std::size_t> check_rounds;

  void validate() const {
    check_epsilon(epsilon);
    if (!(sample_multiplier >= 1.0)) throw std::invalid_argument("sample multiplier must be >= 1");
    if (check_rounds && *check_rounds < 1) throw std::invalid_argument("check rounds must be >= 1");
  }
  std::size_t rounds() const { return check_rounds ? *check_rounds : default_rounds(epsilon); }
};

struct TolerantConfig {
  double epsilon = 0.1;
  /// Closeness constant; must lie in (0, 1/15).
  double c = 1.0 / 20.0;
  std::uint64_t seed = 0;
  /// Largest sample the exact maximum feasible subsystem search accepts.
  std::size_t max_subset_search_size = 25;
  double sample_multiplier = 10.0;
  std::optional<std::size_t> check_rounds;
  /// Decide the subsystem search in rational arithmetic.
  bool exact = false;

  void validate() const {
    check_epsilon(epsilon);
    if (!(c > 0.0 && c < 1.0 / 15.0)) throw std::invalid_argument("tolerant tester: c must lie in (0, 1/15)");
    if (!(sample_multiplier >= 1.0)) throw std::invalid_argument("sample multiplier must be >= 1");
    if (check_rounds && *check_rounds < 1) throw std::invalid_argument("check rounds must be >= 1");
  }
  std::size_t rounds() const { return check_rounds ? *check_rounds : default_rounds(epsilon); }
};

namespace detail {

inline void require_linear(const ProblemInstance& inst) {
  if (inst.kind() != ProblemKind::LinearFeasibility && inst.kind() != ProblemKind::Separability) {
    throw std::invalid_argument(std::string("feasibility tester: kind ") + to_string(inst.kind()) +
                                " is not a linear kind");
  }
  if (inst.size() == 0) throw EmptyInstance("feasibility tester: empty instance");
}

// Check rounds with y drawn uniformly from all of S; only constraints not
// read before count as new queries.
inline void check_rounds_from_s(const ProblemInstance& inst, const Vector& x, std::size_t rounds, Rng& rng,
                                TesterVerdict& v) {
  std::set<std::size_t> read(v.r_sample.begin(), v.r_sample.end());
  const auto& cs = inst.constraints();
  for (std::size_t round = 0; round < rounds; ++round) {
    const auto y = static_cast<std::size_t>(rng.uniform_index(inst.size()));
    ++v.rounds;
    if (read.insert(y).second) ++v.queries_used;
    if (lp::violates(linear_constraint_of(inst, cs.at_expanded(y)), x)) {
      v.decision = Decision::Reject;
      v.cause = RejectCause::ViolatorFound;
      v.witness_index = y;
      return;
    }
  }
}

}  // namespace detail

/// Linear feasibility tester: solve max x_1 on a sample of ceil(10 d / eps)
/// constraints, reject if infeasible, else reject if any of ceil(2 / eps)
/// constraints drawn from S is violated by the solution.
inline TesterVerdict run_linear_feasibility_tester(const ProblemInstance& inst, const FeasibilityConfig& cfg) {
  cfg.validate();
  detail::require_linear(inst);
  Rng rng(cfg.seed);
  const std::size_t d = lp_variables(inst);
  const std::size_t r_target = sample_size(cfg.sample_multiplier, d, cfg.epsilon);
  TesterVerdict v;
  v.budget = r_target + cfg.rounds();
  v.r_sample = sample_without_replacement(inst.size(), r_target, rng);
  v.queries_used = v.r_sample.size();
  const auto value = phi(inst, SubsetView(inst.constraints(), v.r_sample));
  if (value.tag == PhiValue::Tag::PosInf) {
    v.decision = Decision::Reject;
    v.cause = RejectCause::PhiExceedsK;
    return v;
  }
  const auto& x = std::get<LpCertificate>(value.solution.certificate).point;
  detail::check_rounds_from_s(inst, x, cfg.rounds(), rng, v);
  return v;
}

inline TesterVerdict run_linear_feasibility_tester(const ConstraintSet& constraints, double epsilon,
                                                   std::uint64_t seed) {
  FeasibilityConfig cfg;
  cfg.epsilon = epsilon;
  cfg.seed = seed;
  return run_linear_feasibility_tester(ProblemInstance(constraints, ProblemKind::LinearFeasibility), cfg);
}

inline VerdictEstimate estimate_feasibility_verdicts(const ProblemInstance& inst, const FeasibilityConfig& cfg,
                                                     std::size_t trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  return summarize(run_indexed(trials, [&](std::size_t i) {
    FeasibilityConfig c = cfg;
    c.seed = derive_seed(seed, i);
    return run_linear_feasibility_tester(inst, c);
  }));
}

/// Tolerant tester: as the plain tester, but the sample is first cut down
/// to a maximum feasible subsystem R' and the check point is the max-x_1
/// solution on R'.
inline TesterVerdict run_tolerant_feasibility_tester(const ProblemInstance& inst, const TolerantConfig& cfg) {
  cfg.validate();
  detail::require_linear(inst);
  const std::size_t d = lp_variables(inst);
  const std::size_t r_target = sample_size(cfg.sample_multiplier, d, cfg.epsilon);
  if (std::min(r_target, inst.size()) > cfg.max_subset_search_size) {
    throw TooLarge("tolerant tester: sample size " + std::to_string(r_target) + " exceeds the search guard " +
                   std::to_string(cfg.max_subset_search_size));
  }
  Rng rng(cfg.seed);
  TesterVerdict v;
  v.budget = r_target + cfg.rounds();
  v.r_sample = sample_without_replacement(inst.size(), r_target, rng);
  v.queries_used = v.r_sample.size();

  // Copies of one item are weighted rather than repeated.
  const auto& cs = inst.constraints();
  std::map<std::size_t, double> weight;
  for (const auto e : v.r_sample) weight[cs.item_of(e)] += 1.0;
  std::vector<LinearConstraint> rows;
  MaxFeasibleOptions opt;
  opt.guard = cfg.max_subset_search_size;
  opt.exact = cfg.exact;
  for (const auto& [item, w] : weight) {
    rows.push_back(linear_constraint_of(inst, cs.item(item)));
    opt.weights.push_back(w);
  }
  const auto best = max_feasible_subset(rows, d, opt);
  if (best.subset.empty()) {
    v.decision = Decision::Reject;
    v.cause = RejectCause::PhiExceedsK;
    return v;
  }
  detail::check_rounds_from_s(inst, best.point, cfg.rounds(), rng, v);
  return v;
}

inline VerdictEstimate estimate_tolerant_verdicts(const ProblemInstance& inst, const TolerantConfig& cfg,
                                                  std::size_t trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  return summarize(run_indexed(trials, [&](std::size_t i) {
    TolerantConfig c = cfg;
    c.seed = derive_seed(seed, i);
    return run_tolerant_feasibility_tester(inst, c);
  }));
}

}  // namespace lptest::lp
