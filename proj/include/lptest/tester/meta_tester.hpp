// Copyright 2026 The lptest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <set>

#include "lptest/common.hpp"
#include "lptest/core/instance.hpp"
#include "lptest/core/phi.hpp"
#include "lptest/random.hpp"
#include "lptest/tester/verdict.hpp"

namespace lptest {

struct TesterConfig {
  double epsilon = 0.1;
  /// Threshold; the instance's k when absent.
  std::optional<double> k;
  std::uint64_t seed = 0;
  /// The constant in r = ceil(multiplier * delta / epsilon).
  double sample_multiplier = 10.0;
  /// Defaults to ceil(2 / epsilon).
  std::optional<std::size_t> check_rounds;

  void validate() const {
    check_epsilon(epsilon);
    if (!(sample_multiplier >= 1.0)) throw std::invalid_argument("sample multiplier must be >= 1");
    if (check_rounds && *check_rounds < 1) throw std::invalid_argument("check rounds must be >= 1");
  }
  std::size_t rounds() const { return check_rounds ? *check_rounds : default_rounds(epsilon); }
};

/// phi(R) > k beyond tolerance; infeasible subsets exceed every threshold.
inline bool exceeds_threshold(const PhiValue& v, double k) {
  if (v.tag == PhiValue::Tag::PosInf) return true;
  if (v.tag == PhiValue::Tag::NegInf) return false;
  return v.value > k + kTolerance * std::max(1.0, std::abs(k));
}

/// One run of the generic tester: sample R, reject when phi(R) > k, then
/// draw check constraints from S \ R and reject on the first violator.
inline TesterVerdict run_lptype_tester(const ProblemInstance& inst, const TesterConfig& cfg, Rng& rng) {
  cfg.validate();
  if (!is_optimization_kind(inst.kind())) {
    throw std::invalid_argument(std::string("run_lptype_tester: kind ") + to_string(inst.kind()) +
                                " has no threshold objective; use the feasibility tester");
  }
  const std::size_t n = inst.size();
  if (n == 0) throw EmptyInstance("run_lptype_tester: empty instance");
  const auto k = cfg.k ? cfg.k : inst.k();
  if (!k) throw std::invalid_argument("run_lptype_tester: no threshold k given");

  const std::size_t r_target = sample_size(cfg.sample_multiplier, inst.delta(), cfg.epsilon);
  const std::size_t rounds = cfg.rounds();
  TesterVerdict v;
  v.budget = r_target + rounds;
  v.r_sample = sample_without_replacement(n, r_target, rng);
  v.queries_used = v.r_sample.size();
  const SubsetView r_view(inst.constraints(), v.r_sample);
  const auto value = phi(inst, r_view);
  if (exceeds_threshold(value, *k)) {
    v.decision = Decision::Reject;
    v.cause = RejectCause::PhiExceedsK;
    return v;
  }
  // R = S: no constraint is left to violate.
  if (v.r_sample.size() >= n) return v;

  std::set<std::size_t> read;
  for (std::size_t round = 0; round < rounds; ++round) {
    const auto x = uniform_outside(n, v.r_sample, rng);
    ++v.rounds;
    if (read.insert(x).second) ++v.queries_used;
    if (violates(inst, value, x)) {
      v.decision = Decision::Reject;
      v.cause = RejectCause::ViolatorFound;
      v.witness_index = x;
      return v;
    }
  }
  return v;
}

inline TesterVerdict run_lptype_tester(const ProblemInstance& inst, const TesterConfig& cfg) {
  Rng rng(cfg.seed);
  return run_lptype_tester(inst, cfg, rng);
}

/// Monte Carlo estimate over `trials` runs with seeds derive_seed(seed, i).
inline VerdictEstimate estimate_verdict_probability(const ProblemInstance& inst, const TesterConfig& cfg,
                                                    std::size_t trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  cfg.validate();
  return summarize(run_indexed(trials, [&](std::size_t i) {
    TesterConfig c = cfg;
    c.seed = derive_seed(seed, i);
    return run_lptype_tester(inst, c);
  }));
}

}  // namespace lptest
