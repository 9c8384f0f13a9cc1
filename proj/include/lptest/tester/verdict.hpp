// Copyright 2026 The lptest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "lptest/common.hpp"

namespace lptest {

enum class Decision { Accept, Reject };

enum class RejectCause { PhiExceedsK, ViolatorFound, NoViolation };

inline const char* to_string(Decision d) { return d == Decision::Accept ? "accept" : "reject"; }

inline const char* to_string(RejectCause c) {
  switch (c) {
    case RejectCause::PhiExceedsK: return "phi-exceeds-k";
    case RejectCause::ViolatorFound: return "violator-found";
    case RejectCause::NoViolation: return "no-violation";
  }
  return "?";
}

struct TesterVerdict {
  Decision decision = Decision::Accept;
  /// Distinct constraints read (expanded indices).
  std::size_t queries_used = 0;
  RejectCause cause = RejectCause::NoViolation;
  std::optional<std::size_t> witness_index;
  /// The sample R, expanded indices in increasing order.
  IndexList r_sample;
  /// Check rounds actually performed.
  std::size_t rounds = 0;
  /// Query budget of the run: sample size plus check rounds.
  std::size_t budget = 0;

  bool accepted() const { return decision == Decision::Accept; }
};

/// Tester sample size ceil(multiplier * delta / epsilon).
inline std::size_t sample_size(double multiplier, std::size_t delta, double epsilon) {
  return ceil_div_eps(multiplier * static_cast<double>(delta), epsilon);
}

/// Check-round count ceil(2 / epsilon).
inline std::size_t default_rounds(double epsilon) { return ceil_div_eps(2.0, epsilon); }

inline void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1]");
}

/// Worker count: LPTEST_THREADS when set, else the hardware concurrency.
inline std::size_t worker_count(std::size_t jobs) {
  std::size_t cap = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("LPTEST_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) cap = static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(1, std::min(cap, jobs));
}

/// Runs fn(i) for i in [0, jobs) on a worker pool and returns the results
/// indexed by i, so aggregates do not depend on scheduling. The first
/// exception thrown by any job is rethrown.
template <class Fn>
auto run_indexed(std::size_t jobs, Fn&& fn) -> std::vector<decltype(fn(std::size_t{0}))> {
  using R = decltype(fn(std::size_t{0}));
  std::vector<std::optional<R>> slots(jobs);
  std::vector<std::exception_ptr> errors(jobs);
  const std::size_t workers = worker_count(jobs);
  const auto work = [&](std::size_t w) {
    for (std::size_t i = w; i < jobs; i += workers) {
      try {
        slots[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<R> out;
  out.reserve(jobs);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

struct VerdictEstimate {
  double accept_rate = 0.0;
  double mean_queries = 0.0;
  /// Normal-approximation half-width 1.96 sqrt(p (1 - p) / trials).
  double ci95 = 0.0;
  std::size_t trials = 0;
  std::size_t accepts = 0;
  std::size_t max_queries = 0;
  std::vector<TesterVerdict> verdicts;
};

inline VerdictEstimate summarize(std::vector<TesterVerdict> verdicts) {
  VerdictEstimate est;
  est.trials = verdicts.size();
  double q = 0.0;
  for (const auto& v : verdicts) {
    if (v.accepted()) ++est.accepts;
    q += static_cast<double>(v.queries_used);
    est.max_queries = std::max(est.max_queries, v.queries_used);
  }
  if (est.trials > 0) {
    const double t = static_cast<double>(est.trials);
    est.accept_rate = static_cast<double>(est.accepts) / t;
    est.mean_queries = q / t;
    est.ci95 = 1.96 * std::sqrt(est.accept_rate * (1.0 - est.accept_rate) / t);
  }
  est.verdicts = std::move(verdicts);
  return est;
}

}  // namespace lptest
