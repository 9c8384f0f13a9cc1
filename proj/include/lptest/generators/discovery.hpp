// Copyright 2026 The lptest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "lptest/common.hpp"
#include "lptest/generators/families.hpp"
#include "lptest/random.hpp"

namespace lptest::generators {

struct DiscoveryResult {
  std::size_t d = 0;
  double epsilon = 0.0;
  /// Light-group mass after rounding; each of the 3d groups has mass
  /// epsilon_effective / (3d).
  double epsilon_effective = 0.0;
  double mean_queries = 0.0;
  /// 1.96 standard errors of the mean.
  double ci95 = 0.0;
  /// (3d / eps_eff) (H_{3d} - H_{2d-1}).
  double closed_form = 0.0;
  /// Queries used by each trial.
  std::vector<std::size_t> curve;
};

inline double harmonic(std::size_t m) {
  double h = 0.0;
  for (std::size_t i = 1; i <= m; ++i) h += 1.0 / static_cast<double>(i);
  return h;
}

/// Expected uniform draws until d+1 of 3d groups, each of probability
/// eps / (3d), have been hit.
inline double group_discovery_expectation(std::size_t d, double epsilon) {
  return 3.0 * static_cast<double>(d) / epsilon * (harmonic(3 * d) - harmonic(2 * d - 1));
}

/// Draws constraints uniformly (with replacement) from the far family's
/// multiset until d+1 distinct light groups have appeared.
inline DiscoveryResult empirical_group_discovery(const FamilySpec& spec, std::size_t trials, std::uint64_t seed) {
  if (!is_far(spec.family) || spec.family == Family::RandomFar) {
    throw BadSpec("empirical_group_discovery: needs moment-far or simplex-far");
  }
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const std::size_t groups = 3 * spec.d;
  const auto mult = family_multiplicities(spec.n, spec.epsilon, groups);
  const std::size_t each = mult.front();
  const std::size_t light_total = each * groups;

  DiscoveryResult out;
  out.d = spec.d;
  out.epsilon = spec.epsilon;
  out.epsilon_effective = static_cast<double>(light_total) / static_cast<double>(spec.n);
  out.closed_form = group_discovery_expectation(spec.d, out.epsilon_effective);
  out.curve.reserve(trials);
  double sum = 0.0;
  double sumsq = 0.0;
  std::vector<bool> seen(groups);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    std::fill(seen.begin(), seen.end(), false);
    std::size_t found = 0;
    std::size_t queries = 0;
    while (found < spec.d + 1) {
      ++queries;
      // Light copies occupy the first light_total expanded indices.
      const auto e = static_cast<std::size_t>(rng.uniform_index(spec.n));
      if (e >= light_total) continue;
      const std::size_t g = e / each;
      if (!seen[g]) {
        seen[g] = true;
        ++found;
      }
    }
    out.curve.push_back(queries);
    sum += static_cast<double>(queries);
    sumsq += static_cast<double>(queries) * static_cast<double>(queries);
  }
  const double tn = static_cast<double>(trials);
  out.mean_queries = sum / tn;
  const double var = trials > 1 ? std::max(0.0, (sumsq - tn * out.mean_queries * out.mean_queries) / (tn - 1.0)) : 0.0;
  out.ci95 = 1.96 * std::sqrt(var / tn);
  return out;
}

}  // namespace lptest::generators
