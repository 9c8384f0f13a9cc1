// Copyright 2026 The lptest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lptest/common.hpp"
#include "lptest/core/instance.hpp"
#include "lptest/core/oracle.hpp"
#include "lptest/core/phi.hpp"
#include "lptest/rational.hpp"

namespace lptest {

/// Largest number of subsets an exhaustive check may enumerate.
inline constexpr std::uint64_t kEnumerationGuard = 1000000;

struct SamplingLemmaReport {
  std::size_t n = 0;
  std::size_t r = 0;
  /// Largest basis size of phi (basis_bound).
  std::size_t delta = 0;
  /// Expected number of violators of a uniform r-subset.
  Rational v_r;
  /// Expected number of extreme elements of a uniform (r+1)-subset.
  Rational x_r1;
  /// v_r / (n - r) and x_{r+1} / (r + 1).
  Rational lhs;
  Rational rhs;
  bool equal = false;
  /// delta (n - r) / (r + 1), the upper bound on v_r.
  Rational bound;
  bool within_bound = false;
};

/// Exact expectations over all r- and (r+1)-subsets of the expanded index
/// space.
inline SamplingLemmaReport sampling_lemma_check(const ProblemInstance& inst, std::size_t r,
                                                std::uint64_t seed = kPhiSeed) {
  const std::size_t n = inst.size();
  if (n == 0) throw EmptyInstance("sampling_lemma_check: empty instance");
  if (r >= n) throw std::invalid_argument("sampling_lemma_check: r must be in [0, n-1]");
  const auto c_r = binomial(n, r);
  const auto c_r1 = binomial(n, r + 1);
  if (c_r > kEnumerationGuard || c_r1 > kEnumerationGuard) {
    throw TooLarge("sampling_lemma_check: C(" + std::to_string(n) + ", " + std::to_string(r) +
                   ") subsets exceed the enumeration guard of 1e6");
  }
  const auto& cs = inst.constraints();
  BigInt violator_total = 0;
  oracle::for_each_subset(n, r, r, [&](const IndexList& s) {
    violator_total += violators(inst, SubsetView(cs, s), seed).size();
  });
  BigInt extreme_total = 0;
  oracle::for_each_subset(n, r + 1, r + 1, [&](const IndexList& s) {
    extreme_total += extreme_elements(inst, SubsetView(cs, s), seed).size();
  });

  SamplingLemmaReport rep;
  rep.n = n;
  rep.r = r;
  rep.delta = basis_bound(inst);
  rep.v_r = Rational(violator_total) / Rational(BigInt(c_r));
  rep.x_r1 = Rational(extreme_total) / Rational(BigInt(c_r1));
  rep.lhs = rep.v_r / Rational(BigInt(n - r));
  rep.rhs = rep.x_r1 / Rational(BigInt(r + 1));
  rep.equal = rep.v_r * Rational(BigInt(r + 1)) == rep.x_r1 * Rational(BigInt(n - r));
  rep.bound = Rational(BigInt(rep.delta * (n - r))) / Rational(BigInt(r + 1));
  rep.within_bound = rep.v_r <= rep.bound;
  return rep;
}

struct AxiomReport {
  bool monotonicity = true;
  bool locality = true;
  std::size_t subsets_evaluated = 0;
  std::size_t checks = 0;
  /// Description of the first failure, empty when both axioms hold.
  std::string first_violation;
  IndexList witness_a;
  IndexList witness_b;
  std::optional<std::size_t> witness_x;

  bool passed() const { return monotonicity && locality; }
};

namespace detail {

inline IndexList mask_to_indices(std::uint32_t mask) {
  IndexList out;
  for (std::size_t i = 0; mask != 0; ++i, mask >>= 1)
    if (mask & 1U) out.push_back(i);
  return out;
}

}  // namespace detail

/// Exhaustive monotonicity and locality check of an arbitrary objective
/// over a ground set of n elements. `value(indices)` returns the PhiValue
/// of a sorted index subset. All pairs A within B with |B| <= max_size are
/// checked, and locality additionally for every x outside B.
template <class ValueFn>
AxiomReport check_axioms(std::size_t n, std::size_t max_size, ValueFn&& value) {
  if (n > 20) throw TooLarge("check_axioms: ground set larger than 20");
  max_size = std::min(max_size, n);
  std::uint64_t count = 0;
  for (std::size_t s = 0; s <= std::min(n, max_size + 1); ++s) count += binomial(n, s);
  if (count > kEnumerationGuard) throw TooLarge("check_axioms: subset count exceeds the enumeration guard of 1e6");

  std::map<std::uint32_t, PhiValue> cache;
  const auto get = [&](std::uint32_t mask) -> const PhiValue& {
    auto it = cache.find(mask);
    if (it == cache.end()) it = cache.emplace(mask, value(detail::mask_to_indices(mask))).first;
    return it->second;
  };

  AxiomReport rep;
  const auto fail = [&](const char* what, std::uint32_t a, std::uint32_t b, std::optional<std::size_t> x) {
    if (!rep.first_violation.empty()) return;
    rep.first_violation = what;
    rep.witness_a = detail::mask_to_indices(a);
    rep.witness_b = detail::mask_to_indices(b);
    rep.witness_x = x;
  };
  const std::uint32_t full = (1U << n) - 1U;
  for (std::uint32_t b = 0; b <= full; ++b) {
    if (static_cast<std::size_t>(std::popcount(b)) > max_size) continue;
    const auto& vb = get(b);
    // Submasks of b, including 0 and b itself.
    for (std::uint32_t a = b;; a = (a - 1) & b) {
      const auto& va = get(a);
      ++rep.checks;
      if (compare(va, vb) > 0) {
        rep.monotonicity = false;
        fail("monotonicity", a, b, std::nullopt);
      }
      if (same_value(va, vb)) {
        for (std::size_t x = 0; x < n; ++x) {
          const std::uint32_t bit = 1U << x;
          if (b & bit) continue;
          ++rep.checks;
          if (same_value(va, get(a | bit)) && !same_value(va, get(b | bit))) {
            rep.locality = false;
            fail("locality", a, b, x);
          }
        }
      }
      if (a == 0) break;
    }
  }
  rep.subsets_evaluated = cache.size();
  return rep;
}

/// check_axioms with phi of the instance over its expanded index space.
inline AxiomReport check_lp_type_axioms(const ProblemInstance& inst, std::size_t max_subset_size,
                                        std::uint64_t seed = kPhiSeed) {
  const auto& cs = inst.constraints();
  return check_axioms(inst.size(), max_subset_size,
                      [&](const IndexList& idx) { return phi(inst, SubsetView(cs, idx), seed); });
}

}  // namespace lptest
