// Copyright 2026 The lptest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "lptest/common.hpp"

namespace lptest {

enum class Sense { LessEqual, GreaterEqual };

struct Point {
  Vector coords;
  bool operator==(const Point&) const = default;
};

struct Ball {
  Vector center;
  double radius = 0.0;
  bool operator==(const Ball&) const = default;
};

/// normal . x (sense) offset
struct HalfSpace {
  Vector normal;
  double offset = 0.0;
  Sense sense = Sense::LessEqual;
  bool operator==(const HalfSpace&) const = default;
};

struct LabeledPoint {
  Vector coords;
  int label = 0;
  bool operator==(const LabeledPoint&) const = default;
};

using Constraint = std::variant<Point, Ball, HalfSpace, LabeledPoint>;

inline std::size_t ambient_dimension(const Constraint& c) {
  return std::visit(
      [](const auto& v) -> std::size_t {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return v.center.size();
        } else if constexpr (std::is_same_v<T, HalfSpace>) {
          return v.normal.size();
        } else {
          return v.coords.size();
        }
      },
      c);
}

/// The ground set S as a multiset. Items carry multiplicities; the
/// "expanded" index space [0, size()) repeats each item by its multiplicity
/// and is what samplers draw from.
class ConstraintSet {
 public:
  ConstraintSet() = default;

  ConstraintSet(std::vector<Constraint> items, std::vector<std::size_t> multiplicities, std::size_t dim)
      : items_(std::move(items)), multiplicities_(std::move(multiplicities)), dim_(dim) {
    if (dim_ < 1) throw std::invalid_argument("ConstraintSet: dimension must be >= 1");
    if (items_.size() != multiplicities_.size()) {
      throw std::invalid_argument("ConstraintSet: multiplicities must align with items");
    }
    for (std::size_t i = 0; i < items_.size(); ++i) {
      if (ambient_dimension(items_[i]) != dim_) {
        throw std::invalid_argument("ConstraintSet: item " + std::to_string(i) + " has wrong dimension");
      }
      if (multiplicities_[i] < 1) throw std::invalid_argument("ConstraintSet: multiplicities must be >= 1");
      if (const auto* b = std::get_if<Ball>(&items_[i]); b && !(b->radius >= 0.0)) {
        throw std::invalid_argument("ConstraintSet: ball radius must be nonnegative");
      }
      if (const auto* h = std::get_if<HalfSpace>(&items_[i])) {
        if (std::all_of(h->normal.begin(), h->normal.end(), [](double v) { return v == 0.0; })) {
          throw std::invalid_argument("ConstraintSet: half-space normal must be nonzero");
        }
      }
    }
    prefix_.resize(items_.size() + 1, 0);
    std::partial_sum(multiplicities_.begin(), multiplicities_.end(), prefix_.begin() + 1);
  }

  /// Every item with multiplicity one.
  ConstraintSet(std::vector<Constraint> items, std::size_t dim)
      : ConstraintSet(items, std::vector<std::size_t>(items.size(), 1), dim) {}

  std::size_t dim() const { return dim_; }
  /// Total multiset size n.
  std::size_t size() const { return prefix_.empty() ? 0 : prefix_.back(); }
  std::size_t item_count() const { return items_.size(); }
  const std::vector<Constraint>& items() const { return items_; }
  const std::vector<std::size_t>& multiplicities() const { return multiplicities_; }
  const Constraint& item(std::size_t i) const { return items_.at(i); }

  /// Item index of an expanded index.
  std::size_t item_of(std::size_t expanded) const {
    if (expanded >= size()) throw std::out_of_range("ConstraintSet: expanded index out of range");
    const auto it = std::upper_bound(prefix_.begin(), prefix_.end(), expanded);
    return static_cast<std::size_t>(it - prefix_.begin()) - 1;
  }

  const Constraint& at_expanded(std::size_t expanded) const { return items_[item_of(expanded)]; }

  /// First expanded index belonging to item i.
  std::size_t first_expanded(std::size_t item) const { return prefix_.at(item); }

  bool operator==(const ConstraintSet& o) const {
    return dim_ == o.dim_ && items_ == o.items_ && multiplicities_ == o.multiplicities_;
  }

 private:
  std::vector<Constraint> items_;
  std::vector<std::size_t> multiplicities_;
  std::size_t dim_ = 1;
  std::vector<std::size_t> prefix_{0};
};

/// A subset R of S, as sorted unique indices into the expanded index space.
class SubsetView {
 public:
  SubsetView(const ConstraintSet& parent, IndexList indices) : parent_(&parent), indices_(std::move(indices)) {
    std::sort(indices_.begin(), indices_.end());
    if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
      throw std::invalid_argument("SubsetView: duplicate index");
    }
    if (!indices_.empty() && indices_.back() >= parent.size()) {
      throw std::invalid_argument("SubsetView: index out of range");
    }
  }

  static SubsetView all(const ConstraintSet& parent) {
    IndexList idx(parent.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return SubsetView(parent, std::move(idx));
  }

  const ConstraintSet& parent() const { return *parent_; }
  const IndexList& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  bool contains(std::size_t expanded) const {
    return std::binary_search(indices_.begin(), indices_.end(), expanded);
  }

  /// Distinct items touched by the subset, each paired with the smallest
  /// expanded index that selected it.
  std::vector<std::pair<std::size_t, std::size_t>> distinct_items() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (const auto e : indices_) {
      const auto item = parent_->item_of(e);
      if (out.empty() || out.back().first != item) out.emplace_back(item, e);
    }
    return out;
  }

  SubsetView with(std::size_t expanded) const {
    IndexList idx = indices_;
    idx.push_back(expanded);
    return SubsetView(*parent_, std::move(idx));
  }

  SubsetView without(std::size_t expanded) const {
    IndexList idx;
    idx.reserve(indices_.size());
    for (const auto e : indices_)
      if (e != expanded) idx.push_back(e);
    return SubsetView(*parent_, std::move(idx));
  }

 private:
  const ConstraintSet* parent_;
  IndexList indices_;
};

}  // namespace lptest
