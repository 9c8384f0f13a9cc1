// Copyright 2026 The lptest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "lptest/common.hpp"
#include "lptest/core/constraint_set.hpp"
#include "lptest/core/instance.hpp"
#include "lptest/generators/families.hpp"

namespace lptest::harness {

using Json = nlohmann::json;

inline constexpr const char* kInstanceFormat = "lptest-instance/1";

/// An instance together with the free-form metadata stored beside it
/// (generator spec, seed, effective epsilon, certification, normalization).
struct InstanceFile {
  ProblemInstance instance;
  Json metadata = Json::object();

  bool operator==(const InstanceFile& o) const {
    const auto& a = instance;
    const auto& b = o.instance;
    return a.kind() == b.kind() && a.delta() == b.delta() && a.k() == b.k() &&
           a.feature_degree() == b.feature_degree() && a.constraints() == b.constraints() && metadata == o.metadata;
  }
};

namespace detail {

inline Json constraint_to_json(const Constraint& c) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Point>) {
          return {{"coords", v.coords}};
        } else if constexpr (std::is_same_v<T, Ball>) {
          return {{"center", v.center}, {"radius", v.radius}};
        } else if constexpr (std::is_same_v<T, HalfSpace>) {
          return {{"normal", v.normal}, {"offset", v.offset}, {"sense", v.sense == Sense::LessEqual ? "<=" : ">="}};
        } else {
          return {{"coords", v.coords}, {"label", v.label}};
        }
      },
      c);
}

inline Vector vector_field(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) throw ParseError(std::string("item lacks array field '") + key + "'");
  Vector out;
  for (const auto& x : j.at(key)) {
    if (!x.is_number()) throw ParseError(std::string("non-numeric entry in '") + key + "'");
    out.push_back(x.get<double>());
  }
  return out;
}

inline double number_field(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) throw ParseError(std::string("item lacks number '") + key + "'");
  return j.at(key).get<double>();
}

inline Constraint constraint_from_json(const Json& j, ProblemKind kind) {
  if (!j.is_object()) throw ParseError("item is not an object");
  switch (kind) {
    case ProblemKind::MEB:
    case ProblemKind::Annulus: return Point{vector_field(j, "coords")};
    case ProblemKind::IntersectingBall: return Ball{vector_field(j, "center"), number_field(j, "radius")};
    case ProblemKind::LinearFeasibility: {
      const auto sense = j.value("sense", std::string("<="));
      if (sense != "<=" && sense != ">=") throw ParseError("sense must be '<=' or '>='");
      return HalfSpace{vector_field(j, "normal"), number_field(j, "offset"),
                       sense == "<=" ? Sense::LessEqual : Sense::GreaterEqual};
    }
    case ProblemKind::Separability: {
      if (!j.contains("label") || !j.at("label").is_number_integer()) throw ParseError("item lacks integer label");
      return LabeledPoint{vector_field(j, "coords"), j.at("label").get<int>()};
    }
  }
  throw ParseError("unknown kind");
}

}  // namespace detail

inline Json to_json(const InstanceFile& f) {
  const auto& inst = f.instance;
  Json j;
  j["format"] = kInstanceFormat;
  j["kind"] = to_string(inst.kind());
  j["dim"] = inst.dim();
  j["delta"] = inst.delta();
  j["k"] = inst.k() ? Json(*inst.k()) : Json(nullptr);
  j["feature_degree"] = inst.feature_degree();
  Json items = Json::array();
  for (const auto& c : inst.constraints().items()) items.push_back(detail::constraint_to_json(c));
  j["items"] = std::move(items);
  j["multiplicities"] = inst.constraints().multiplicities();
  j["metadata"] = f.metadata;
  return j;
}

/// Canonical text: two-space indentation, numbers as shortest round-trip
/// decimal strings.
inline std::string serialize(const InstanceFile& f) { return to_json(f).dump(2) + "\n"; }

inline InstanceFile from_json(const Json& j) {
  try {
    if (!j.is_object()) throw ParseError("instance is not a JSON object");
    if (j.value("format", std::string()) != kInstanceFormat) {
      throw ParseError(std::string("unsupported format; expected '") + kInstanceFormat + "'");
    }
    const auto kind = parse_problem_kind(j.at("kind").get<std::string>());
    const auto dim = j.at("dim").get<std::size_t>();
    std::vector<Constraint> items;
    for (const auto& it : j.at("items")) items.push_back(detail::constraint_from_json(it, kind));
    std::vector<std::size_t> mult;
    if (j.contains("multiplicities")) {
      mult = j.at("multiplicities").get<std::vector<std::size_t>>();
    } else {
      mult.assign(items.size(), 1);
    }
    std::optional<double> k;
    if (j.contains("k") && !j.at("k").is_null()) k = j.at("k").get<double>();
    const std::size_t degree = j.value("feature_degree", std::size_t{0});
    ConstraintSet cs(std::move(items), std::move(mult), dim);
    const auto known = known_delta(kind, dim, degree);
    const std::size_t delta = j.value("delta", known);
    InstanceFile f{delta == known ? ProblemInstance(std::move(cs), kind, k, std::nullopt, degree)
                                  : ProblemInstance::with_custom_delta(std::move(cs), kind, delta, k, degree),
                   j.value("metadata", Json::object())};
    return f;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed instance: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid instance: ") + e.what());
  }
}

inline InstanceFile parse(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("not valid JSON: ") + e.what());
  }
  return from_json(j);
}

inline InstanceFile read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

inline void write_instance(const InstanceFile& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << serialize(f);
}

inline Json to_json(const generators::FamilySpec& s) {
  using generators::Family;
  Json j{{"family", generators::to_string(s.family)}, {"d", s.d}, {"n", s.n}, {"epsilon", s.epsilon}, {"seed", s.seed}};
  if (s.family != Family::MomentCurveNear && s.family != Family::MomentCurveFar) j["k"] = s.k;
  if (s.family == Family::RandomFeasible || s.family == Family::RandomFar) j["kind"] = to_string(s.kind);
  return j;
}

inline Json to_json(const generators::Certification& c) {
  Json j{{"method", c.method}, {"certified", c.certified}};
  j["min_removal"] = c.min_removal ? Json(*c.min_removal) : Json(nullptr);
  j["far_fraction"] = c.far_fraction ? Json(*c.far_fraction) : Json(nullptr);
  return j;
}

inline InstanceFile to_instance_file(const generators::GeneratedInstance& g) {
  Json meta;
  meta["generator"] = to_json(g.spec);
  meta["seed"] = g.spec.seed;
  meta["epsilon_effective"] = g.epsilon_effective;
  meta["certification"] = to_json(g.certification);
  return InstanceFile{g.instance, std::move(meta)};
}

/// Affine map applied on ingest: x' = (x - shift) * scale.
struct Normalization {
  Vector shift;
  double scale = 1.0;
  /// Factor applied to the threshold k.
  double k_factor = 1.0;
};

inline Json to_json(const Normalization& n) {
  return {{"shift", n.shift}, {"scale", n.scale}, {"k_factor", n.k_factor}};
}

/// Brings coordinates into [-1, 1]^d. Points and balls are centered on
/// their bounding box and scaled (radii and k scale along; the annulus
/// threshold is a squared radius and scales quadratically). Half-spaces are
/// rescaled to unit normals. Labeled points are only scaled, since
/// homogeneous separation depends on the origin.
inline InstanceFile normalize(const InstanceFile& f) {
  const auto& inst = f.instance;
  const auto& cs = inst.constraints();
  const std::size_t d = cs.dim();
  Normalization nm;
  nm.shift.assign(d, 0.0);
  std::vector<Constraint> items;
  items.reserve(cs.item_count());

  if (inst.kind() == ProblemKind::LinearFeasibility) {
    for (const auto& c : cs.items()) {
      auto h = std::get<HalfSpace>(c);
      const double norm = std::sqrt(dot(h.normal, h.normal));
      for (auto& v : h.normal) v /= norm;
      h.offset /= norm;
      items.emplace_back(std::move(h));
    }
  } else {
    const auto coords = [&](const Constraint& c) -> const Vector& {
      if (const auto* p = std::get_if<Point>(&c)) return p->coords;
      if (const auto* b = std::get_if<Ball>(&c)) return b->center;
      return std::get<LabeledPoint>(c).coords;
    };
    const auto radius = [](const Constraint& c) {
      const auto* b = std::get_if<Ball>(&c);
      return b ? b->radius : 0.0;
    };
    const bool labeled = inst.kind() == ProblemKind::Separability;
    Vector lo(d, std::numeric_limits<double>::infinity());
    Vector hi(d, -std::numeric_limits<double>::infinity());
    for (const auto& c : cs.items()) {
      const auto& x = coords(c);
      for (std::size_t i = 0; i < d; ++i) {
        lo[i] = std::min(lo[i], x[i] - radius(c));
        hi[i] = std::max(hi[i], x[i] + radius(c));
      }
    }
    double half = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      if (!labeled) nm.shift[i] = 0.5 * (lo[i] + hi[i]);
      half = std::max({half, std::abs(hi[i] - nm.shift[i]), std::abs(lo[i] - nm.shift[i])});
    }
    nm.scale = half > 0.0 ? 1.0 / half : 1.0;
    nm.k_factor = inst.kind() == ProblemKind::Annulus ? nm.scale * nm.scale : nm.scale;
    for (const auto& c : cs.items()) {
      Vector x = coords(c);
      for (std::size_t i = 0; i < d; ++i) x[i] = (x[i] - nm.shift[i]) * nm.scale;
      if (std::holds_alternative<Point>(c)) {
        items.emplace_back(Point{std::move(x)});
      } else if (const auto* b = std::get_if<Ball>(&c)) {
        items.emplace_back(Ball{std::move(x), b->radius * nm.scale});
      } else {
        items.emplace_back(LabeledPoint{std::move(x), std::get<LabeledPoint>(c).label});
      }
    }
  }
  std::optional<double> k = inst.k();
  if (k && inst.kind() != ProblemKind::LinearFeasibility) *k *= nm.k_factor;
  ConstraintSet ncs(std::move(items), cs.multiplicities(), d);
  InstanceFile out{inst.delta() == known_delta(inst.kind(), d, inst.feature_degree())
                       ? ProblemInstance(std::move(ncs), inst.kind(), k, std::nullopt, inst.feature_degree())
                       : ProblemInstance::with_custom_delta(std::move(ncs), inst.kind(), inst.delta(), k,
                                                            inst.feature_degree()),
                   f.metadata};
  out.metadata["normalization"] = to_json(nm);
  return out;
}

}  // namespace lptest::harness
