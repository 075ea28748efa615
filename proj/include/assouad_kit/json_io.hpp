#ifndef ASSOUAD_KIT_JSON_IO_HPP
#define ASSOUAD_KIT_JSON_IO_HPP

#include <fstream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "assouad_kit/closed_form.hpp"
#include "assouad_kit/error.hpp"
#include "assouad_kit/estimators.hpp"
#include "assouad_kit/families.hpp"
#include "assouad_kit/ifs.hpp"

namespace akit {

using json = nlohmann::json;

inline constexpr const char* kSpecSchema = "assouad-kit/spec v1";
inline constexpr const char* kReportSchema = "assouad-kit/report v1";

/// What `generate` and `dimension` take: one shape plus optional measure weights.
struct GeneratorSpec {
  std::variant<IfsSpec, CarpetSpec, SequenceSpec, SpiralSpec> shape;
  std::vector<double> weights;

  bool is_ifs() const noexcept { return std::holds_alternative<IfsSpec>(shape); }
  bool is_carpet() const noexcept { return std::holds_alternative<CarpetSpec>(shape); }

  /// The weighted measure, or uniform weights when none were given.
  WeightedMeasureSpec measure() const {
    WeightedMeasureSpec mu;
    if (is_carpet()) mu.base = std::get<CarpetSpec>(shape);
    else if (is_ifs()) mu.base = std::get<IfsSpec>(shape);
    else fail(ErrorKind::invalid_argument, "only IFS and carpet specs carry a measure");
    mu.weights = weights;
    if (mu.weights.empty()) mu.weights.assign(mu.letters(), 1.0 / static_cast<double>(mu.letters()));
    mu.validate();
    return mu;
  }
};

namespace detail {

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) fail(ErrorKind::invalid_argument, std::string("spec is missing \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorKind::invalid_argument, std::string("bad \"") + key + "\": " + e.what());
  }
}

template <class T>
T field_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? field<T>(j, key) : fallback;
}

/// Similarity when A^T A is a multiple of the identity.
inline AffineMap make_map(std::vector<double> linear, std::vector<double> translation) {
  const std::size_t d = translation.size();
  require(d >= 1 && linear.size() == d * d, "map needs d*d linear entries and d translation entries");
  AffineMap f{std::move(linear), std::move(translation), MapKind::affine, 0.0};
  Eigen::MatrixXd a = f.matrix();
  Eigen::MatrixXd gram = a.transpose() * a;
  const double c2 = gram(0, 0);
  const auto n = static_cast<Eigen::Index>(d);
  if (c2 > 0.0 && (gram - c2 * Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, c2)) {
    f.kind = MapKind::similarity;
    f.ratio = std::sqrt(c2);
  }
  return f;
}

}  // namespace detail

inline GeneratorSpec spec_from_json(const json& j) {
  if (!j.is_object()) fail(ErrorKind::invalid_argument, "spec must be a JSON object");
  if (j.contains("schema") && j.at("schema") != kSpecSchema)
    fail(ErrorKind::invalid_argument, "unsupported spec schema " + j.at("schema").dump());
  const auto type = detail::field<std::string>(j, "type");
  GeneratorSpec g;
  g.weights = detail::field_or<std::vector<double>>(j, "weights", {});
  if (type == "ifs") {
    IfsSpec s;
    s.dim = detail::field_or<std::size_t>(j, "dim", 1);
    if (j.contains("ratios")) {
      s = IfsSpec::similarities_1d(detail::field<std::vector<double>>(j, "ratios"),
                                   detail::field<std::vector<double>>(j, "shifts"));
    } else {
      for (const auto& m : detail::field<json>(j, "maps"))
        s.maps.push_back(detail::make_map(detail::field<std::vector<double>>(m, "linear"),
                                          detail::field<std::vector<double>>(m, "translation")));
    }
    s.validate();
    g.shape = std::move(s);
  } else if (type == "carpet") {
    CarpetSpec c;
    c.m = detail::field<int>(j, "m");
    c.n = detail::field<int>(j, "n");
    for (const auto& cell : detail::field<std::vector<std::vector<int>>>(j, "cells")) {
      require(cell.size() == 2, "carpet cells are [column, row] pairs");
      c.cells.emplace_back(cell[0], cell[1]);
    }
    c.validate();
    g.shape = std::move(c);
  } else if (type == "sequence") {
    SequenceSpec s;
    s.n_max = detail::field_or<std::uint64_t>(j, "n_max", s.n_max);
    const auto family = detail::field<std::string>(j, "family");
    if (family == "polynomial") s.kind = PolynomialSequence{detail::field<double>(j, "p")};
    else if (family == "reciprocal") s.kind = ReciprocalSequence{detail::field<std::vector<std::uint64_t>>(j, "xs")};
    else if (family == "geometric") s.kind = GeometricSequence{detail::field<double>(j, "c")};
    else fail(ErrorKind::invalid_argument, "unknown sequence family \"" + family + "\"");
    s.validate();
    g.shape = std::move(s);
  } else if (type == "spiral") {
    SpiralSpec s = SpiralSpec::with_turns(detail::field<double>(j, "p"), detail::field_or<double>(j, "turns", 1.0));
    s.samples_per_turn = detail::field_or<std::uint64_t>(j, "samples_per_turn", s.samples_per_turn);
    s.max_chord = detail::field_or<double>(j, "max_chord", 0.0);
    s.validate();
    g.shape = std::move(s);
  } else {
    fail(ErrorKind::invalid_argument, "unknown spec type \"" + type + "\"");
  }
  if (!g.weights.empty()) g.measure();
  return g;
}

inline json spec_to_json(const GeneratorSpec& g) {
  json j{{"schema", kSpecSchema}};
  if (const auto* s = std::get_if<IfsSpec>(&g.shape)) {
    j["type"] = "ifs";
    j["dim"] = s->dim;
    json maps = json::array();
    for (const auto& f : s->maps) maps.push_back({{"linear", f.linear}, {"translation", f.translation}});
    j["maps"] = maps;
  } else if (const auto* c = std::get_if<CarpetSpec>(&g.shape)) {
    j["type"] = "carpet";
    j["m"] = c->m;
    j["n"] = c->n;
    json cells = json::array();
    for (auto [a, b] : c->cells) cells.push_back({a, b});
    j["cells"] = cells;
  } else if (const auto* q = std::get_if<SequenceSpec>(&g.shape)) {
    j["type"] = "sequence";
    j["n_max"] = q->n_max;
    if (const auto* p = std::get_if<PolynomialSequence>(&q->kind)) {
      j["family"] = "polynomial";
      j["p"] = p->p;
    } else if (const auto* r = std::get_if<ReciprocalSequence>(&q->kind)) {
      j["family"] = "reciprocal";
      j["xs"] = r->xs;
    } else {
      j["family"] = "geometric";
      j["c"] = std::get<GeometricSequence>(q->kind).c;
    }
  } else {
    const auto& s = std::get<SpiralSpec>(g.shape);
    j["type"] = "spiral";
    j["p"] = s.p;
    j["turns"] = (s.x_max - 1.0) / (2.0 * std::numbers::pi);
    j["samples_per_turn"] = s.samples_per_turn;
    j["max_chord"] = s.max_chord;
  }
  if (!g.weights.empty()) j["weights"] = g.weights;
  return j;
}

inline std::vector<std::string> preset_names() {
  return {"cantor", "three-maps", "carpet-2x3", "carpet-3x5", "carpet-2x4-weighted", "sequence-1/n", "spiral-1"};
}

/// Built-in specs used by the examples and verify suites.
inline GeneratorSpec preset(const std::string& name) {
  if (name == "cantor") return spec_from_json({{"type", "ifs"}, {"ratios", {1.0 / 3, 1.0 / 3}}, {"shifts", {0.0, 2.0 / 3}}});
  if (name == "three-maps")
    return spec_from_json({{"type", "ifs"}, {"ratios", {1.0 / 3, 0.5, 0.125}}, {"shifts", {0.0, 0.35, 0.875}}});
  if (name == "carpet-2x3") return spec_from_json({{"type", "carpet"}, {"m", 2}, {"n", 3}, {"cells", {{0, 0}, {0, 2}, {1, 1}}}});
  if (name == "carpet-3x5")
    return spec_from_json({{"type", "carpet"}, {"m", 3}, {"n", 5}, {"cells", {{0, 2}, {2, 0}, {2, 2}, {2, 4}}}});
  if (name == "carpet-2x4-weighted")
    return spec_from_json(
        {{"type", "carpet"}, {"m", 2}, {"n", 4}, {"cells", {{0, 0}, {1, 0}, {0, 3}}}, {"weights", {0.5, 0.3, 0.2}}});
  if (name == "sequence-1/n") return spec_from_json({{"type", "sequence"}, {"family", "polynomial"}, {"p", 1.0}});
  if (name == "spiral-1") return spec_from_json({{"type", "spiral"}, {"p", 1.0}, {"turns", 16.0}});
  std::string known;
  for (const auto& n : preset_names()) known += " " + n;
  fail(ErrorKind::invalid_argument, "unknown preset \"" + name + "\"; known:" + known);
}

inline GeneratorSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::io, "cannot open spec " + path);
  try {
    return spec_from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    fail(ErrorKind::invalid_argument, "spec " + path + " is not valid JSON: " + e.what());
  }
}

// Reports

inline json to_json(const DimensionReport& r) {
  json j = json::object();
  auto put = [&](const char* key, const std::optional<DimensionEntry>& e) {
    if (e) j[key] = {{"value", e->value}, {"source", e->source}};
  };
  put("lower", r.lower);
  put("hausdorff", r.hausdorff);
  put("box_lower", r.box_lower);
  put("box_upper", r.box_upper);
  put("assouad", r.assouad);
  put("quasi_assouad", r.quasi_assouad);
  j["lattice_holds"] = r.lattice_holds();
  j["warnings"] = r.warnings;
  return j;
}

inline json to_json(const MeasureDimensions& m) {
  return {{"assouad", m.assouad}, {"box", m.box}, {"lower", m.lower}, {"hausdorff", m.hausdorff}, {"warnings", m.warnings}};
}

inline json to_json(const FitReport& r) {
  json samples = json::array();
  for (const auto& s : r.samples) samples.push_back({{"k", s.k}, {"x", s.x}, {"y", s.y}});
  return {{"estimate", r.estimate}, {"k_min", r.k_min},       {"k_max", r.k_max},
          {"residual", r.residual}, {"n_scales", r.n_scales}, {"method", r.method},
          {"samples", samples},     {"diagnostics", r.diagnostics}};
}

inline json to_json(const SpectrumCurve& c) {
  return {{"kind", c.kind == SpectrumCurve::Kind::assouad ? "assouad" : "lower"},
          {"source", c.source},
          {"theta", c.theta},
          {"values", c.values}};
}

}  // namespace akit

#endif  // ASSOUAD_KIT_JSON_IO_HPP
