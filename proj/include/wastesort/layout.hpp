#pragma once

#include <cmath>
#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "wastesort/category.hpp"
#include "wastesort/detail/io.hpp"
#include "wastesort/error.hpp"

namespace wastesort {

// A position on the sorting cell's 2D grid, in abstract grid units.
struct Point {
  double x = 0.0;
  double y = 0.0;

  bool is_finite() const noexcept { return std::isfinite(x) && std::isfinite(y); }
  friend constexpr bool operator==(const Point&, const Point&) = default;
};

inline void require_finite(const Point& p, std::string_view what) {
  if (!p.is_finite()) throw DomainError(std::string(what) + " has a non-finite coordinate");
}

inline constexpr double kDefaultWeightFactor = 0.8;

// Home position of the arm plus one bin per category.
struct BinLayout {
  Point home{};
  CategoryMap<Point> bins{};

  friend bool operator==(const BinLayout&, const BinLayout&) = default;
};

// Throws ValidationError unless every point is finite, bins are pairwise
// distinct and none coincides with home.
inline void validate(const BinLayout& layout) {
  if (!layout.home.is_finite()) throw ValidationError("layout home has a non-finite coordinate");
  for (auto c : kAllCategories) {
    const Point& p = layout.bins[c];
    if (!p.is_finite()) {
      throw ValidationError("bin '" + std::string(name_of(c)) + "' has a non-finite coordinate");
    }
    if (p == layout.home) {
      throw ValidationError("bin '" + std::string(name_of(c)) + "' coincides with home");
    }
    for (auto other : kAllCategories) {
      if (index_of(other) <= index_of(c)) continue;
      if (layout.bins[other] == p) {
        throw ValidationError("bins '" + std::string(name_of(c)) + "' and '" +
                              std::string(name_of(other)) + "' coincide");
      }
    }
  }
}

// Home at the origin, plastic at (10,4). The other five positions keep every
// bin in the positive quadrant and put uniform-mix direct-vs-rectilinear
// savings at about 27%.
inline BinLayout default_layout() {
  BinLayout layout;
  layout.home = {0.0, 0.0};
  layout.bins[WasteCategory::cardboard] = {8.0, 6.0};
  layout.bins[WasteCategory::glass] = {6.0, 10.0};
  layout.bins[WasteCategory::metal] = {10.0, 10.0};
  layout.bins[WasteCategory::paper] = {4.0, 6.0};
  layout.bins[WasteCategory::plastic] = {10.0, 4.0};
  layout.bins[WasteCategory::trash] = {6.0, 4.0};
  return layout;
}

// Contents of a layout file: geometry plus the optional weight factor.
struct LayoutDocument {
  BinLayout layout;
  double weight_factor = kDefaultWeightFactor;
};

namespace detail {

inline Point point_from_json(const nlohmann::json& j, std::string_view what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw SchemaError(std::string(what) + " must be a [x, y] pair of numbers");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

inline nlohmann::json point_to_json(const Point& p) { return nlohmann::json::array({p.x, p.y}); }

}  // namespace detail

inline LayoutDocument layout_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw SchemaError("layout document must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (key != "home" && key != "bins" && key != "weight_factor") {
      throw SchemaError("layout: unexpected key '" + key + "'");
    }
  }
  if (!j.contains("home")) throw SchemaError("layout: missing 'home'");
  if (!j.contains("bins") || !j["bins"].is_object()) {
    throw SchemaError("layout: missing 'bins' object");
  }

  LayoutDocument doc;
  doc.layout.home = detail::point_from_json(j["home"], "layout.home");

  const auto& bins = j["bins"];
  for (const auto& [key, value] : bins.items()) {
    if (!try_parse_category(key)) throw SchemaError("layout: unknown bin category '" + key + "'");
  }
  for (auto c : kAllCategories) {
    std::string name(name_of(c));
    if (!bins.contains(name)) throw SchemaError("layout: missing bin for category '" + name + "'");
    doc.layout.bins[c] = detail::point_from_json(bins[name], "layout.bins." + name);
  }

  if (j.contains("weight_factor")) {
    const auto& w = j["weight_factor"];
    if (!w.is_number()) throw SchemaError("layout: weight_factor must be a number");
    doc.weight_factor = w.get<double>();
    if (!(doc.weight_factor > 0.0) || !std::isfinite(doc.weight_factor)) {
      throw ValidationError("layout: weight_factor must be positive and finite");
    }
  }

  validate(doc.layout);
  return doc;
}

inline nlohmann::json layout_to_json(const BinLayout& layout,
                                     double weight_factor = kDefaultWeightFactor) {
  nlohmann::json bins = nlohmann::json::object();
  for (auto c : kAllCategories) bins[std::string(name_of(c))] = detail::point_to_json(layout.bins[c]);
  return {{"home", detail::point_to_json(layout.home)},
          {"bins", std::move(bins)},
          {"weight_factor", weight_factor}};
}

inline LayoutDocument parse_layout_document(std::string_view text, std::string_view source = "layout") {
  return layout_from_json(detail::parse_json(text, source));
}

inline LayoutDocument load_layout_document(const std::filesystem::path& path) {
  return parse_layout_document(detail::read_text_file(path), path.string());
}

inline BinLayout load_layout(const std::filesystem::path& path) {
  return load_layout_document(path).layout;
}

inline void save_layout(const std::filesystem::path& path, const BinLayout& layout,
                        double weight_factor = kDefaultWeightFactor) {
  detail::write_text_file(path, detail::dump_json(layout_to_json(layout, weight_factor)));
}

}  // namespace wastesort
