#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "wastesort/error.hpp"

namespace wastesort {

// The six waste classes in canonical (alphabetical) order. The numeric value
// is the index used in every probability vector and matrix row.
enum class WasteCategory : std::size_t {
  cardboard = 0,
  glass = 1,
  metal = 2,
  paper = 3,
  plastic = 4,
  trash = 5,
};

inline constexpr std::size_t kNumCategories = 6;

inline constexpr std::array<WasteCategory, kNumCategories> kAllCategories = {
    WasteCategory::cardboard, WasteCategory::glass,   WasteCategory::metal,
    WasteCategory::paper,     WasteCategory::plastic, WasteCategory::trash,
};

inline constexpr std::array<std::string_view, kNumCategories> kCategoryNames = {
    "cardboard", "glass", "metal", "paper", "plastic", "trash",
};

constexpr std::size_t index_of(WasteCategory c) noexcept {
  return static_cast<std::size_t>(c);
}

constexpr std::string_view name_of(WasteCategory c) noexcept {
  return kCategoryNames[index_of(c)];
}

inline WasteCategory category_at(std::size_t index) {
  if (index >= kNumCategories) {
    throw DomainError("category index out of range: " + std::to_string(index));
  }
  return static_cast<WasteCategory>(index);
}

// Exact, case-sensitive match on the lowercase canonical name.
constexpr std::optional<WasteCategory> try_parse_category(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kNumCategories; ++i) {
    if (kCategoryNames[i] == name) return static_cast<WasteCategory>(i);
  }
  return std::nullopt;
}

inline WasteCategory parse_category(std::string_view name) {
  if (auto c = try_parse_category(name)) return *c;
  throw SchemaError("unknown waste category '" + std::string(name) + "'");
}

// Dense per-category storage indexed by WasteCategory.
template <typename T>
struct CategoryMap {
  std::array<T, kNumCategories> values{};

  constexpr T& operator[](WasteCategory c) noexcept { return values[index_of(c)]; }
  constexpr const T& operator[](WasteCategory c) const noexcept { return values[index_of(c)]; }

  constexpr auto begin() noexcept { return values.begin(); }
  constexpr auto end() noexcept { return values.end(); }
  constexpr auto begin() const noexcept { return values.begin(); }
  constexpr auto end() const noexcept { return values.end(); }

  friend constexpr bool operator==(const CategoryMap&, const CategoryMap&) = default;
};

}  // namespace wastesort
