#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "wastesort/category.hpp"
#include "wastesort/detail/hungarian.hpp"
#include "wastesort/detail/io.hpp"
#include "wastesort/error.hpp"
#include "wastesort/layout.hpp"
#include "wastesort/motion.hpp"

namespace wastesort {

// Share of items per category, canonical order, summing to 1.
class FrequencyDistribution {
public:
  static constexpr double kSumTolerance = 1e-9;

  FrequencyDistribution() : FrequencyDistribution(uniform()) {}

  explicit FrequencyDistribution(const CategoryMap<double>& freq) : freq_(freq) {
    double sum = 0.0;
    for (double f : freq_) {
      if (!(f >= 0.0) || !std::isfinite(f)) throw ValidationError("frequencies must be finite and non-negative");
      sum += f;
    }
    if (std::abs(sum - 1.0) > kSumTolerance) {
      throw ValidationError(fmt::format("frequencies sum to {}, not 1", sum));
    }
  }

  static FrequencyDistribution uniform() {
    CategoryMap<double> f;
    for (double& v : f) v = 1.0 / static_cast<double>(kNumCategories);
    return FrequencyDistribution(f);
  }

  static FrequencyDistribution point_mass(WasteCategory c) {
    CategoryMap<double> f;
    f[c] = 1.0;
    return FrequencyDistribution(f);
  }

  double operator[](WasteCategory c) const noexcept { return freq_[c]; }
  const CategoryMap<double>& values() const noexcept { return freq_; }

private:
  CategoryMap<double> freq_;
};

// Candidate bin positions: finite and pairwise distinct. The optimizers
// additionally need at least six.
class SlotSet {
public:
  explicit SlotSet(std::vector<Point> slots) : slots_(std::move(slots)) {
    for (std::size_t i = 0; i < slots_.size(); ++i) {
      if (!slots_[i].is_finite()) throw ValidationError(fmt::format("slot {} has a non-finite coordinate", i));
      for (std::size_t j = 0; j < i; ++j) {
        if (slots_[i] == slots_[j]) throw ValidationError(fmt::format("slots {} and {} coincide", j, i));
      }
    }
  }

  std::size_t size() const noexcept { return slots_.size(); }
  const Point& operator[](std::size_t i) const noexcept { return slots_[i]; }
  const std::vector<Point>& points() const noexcept { return slots_; }

private:
  std::vector<Point> slots_;
};

struct AssignmentSolution {
  CategoryMap<std::size_t> slot_of{};  // slot index per category
  double expected_energy = 0.0;        // energy units per item
  std::vector<std::size_t> unused_slots;

  // Assignment vector in canonical category order, used for tie-breaking.
  std::vector<std::size_t> assignment_vector() const {
    return {slot_of.values.begin(), slot_of.values.end()};
  }
};

// Sum over categories of freq * w * move length from home to the bin.
inline double expected_energy(const BinLayout& layout, const FrequencyDistribution& freq, const EnergyModel& model,
                              MovementPolicy policy) {
  double total = 0.0;
  for (auto c : kAllCategories) {
    total += freq[c] * energy_cost(move_length(policy, layout.home, layout.bins[c]), model);
  }
  return total;
}

namespace detail {

inline constexpr double kTieTolerance = 1e-12;

// Row-major kNumCategories x slots matrix of freq[c] * w * length(home -> slot).
inline std::vector<double> assignment_costs(const SlotSet& slots, const FrequencyDistribution& freq,
                                            const EnergyModel& model, MovementPolicy policy, const Point& home) {
  require_finite(home, "home");
  std::vector<double> cost(kNumCategories * slots.size());
  for (auto c : kAllCategories) {
    for (std::size_t s = 0; s < slots.size(); ++s) {
      cost[index_of(c) * slots.size() + s] =
          freq[c] * energy_cost(move_length(policy, home, slots[s]), model);
    }
  }
  return cost;
}

// Objective for an assignment, summed in canonical category order so every
// solver reports bit-identical energies for the same assignment.
inline double assignment_cost(std::span<const double> cost, std::size_t cols,
                              std::span<const std::size_t> assignment) {
  double total = 0.0;
  for (std::size_t r = 0; r < assignment.size(); ++r) total += cost[r * cols + assignment[r]];
  return total;
}

inline bool within_tie(double candidate, double optimum) noexcept {
  return candidate <= optimum + kTieTolerance * std::max(1.0, std::abs(optimum));
}

inline void require_enough_slots(const SlotSet& slots) {
  if (slots.size() < kNumCategories) {
    throw DomainError(fmt::format("need at least {} slots, got {}", kNumCategories, slots.size()));
  }
}

inline AssignmentSolution make_solution(std::span<const double> cost, std::size_t cols,
                                        const std::vector<std::size_t>& assignment) {
  AssignmentSolution sol;
  std::vector<char> used(cols, 0);
  for (std::size_t r = 0; r < kNumCategories; ++r) {
    sol.slot_of.values[r] = assignment[r];
    used[assignment[r]] = 1;
  }
  sol.expected_energy = assignment_cost(cost, cols, assignment);
  for (std::size_t s = 0; s < cols; ++s) {
    if (!used[s]) sol.unused_slots.push_back(s);
  }
  return sol;
}

// Calls visit(assignment) for every injective map of `rows` rows into
// `cols` columns, in lexicographic order of the assignment vector.
template <typename Visitor>
void for_each_injection(std::size_t rows, std::size_t cols, Visitor&& visit) {
  std::vector<std::size_t> current(rows, 0);
  std::vector<char> used(cols, 0);
  std::function<void(std::size_t)> recurse = [&](std::size_t row) {
    if (row == rows) {
      visit(std::as_const(current));
      return;
    }
    for (std::size_t col = 0; col < cols; ++col) {
      if (used[col]) continue;
      used[col] = 1;
      current[row] = col;
      recurse(row + 1);
      used[col] = 0;
    }
  };
  recurse(0);
}

// Optimal cost of assigning `rows` to the columns not in `taken`, via the
// Hungarian solver on the reduced matrix.
inline double residual_optimum(std::span<const double> cost, std::size_t cols, std::size_t first_row,
                               const std::vector<char>& taken) {
  const std::size_t rows = kNumCategories - first_row;
  if (rows == 0) return 0.0;
  std::vector<std::size_t> free_cols;
  for (std::size_t s = 0; s < cols; ++s) {
    if (!taken[s]) free_cols.push_back(s);
  }
  std::vector<double> reduced(rows * free_cols.size());
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
      reduced[r * free_cols.size() + k] = cost[(first_row + r) * cols + free_cols[k]];
    }
  }
  auto sub = hungarian_rectangular(reduced, rows, free_cols.size());
  return assignment_cost(reduced, free_cols.size(), sub);
}

}  // namespace detail

// Exhaustive search over every injective category -> slot map (720 for six
// slots). Among assignments within the tie tolerance of the minimum, the
// lexicographically smallest assignment vector wins.
inline AssignmentSolution optimize_assignment_exact(const SlotSet& slots, const FrequencyDistribution& freq,
                                                    const EnergyModel& model, MovementPolicy policy,
                                                    const Point& home) {
  detail::require_enough_slots(slots);
  const auto cost = detail::assignment_costs(slots, freq, model, policy, home);
  const std::size_t cols = slots.size();

  double best = std::numeric_limits<double>::infinity();
  detail::for_each_injection(kNumCategories, cols, [&](const std::vector<std::size_t>& a) {
    best = std::min(best, detail::assignment_cost(cost, cols, a));
  });

  std::vector<std::size_t> chosen;
  detail::for_each_injection(kNumCategories, cols, [&](const std::vector<std::size_t>& a) {
    if (chosen.empty() && detail::within_tie(detail::assignment_cost(cost, cols, a), best)) chosen = a;
  });
  return detail::make_solution(cost, cols, chosen);
}

// Same objective solved in polynomial time. The optimum comes from one
// Hungarian solve; the lexicographically smallest optimal assignment is then
// fixed category by category, re-solving the residual problem for each
// candidate slot.
inline AssignmentSolution optimize_assignment_hungarian(const SlotSet& slots, const FrequencyDistribution& freq,
                                                        const EnergyModel& model, MovementPolicy policy,
                                                        const Point& home) {
  detail::require_enough_slots(slots);
  const auto cost = detail::assignment_costs(slots, freq, model, policy, home);
  const std::size_t cols = slots.size();

  const auto first = detail::hungarian_rectangular(cost, kNumCategories, cols);
  const double optimum = detail::assignment_cost(cost, cols, first);

  std::vector<std::size_t> chosen(kNumCategories, 0);
  std::vector<char> taken(cols, 0);
  double fixed = 0.0;
  for (std::size_t row = 0; row < kNumCategories; ++row) {
    bool placed = false;
    for (std::size_t s = 0; s < cols && !placed; ++s) {
      if (taken[s]) continue;
      taken[s] = 1;
      const double candidate =
          fixed + cost[row * cols + s] + detail::residual_optimum(cost, cols, row + 1, taken);
      if (detail::within_tie(candidate, optimum)) {
        chosen[row] = s;
        fixed += cost[row * cols + s];
        placed = true;
      } else {
        taken[s] = 0;
      }
    }
    if (!placed) {
      // Only reachable if rounding pushes every completion past the
      // tolerance; fall back to the unrefined optimum.
      return detail::make_solution(cost, cols, first);
    }
  }
  return detail::make_solution(cost, cols, chosen);
}

enum class OptimizeMethod { exact, hungarian };

inline std::optional<OptimizeMethod> try_parse_method(std::string_view name) noexcept {
  if (name == "exact") return OptimizeMethod::exact;
  if (name == "hungarian") return OptimizeMethod::hungarian;
  return std::nullopt;
}

constexpr std::string_view name_of(OptimizeMethod m) noexcept {
  return m == OptimizeMethod::exact ? "exact" : "hungarian";
}

inline AssignmentSolution optimize_assignment(OptimizeMethod method, const SlotSet& slots,
                                              const FrequencyDistribution& freq, const EnergyModel& model,
                                              MovementPolicy policy, const Point& home) {
  return method == OptimizeMethod::exact ? optimize_assignment_exact(slots, freq, model, policy, home)
                                         : optimize_assignment_hungarian(slots, freq, model, policy, home);
}

// Expected energy of the unoptimized order: category i in slot i.
inline double canonical_order_energy(const SlotSet& slots, const FrequencyDistribution& freq,
                                     const EnergyModel& model, MovementPolicy policy, const Point& home) {
  detail::require_enough_slots(slots);
  const auto cost = detail::assignment_costs(slots, freq, model, policy, home);
  std::vector<std::size_t> identity(kNumCategories);
  for (std::size_t i = 0; i < kNumCategories; ++i) identity[i] = i;
  return detail::assignment_cost(cost, slots.size(), identity);
}

// Slots file: {"slots": [[x, y], ...]}. Optional "home": [x, y], default origin.
struct SlotsDocument {
  SlotSet slots;
  Point home{};
};

inline SlotsDocument slots_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("slots") || !j["slots"].is_array()) {
    throw SchemaError("slots document must be an object with a 'slots' array");
  }
  std::vector<Point> points;
  for (std::size_t i = 0; i < j["slots"].size(); ++i) {
    points.push_back(detail::point_from_json(j["slots"][i], fmt::format("slots[{}]", i)));
  }
  Point home{};
  if (j.contains("home")) home = detail::point_from_json(j["home"], "home");
  return {SlotSet(std::move(points)), home};
}

inline SlotsDocument load_slots(const std::filesystem::path& path) {
  return slots_from_json(detail::read_json_file(path));
}

// Frequency file: {"freq": {"cardboard": f, ...}}, all six keys.
inline FrequencyDistribution frequency_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("freq") || !j["freq"].is_object()) {
    throw SchemaError("frequency document must be an object with a 'freq' object");
  }
  const auto& f = j["freq"];
  for (const auto& item : f.items()) {
    if (!try_parse_category(item.key())) throw SchemaError("freq: unknown category '" + item.key() + "'");
  }
  CategoryMap<double> values;
  for (auto c : kAllCategories) {
    std::string name(name_of(c));
    if (!f.contains(name) || !f[name].is_number()) {
      throw SchemaError("freq: missing numeric entry for '" + name + "'");
    }
    values[c] = f[name].get<double>();
  }
  return FrequencyDistribution(values);
}

inline FrequencyDistribution load_frequency(const std::filesystem::path& path) {
  return frequency_from_json(detail::read_json_file(path));
}

}  // namespace wastesort
