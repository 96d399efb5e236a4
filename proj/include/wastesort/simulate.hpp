#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "wastesort/category.hpp"
#include "wastesort/classify.hpp"
#include "wastesort/error.hpp"
#include "wastesort/layout.hpp"
#include "wastesort/motion.hpp"
#include "wastesort/version.hpp"

namespace wastesort {

struct SimulationOptions {
  MovementPolicy policy = MovementPolicy::direct;
  // Also charge the trip back from the bin to home (same length).
  bool count_return = false;
};

// One item's trip to the bin of its predicted label.
struct SortEvent {
  std::string item_id;
  WasteCategory true_label = WasteCategory::cardboard;
  WasteCategory predicted_label = WasteCategory::cardboard;
  std::optional<Path> path;  // outbound path; empty for a zero-length move
  double distance = 0.0;     // travelled distance, including the return leg when counted
  double energy = 0.0;
  bool misplaced = false;
};

struct BaselineComparison {
  MovementPolicy baseline_policy = MovementPolicy::rectilinear;
  double baseline_total = 0.0;
  double savings_fraction = 0.0;

  // The "optimized" policy cost more than the baseline.
  bool regression() const noexcept { return savings_fraction < 0.0; }
};

struct SimulationReport {
  std::size_t item_count = 0;
  double total_energy = 0.0;
  CategoryMap<double> per_category_energy{};  // keyed by predicted (visited) bin
  std::size_t misplaced_count = 0;
  double misplacement_rate = 0.0;
  double mean_energy_per_item = 0.0;
  MovementPolicy policy = MovementPolicy::direct;
  bool count_return = false;
  double weight_factor = kDefaultWeightFactor;
  std::optional<BaselineComparison> baseline_comparison;
};

struct SimulationResult {
  std::vector<SortEvent> events;
  SimulationReport report;
};

inline SortEvent simulate_item(const BinLayout& layout, const EnergyModel& model, const SimulationOptions& options,
                               const PredictionRecord& record) {
  SortEvent e;
  e.item_id = record.item_id;
  e.true_label = record.true_label;
  e.predicted_label = record.predicted_label;
  e.misplaced = record.true_label != record.predicted_label;
  e.path = plan_path(options.policy, layout.home, layout.bins[record.predicted_label]);
  const double outbound = e.path ? path_length(*e.path) : 0.0;
  e.distance = options.count_return ? 2.0 * outbound : outbound;
  e.energy = energy_cost(e.distance, model);
  return e;
}

// Classify-then-move for each record in order: the arm goes from home to the
// bin of the predicted label, so misclassified items land in the wrong bin.
inline SimulationResult run_simulation(const BinLayout& layout, const EnergyModel& model,
                                       const SimulationOptions& options,
                                       std::span<const PredictionRecord> predictions) {
  if (predictions.empty()) throw DomainError("simulation needs at least one prediction");
  validate(layout);

  SimulationResult result;
  result.events.reserve(predictions.size());
  auto& report = result.report;
  report.policy = options.policy;
  report.count_return = options.count_return;
  report.weight_factor = model.weight_factor();

  for (const auto& record : predictions) {
    auto event = simulate_item(layout, model, options, record);
    report.per_category_energy[event.predicted_label] += event.energy;
    if (event.misplaced) ++report.misplaced_count;
    result.events.push_back(std::move(event));
  }

  report.item_count = predictions.size();
  for (double e : report.per_category_energy) report.total_energy += e;
  const auto n = static_cast<double>(report.item_count);
  report.misplacement_rate = static_cast<double>(report.misplaced_count) / n;
  report.mean_energy_per_item = report.total_energy / n;
  return result;
}

inline SimulationResult run_simulation(const BinLayout& layout, const EnergyModel& model, MovementPolicy policy,
                                       std::span<const PredictionRecord> predictions) {
  return run_simulation(layout, model, SimulationOptions{policy, false}, predictions);
}

// Runs both policies on the same predictions and returns the optimized
// run's report with the baseline comparison filled in.
inline SimulationReport compare_policies(const BinLayout& layout, const EnergyModel& model,
                                         std::span<const PredictionRecord> predictions, MovementPolicy baseline,
                                         MovementPolicy optimized, bool count_return = false) {
  const auto base = run_simulation(layout, model, {baseline, count_return}, predictions);
  auto report = run_simulation(layout, model, {optimized, count_return}, predictions).report;
  report.baseline_comparison = BaselineComparison{
      baseline, base.report.total_energy, savings_ratio(base.report.total_energy, report.total_energy)};
  return report;
}

inline nlohmann::json report_to_json(const SimulationReport& r) {
  nlohmann::json per_category = nlohmann::json::object();
  for (auto c : kAllCategories) per_category[std::string(name_of(c))] = r.per_category_energy[c];

  nlohmann::json j = {
      {"tool_version", std::string(kVersion)},
      {"policy", std::string(name_of(r.policy))},
      {"count_return", r.count_return},
      {"weight_factor", r.weight_factor},
      {"item_count", r.item_count},
      {"total_energy", r.total_energy},
      {"per_category_energy", std::move(per_category)},
      {"misplaced_count", r.misplaced_count},
      {"misplacement_rate", r.misplacement_rate},
      {"mean_energy_per_item", r.mean_energy_per_item},
  };
  if (r.baseline_comparison) {
    const auto& b = *r.baseline_comparison;
    j["baseline_comparison"] = {
        {"baseline_policy", std::string(name_of(b.baseline_policy))},
        {"baseline_total", b.baseline_total},
        {"savings_fraction", b.savings_fraction},
        {"regression", b.regression()},
    };
  } else {
    j["baseline_comparison"] = nullptr;
  }
  return j;
}

inline constexpr std::string_view kEventsHeader = "item_id,true_label,pred_label,distance,energy,misplaced";

inline std::string format_events(std::span<const SortEvent> events) {
  std::string out(kEventsHeader);
  out += '\n';
  for (const auto& e : events) {
    out += fmt::format("{},{},{},{:.6f},{:.6f},{}\n", e.item_id, name_of(e.true_label), name_of(e.predicted_label),
                       e.distance, e.energy, e.misplaced ? "true" : "false");
  }
  return out;
}

}  // namespace wastesort
