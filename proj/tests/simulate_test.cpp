#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "wastesort/simulate.hpp"

namespace wastesort {
namespace {

PredictionRecord record(std::string id, WasteCategory t, WasteCategory p) {
  PredictionRecord r;
  r.item_id = std::move(id);
  r.true_label = t;
  r.predicted_label = p;
  r.probabilities[index_of(p)] = 1.0;
  return r;
}

std::vector<PredictionRecord> uniform_all_correct(std::size_t n) {
  std::vector<PredictionRecord> rs;
  for (std::size_t i = 0; i < n; ++i) {
    auto c = category_at(i % kNumCategories);
    rs.push_back(record("item" + std::to_string(i), c, c));
  }
  return rs;
}

TEST(RunSimulation, SinglePlasticDirect) {
  const std::vector rs = {record("p", WasteCategory::plastic, WasteCategory::plastic)};
  const auto result = run_simulation(default_layout(), EnergyModel(0.8), MovementPolicy::direct, rs);
  ASSERT_EQ(result.events.size(), 1u);
  const auto& e = result.events[0];
  EXPECT_NEAR(e.distance, 10.7703, 1e-4);
  EXPECT_NEAR(e.energy, 8.6162, 1e-3);
  EXPECT_FALSE(e.misplaced);
  ASSERT_TRUE(e.path);
  EXPECT_EQ(e.path->waypoints().size(), 2u);
  EXPECT_DOUBLE_EQ(result.report.total_energy, e.energy);
  EXPECT_EQ(result.report.misplacement_rate, 0.0);
}

TEST(RunSimulation, SinglePlasticRectilinear) {
  const std::vector rs = {record("p", WasteCategory::plastic, WasteCategory::plastic)};
  const auto result = run_simulation(default_layout(), EnergyModel(0.8), MovementPolicy::rectilinear, rs);
  EXPECT_DOUBLE_EQ(result.events[0].distance, 14.0);
  EXPECT_NEAR(result.events[0].energy, 11.2, 1e-12);
  EXPECT_EQ(result.events[0].path->waypoints().size(), 3u);
}

TEST(RunSimulation, MisclassifiedGoesToPredictedBin) {
  const std::vector rs = {record("g", WasteCategory::glass, WasteCategory::plastic)};
  const auto result = run_simulation(default_layout(), EnergyModel(0.8), MovementPolicy::direct, rs);
  const auto& e = result.events[0];
  EXPECT_TRUE(e.misplaced);
  EXPECT_EQ(e.path->destination(), (Point{10, 4}));
  EXPECT_DOUBLE_EQ(result.report.per_category_energy[WasteCategory::plastic], e.energy);
  EXPECT_EQ(result.report.per_category_energy[WasteCategory::glass], 0.0);
  EXPECT_EQ(result.report.misplacement_rate, 1.0);
}

TEST(RunSimulation, EmptyInputIsDomainError) {
  EXPECT_THROW(run_simulation(default_layout(), EnergyModel{}, MovementPolicy::direct, {}), DomainError);
}

TEST(RunSimulation, CountReturnDoublesEnergy) {
  const std::vector rs = {record("p", WasteCategory::plastic, WasteCategory::plastic)};
  const auto one_way = run_simulation(default_layout(), EnergyModel{}, {MovementPolicy::direct, false}, rs);
  const auto round_trip = run_simulation(default_layout(), EnergyModel{}, {MovementPolicy::direct, true}, rs);
  EXPECT_DOUBLE_EQ(round_trip.report.total_energy, 2 * one_way.report.total_energy);
  EXPECT_DOUBLE_EQ(round_trip.events[0].energy, 0.8 * round_trip.events[0].distance);
}

TEST(RunSimulation, ReportIsFoldOverEvents) {
  const StochasticClassifier clf(uniform_confusion(0.7), 5);
  const auto rs = sample_stream(clf, 3000);
  const auto result = run_simulation(default_layout(), EnergyModel(0.8), MovementPolicy::rectilinear, rs);
  double total = 0;
  std::size_t misplaced = 0;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const auto& e = result.events[i];
    ASSERT_EQ(e.item_id, rs[i].item_id);
    ASSERT_EQ(e.misplaced, e.true_label != e.predicted_label);
    ASSERT_NEAR(e.energy, 0.8 * e.distance, 1e-9 * e.energy);
    ASSERT_DOUBLE_EQ(e.distance, path_length(*e.path));
    total += e.energy;
    misplaced += e.misplaced;
  }
  const auto& r = result.report;
  EXPECT_NEAR(r.total_energy, total, 1e-6 * total);
  double per_cat = 0;
  for (double v : r.per_category_energy) per_cat += v;
  EXPECT_NEAR(r.total_energy, per_cat, 1e-6 * per_cat);
  EXPECT_EQ(r.misplaced_count, misplaced);
  EXPECT_DOUBLE_EQ(r.misplacement_rate, static_cast<double>(misplaced) / rs.size());
  EXPECT_DOUBLE_EQ(r.mean_energy_per_item, r.total_energy / rs.size());
}

TEST(RunSimulation, MisplacementRateTracksClassifier) {
  const auto identity = sample_stream(StochasticClassifier(uniform_confusion(1.0), 1), 6000);
  EXPECT_EQ(run_simulation(default_layout(), EnergyModel{}, MovementPolicy::direct, identity).report.misplacement_rate,
            0.0);
  const auto noisy = sample_stream(StochasticClassifier(uniform_confusion(0.8), 42), 100'000);
  EXPECT_NEAR(run_simulation(default_layout(), EnergyModel{}, MovementPolicy::direct, noisy).report.misplacement_rate,
              0.2, 0.01);
}

TEST(ComparePolicies, AllPlastic) {
  std::vector<PredictionRecord> rs(10, record("p", WasteCategory::plastic, WasteCategory::plastic));
  const auto r = compare_policies(default_layout(), EnergyModel(0.8), rs, MovementPolicy::rectilinear,
                                  MovementPolicy::direct);
  ASSERT_TRUE(r.baseline_comparison);
  EXPECT_NEAR(r.baseline_comparison->savings_fraction, 1 - std::sqrt(116.0) / 14, 1e-12);
  EXPECT_NEAR(r.baseline_comparison->savings_fraction, 0.2307, 1e-4);
  EXPECT_NEAR(r.baseline_comparison->baseline_total, 112.0, 1e-9);
}

TEST(ComparePolicies, UniformMixMatchesDistanceSumOracle) {
  const auto layout = default_layout();
  double direct = 0, manhattan = 0;
  for (const auto& p : layout.bins) {
    direct += std::sqrt(p.x * p.x + p.y * p.y);
    manhattan += std::abs(p.x) + std::abs(p.y);
  }
  const double oracle = 1 - direct / manhattan;
  const auto r = compare_policies(layout, EnergyModel(0.8), uniform_all_correct(600), MovementPolicy::rectilinear,
                                  MovementPolicy::direct);
  EXPECT_NEAR(r.baseline_comparison->savings_fraction, oracle, 1e-6);
  EXPECT_NEAR(r.baseline_comparison->savings_fraction, 0.273850308, 1e-6);
  EXPECT_GE(r.baseline_comparison->savings_fraction, 0.25);
  EXPECT_LE(r.baseline_comparison->savings_fraction, 0.30);
}

TEST(ComparePolicies, SamePolicyHasNoSavings) {
  const auto r = compare_policies(default_layout(), EnergyModel{}, uniform_all_correct(12), MovementPolicy::direct,
                                  MovementPolicy::direct);
  EXPECT_EQ(r.baseline_comparison->savings_fraction, 0.0);
  EXPECT_FALSE(r.baseline_comparison->regression());
}

TEST(ComparePolicies, ReversedPoliciesFlagRegression) {
  const auto r = compare_policies(default_layout(), EnergyModel{}, uniform_all_correct(12), MovementPolicy::direct,
                                  MovementPolicy::rectilinear);
  EXPECT_LT(r.baseline_comparison->savings_fraction, 0.0);
  EXPECT_TRUE(r.baseline_comparison->regression());
}

TEST(ReportJson, CarriesAllFields) {
  const auto r = compare_policies(default_layout(), EnergyModel{}, uniform_all_correct(6), MovementPolicy::rectilinear,
                                  MovementPolicy::direct);
  const auto j = report_to_json(r);
  for (const char* key : {"tool_version", "policy", "item_count", "total_energy", "per_category_energy",
                          "misplacement_rate", "mean_energy_per_item", "baseline_comparison"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["per_category_energy"].size(), 6u);
  EXPECT_EQ(j["baseline_comparison"]["baseline_policy"], "rectilinear");
}

TEST(EventsCsv, Format) {
  const std::vector rs = {record("p", WasteCategory::plastic, WasteCategory::plastic),
                          record("g", WasteCategory::glass, WasteCategory::plastic)};
  const auto result = run_simulation(default_layout(), EnergyModel(0.8), MovementPolicy::direct, rs);
  EXPECT_EQ(format_events(result.events),
            "item_id,true_label,pred_label,distance,energy,misplaced\n"
            "p,plastic,plastic,10.770330,8.616264,false\n"
            "g,glass,plastic,10.770330,8.616264,true\n");
}

}  // namespace
}  // namespace wastesort
