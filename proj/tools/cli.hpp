#pragma once

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wastesort/wastesort.hpp"

// Subcommand implementations for the wastesort tool. Exit codes:
// 0 success, 1 usage, 2 schema/validation, 3 I/O. Failures print one JSON
// line {"error": kind, "exit_code": n, "message": text} on stderr.
namespace wastesort::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kSchema = 2, kIo = 3 };

class UsageError : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "usage"; }
};

inline void report_error(std::ostream& err, std::string_view kind, int code, std::string_view message) {
  err << nlohmann::json{{"error", kind}, {"exit_code", code}, {"message", message}}.dump() << '\n';
}

// Where the predictions for a run come from: a CSV file or a seeded
// stochastic classifier.
struct PredictionSource {
  std::string predictions_path;
  std::string confusion_path;
  std::optional<std::size_t> items;
  std::optional<std::uint64_t> seed;

  void add_options(CLI::App& cmd) {
    auto* pred = cmd.add_option("--predictions", predictions_path, "Predictions CSV");
    auto* conf = cmd.add_option("--confusion", confusion_path, "Confusion-probability JSON for seeded sampling");
    auto* n = cmd.add_option("--items", items, "Number of sampled items (with --confusion)");
    auto* s = cmd.add_option("--seed", seed, "Sampling seed (with --confusion)");
    pred->excludes(conf);
    conf->needs(n);
    conf->needs(s);
    n->needs(conf);
    s->needs(conf);
  }

  std::vector<PredictionRecord> load() const {
    if (!predictions_path.empty()) return load_predictions(predictions_path);
    if (confusion_path.empty()) throw UsageError("one of --predictions or --confusion is required");
    const StochasticClassifier clf(load_confusion(confusion_path), *seed);
    return sample_stream(clf, *items);
  }
};

struct LayoutOptions {
  std::string layout_path;
  std::optional<double> weight_factor;

  void add_options(CLI::App& cmd) {
    cmd.add_option("--layout", layout_path, "Layout JSON")->required();
    cmd.add_option("--weight-factor", weight_factor, "Override the layout's weight factor");
  }

  std::pair<BinLayout, EnergyModel> load() const {
    auto doc = load_layout_document(layout_path);
    return {doc.layout, EnergyModel(weight_factor.value_or(doc.weight_factor))};
  }
};

inline const std::map<std::string, MovementPolicy> kPolicies = {
    {"direct", MovementPolicy::direct},
    {"rectilinear", MovementPolicy::rectilinear},
};

inline nlohmann::json metrics_to_json(const ConfusionMatrix& cm, const std::optional<TrainingHistory>& history) {
  nlohmann::json per_class = nlohmann::json::object();
  for (auto c : kAllCategories) {
    const auto m = class_metrics(cm, c);
    per_class[std::string(name_of(c))] = {
        {"precision", m.precision},
        {"recall", m.recall},
        {"f1", m.f1},
        {"defined", m.defined()},
        {"support", cm.row_sum(c)},
    };
  }
  const auto macro = macro_average(cm);
  nlohmann::json matrix = nlohmann::json::array();
  for (const auto& row : cm.counts()) matrix.push_back(row);

  nlohmann::json j = {
      {"tool_version", std::string(kVersion)},
      {"item_count", cm.total()},
      {"categories", kCategoryNames},
      {"confusion_matrix", std::move(matrix)},
      {"per_class", std::move(per_class)},
      {"accuracy", overall_accuracy(cm)},
      {"macro", {{"precision", macro.precision}, {"recall", macro.recall}, {"f1", macro.f1}}},
  };
  if (history) {
    const double gap = history->final_gap();
    j["history"] = {
        {"epochs", history->epochs.size()},
        {"final_train_accuracy", history->last().train_accuracy},
        {"final_val_accuracy", history->last().val_accuracy},
    };
    j["accuracy_gap"] = gap;
    j["gap_anomalous"] = gap_is_anomalous(gap);
  } else {
    j["accuracy_gap"] = nullptr;
  }
  return j;
}

inline nlohmann::json solution_to_json(const AssignmentSolution& sol, const SlotsDocument& slots, OptimizeMethod method,
                                       MovementPolicy policy, const EnergyModel& model) {
  nlohmann::json assignment = nlohmann::json::object();
  for (auto c : kAllCategories) {
    const auto s = sol.slot_of[c];
    assignment[std::string(name_of(c))] = {{"slot", s}, {"point", detail::point_to_json(slots.slots[s])}};
  }
  return {
      {"tool_version", std::string(kVersion)},
      {"method", std::string(name_of(method))},
      {"policy", std::string(name_of(policy))},
      {"weight_factor", model.weight_factor()},
      {"home", detail::point_to_json(slots.home)},
      {"expected_energy", sol.expected_energy},
      {"assignment", std::move(assignment)},
      {"unused_slots", sol.unused_slots},
  };
}

// Runs the tool on argv-style arguments (args[0] is the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Energy-aware waste-sorting cell simulator", "wastesort"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Simulate sorting a prediction stream");
  LayoutOptions sim_layout;
  PredictionSource sim_source;
  MovementPolicy sim_policy = MovementPolicy::direct;
  bool sim_return = false;
  std::string sim_out, sim_events;
  sim_layout.add_options(*simulate);
  sim_source.add_options(*simulate);
  simulate->add_option("--policy", sim_policy, "direct|rectilinear")->transform(CLI::CheckedTransformer(kPolicies));
  simulate->add_flag("--count-return", sim_return, "Also charge the return trip to home");
  simulate->add_option("--out", sim_out, "Report JSON")->required();
  simulate->add_option("--events", sim_events, "Per-item events CSV");

  // compare
  auto* compare = app.add_subcommand("compare", "Compare a baseline and an optimized movement policy");
  LayoutOptions cmp_layout;
  PredictionSource cmp_source;
  MovementPolicy cmp_baseline = MovementPolicy::rectilinear;
  MovementPolicy cmp_optimized = MovementPolicy::direct;
  bool cmp_return = false;
  std::string cmp_out;
  cmp_layout.add_options(*compare);
  cmp_source.add_options(*compare);
  compare->add_option("--baseline", cmp_baseline, "direct|rectilinear")->transform(CLI::CheckedTransformer(kPolicies));
  compare->add_option("--optimized", cmp_optimized, "direct|rectilinear")->transform(CLI::CheckedTransformer(kPolicies));
  compare->add_flag("--count-return", cmp_return, "Also charge the return trip to home");
  compare->add_option("--out", cmp_out, "Report JSON")->required();

  // metrics
  auto* metrics = app.add_subcommand("metrics", "Classification metrics from a predictions file");
  std::string met_predictions, met_history, met_out;
  metrics->add_option("--predictions", met_predictions, "Predictions CSV")->required();
  metrics->add_option("--history", met_history, "Training history CSV");
  metrics->add_option("--out", met_out, "Metrics JSON")->required();

  // optimize
  auto* optimize = app.add_subcommand("optimize", "Assign categories to bin slots minimizing expected energy");
  std::string opt_slots, opt_freq, opt_out;
  std::string opt_method = "hungarian";
  MovementPolicy opt_policy = MovementPolicy::direct;
  double opt_weight = kDefaultWeightFactor;
  optimize->add_option("--slots", opt_slots, "Slots JSON")->required();
  optimize->add_option("--freq", opt_freq, "Category frequency JSON")->required();
  optimize->add_option("--method", opt_method, "exact|hungarian")->check(CLI::IsMember({"exact", "hungarian"}));
  optimize->add_option("--policy", opt_policy, "direct|rectilinear")->transform(CLI::CheckedTransformer(kPolicies));
  optimize->add_option("--weight-factor", opt_weight, "Energy per grid unit")->check(CLI::PositiveNumber);
  optimize->add_option("--out", opt_out, "Solution JSON")->required();

  // plot-history
  auto* plot_history = app.add_subcommand("plot-history", "Plot training vs validation accuracy as SVG");
  std::string ph_history, ph_out;
  plot_history->add_option("--history", ph_history, "Training history CSV")->required();
  plot_history->add_option("--out", ph_out, "SVG output")->required();

  // plot-sort
  auto* plot_sort = app.add_subcommand("plot-sort", "Plot the arm trajectory for one category as SVG");
  LayoutOptions ps_layout;
  std::string ps_category, ps_out;
  MovementPolicy ps_policy = MovementPolicy::direct;
  ps_layout.add_options(*plot_sort);
  plot_sort->add_option("--category", ps_category, "Waste category")
      ->required()
      ->check(CLI::IsMember(std::vector<std::string>(kCategoryNames.begin(), kCategoryNames.end())));
  plot_sort->add_option("--policy", ps_policy, "direct|rectilinear")->transform(CLI::CheckedTransformer(kPolicies));
  plot_sort->add_option("--out", ps_out, "SVG output")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    report_error(err, "usage", kUsage, e.what());
    return kUsage;
  }

  try {
    if (*simulate) {
      const auto [layout, model] = sim_layout.load();
      const auto records = sim_source.load();
      const auto result = run_simulation(layout, model, {sim_policy, sim_return}, records);
      detail::write_text_file(sim_out, detail::dump_json(report_to_json(result.report)));
      if (!sim_events.empty()) detail::write_text_file(sim_events, format_events(result.events));
    } else if (*compare) {
      const auto [layout, model] = cmp_layout.load();
      const auto records = cmp_source.load();
      const auto report = compare_policies(layout, model, records, cmp_baseline, cmp_optimized, cmp_return);
      detail::write_text_file(cmp_out, detail::dump_json(report_to_json(report)));
    } else if (*metrics) {
      const auto records = load_predictions(met_predictions);
      std::optional<TrainingHistory> history;
      if (!met_history.empty()) history = load_history(met_history);
      const auto cm = build_confusion(records);
      detail::write_text_file(met_out, detail::dump_json(metrics_to_json(cm, history)));
    } else if (*optimize) {
      const auto slots = load_slots(opt_slots);
      const auto freq = load_frequency(opt_freq);
      const EnergyModel model(opt_weight);
      const auto method = *try_parse_method(opt_method);
      const auto sol = optimize_assignment(method, slots.slots, freq, model, opt_policy, slots.home);
      detail::write_text_file(opt_out, detail::dump_json(solution_to_json(sol, slots, method, opt_policy, model)));
    } else if (*plot_history) {
      detail::write_text_file(ph_out, render_history_plot(load_history(ph_history)));
    } else if (*plot_sort) {
      const auto [layout, model] = ps_layout.load();
      const auto category = parse_category(ps_category);
      const PredictionRecord record{std::string(name_of(category)), category, category, {}};
      const auto event = simulate_item(layout, model, {ps_policy, false}, record);
      detail::write_text_file(ps_out, render_trajectory(layout, event));
    }
  } catch (const UsageError& e) {
    report_error(err, e.kind(), kUsage, e.what());
    return kUsage;
  } catch (const IoError& e) {
    report_error(err, e.kind(), kIo, e.what());
    return kIo;
  } catch (const Error& e) {
    report_error(err, e.kind(), kSchema, e.what());
    return kSchema;
  }
  return kOk;
}

}  // namespace wastesort::cli
