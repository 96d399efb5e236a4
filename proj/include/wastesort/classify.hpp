#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "wastesort/category.hpp"
#include "wastesort/detail/io.hpp"
#include "wastesort/error.hpp"

namespace wastesort {

using ProbabilityVector = std::array<double, kNumCategories>;

// Index of the largest entry; ties go to the lowest canonical index.
inline WasteCategory argmax(const ProbabilityVector& p) noexcept {
  std::size_t best = 0;
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (p[i] > p[best]) best = i;
  }
  return static_cast<WasteCategory>(best);
}

struct PredictionRecord {
  std::string item_id;
  WasteCategory true_label = WasteCategory::cardboard;
  WasteCategory predicted_label = WasteCategory::cardboard;
  ProbabilityVector probabilities{};

  friend bool operator==(const PredictionRecord&, const PredictionRecord&) = default;
};

inline constexpr double kRecordSumTolerance = 1e-6;
inline constexpr double kFileSumTolerance = 1e-3;

// Checks the record invariants: entries in [0,1], sum 1 within 1e-6 and the
// predicted label equal to the argmax.
inline void validate(const PredictionRecord& r) {
  double sum = 0.0;
  for (double p : r.probabilities) {
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("probability outside [0,1] for '" + r.item_id + "'");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kRecordSumTolerance) {
    throw ValidationError("probabilities of '" + r.item_id + "' do not sum to 1");
  }
  if (argmax(r.probabilities) != r.predicted_label) {
    throw ValidationError("predicted label of '" + r.item_id + "' is not the argmax");
  }
}

inline constexpr std::string_view kPredictionsHeader =
    "item_id,true_label,pred_label,p_cardboard,p_glass,p_metal,p_paper,p_plastic,p_trash";

namespace detail {

[[noreturn]] inline void row_error(std::string_view source, std::size_t line, const std::string& what) {
  throw SchemaError(fmt::format("{}: row {}: {}", source, line, what));
}

}  // namespace detail

// Parses predictions CSV text. Row numbers in errors are 1-based file lines
// (the header is line 1). Probability rows within 1e-3 of summing to one are
// renormalized.
inline std::vector<PredictionRecord> parse_predictions(std::string_view text,
                                                       std::string_view source = "predictions") {
  auto lines = detail::split_lines(text);
  if (lines.empty() || lines.front() != kPredictionsHeader) {
    throw SchemaError(fmt::format("{}: row 1: header must be '{}'", source, kPredictionsHeader));
  }

  std::vector<PredictionRecord> records;
  records.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (lines[i].empty()) {
      if (i + 1 == lines.size()) break;
      detail::row_error(source, line_no, "empty line");
    }
    auto fields = detail::split_csv_line(lines[i]);
    if (fields.size() != 3 + kNumCategories) {
      detail::row_error(source, line_no, fmt::format("expected 9 fields, got {}", fields.size()));
    }

    PredictionRecord r;
    r.item_id = std::string(fields[0]);
    if (r.item_id.empty()) detail::row_error(source, line_no, "empty item_id");
    auto true_label = try_parse_category(fields[1]);
    if (!true_label) detail::row_error(source, line_no, fmt::format("unknown category '{}'", fields[1]));
    auto pred_label = try_parse_category(fields[2]);
    if (!pred_label) detail::row_error(source, line_no, fmt::format("unknown category '{}'", fields[2]));
    r.true_label = *true_label;
    r.predicted_label = *pred_label;

    double sum = 0.0;
    for (std::size_t k = 0; k < kNumCategories; ++k) {
      auto value = detail::parse_double(fields[3 + k]);
      if (!value) detail::row_error(source, line_no, fmt::format("bad probability '{}'", fields[3 + k]));
      if (*value < 0.0 || *value > 1.0) {
        detail::row_error(source, line_no, fmt::format("probability {} outside [0,1]", *value));
      }
      r.probabilities[k] = *value;
      sum += *value;
    }
    if (std::abs(sum - 1.0) > kFileSumTolerance) {
      detail::row_error(source, line_no, fmt::format("probabilities sum to {}, not 1", sum));
    }
    for (double& p : r.probabilities) p /= sum;

    if (argmax(r.probabilities) != r.predicted_label) {
      detail::row_error(source, line_no,
                        fmt::format("pred_label '{}' disagrees with argmax '{}'", name_of(r.predicted_label),
                                    name_of(argmax(r.probabilities))));
    }
    records.push_back(std::move(r));
  }
  return records;
}

inline std::vector<PredictionRecord> load_predictions(const std::filesystem::path& path) {
  return parse_predictions(detail::read_text_file(path), path.string());
}

inline std::string format_predictions(const std::vector<PredictionRecord>& records) {
  std::string out(kPredictionsHeader);
  out += '\n';
  for (const auto& r : records) {
    out += fmt::format("{},{},{}", r.item_id, name_of(r.true_label), name_of(r.predicted_label));
    for (double p : r.probabilities) out += fmt::format(",{:.9f}", p);
    out += '\n';
  }
  return out;
}

inline void save_predictions(const std::filesystem::path& path, const std::vector<PredictionRecord>& records) {
  detail::write_text_file(path, format_predictions(records));
}

using ConfusionProbabilities = std::array<ProbabilityVector, kNumCategories>;

// Counter-based generator: the draw for index i under seed s depends on
// (s, i) only. Both are mixed through the SplitMix64 finaliser and the top
// 53 bits become a uniform double in [0,1). This algorithm is part of the
// determinism contract and must not change between releases.
inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline double keyed_uniform(std::uint64_t seed, std::uint64_t draw_index) noexcept {
  const std::uint64_t bits = splitmix64(splitmix64(seed) ^ draw_index);
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Samples predictions from a row-stochastic confusion matrix
// (row = true class, column = predicted class).
class StochasticClassifier {
public:
  static constexpr double kRowTolerance = 1e-9;

  StochasticClassifier(const ConfusionProbabilities& probs, std::uint64_t seed) : probs_(probs), seed_(seed) {
    for (std::size_t row = 0; row < kNumCategories; ++row) {
      double sum = 0.0;
      for (double p : probs_[row]) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
          throw ValidationError(fmt::format("confusion row '{}' has a negative entry", kCategoryNames[row]));
        }
        sum += p;
      }
      if (std::abs(sum - 1.0) > kRowTolerance) {
        throw ValidationError(fmt::format("confusion row '{}' sums to {}, not 1", kCategoryNames[row], sum));
      }
    }
  }

  const ConfusionProbabilities& probabilities() const noexcept { return probs_; }
  std::uint64_t seed() const noexcept { return seed_; }

  // Predicted label for one draw by inverse CDF over the true label's row.
  WasteCategory sample_label(WasteCategory true_label, std::uint64_t draw_index) const noexcept {
    const auto& row = probs_[index_of(true_label)];
    const double u = keyed_uniform(seed_, draw_index);
    double cumulative = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t k = 0; k < kNumCategories; ++k) {
      if (row[k] <= 0.0) continue;
      cumulative += row[k];
      last_positive = k;
      if (u < cumulative) return static_cast<WasteCategory>(k);
    }
    // u landed in the rounding slack above the row's float sum.
    return static_cast<WasteCategory>(last_positive);
  }

private:
  ConfusionProbabilities probs_;
  std::uint64_t seed_;
};

// The probabilities of the returned record are the classifier's row, so the
// record keeps the argmax invariant only when the sampled label is the row's
// mode. item_id is "draw-<index>".
inline PredictionRecord sample_prediction(const StochasticClassifier& clf, WasteCategory true_label,
                                          std::uint64_t draw_index) {
  PredictionRecord r;
  r.item_id = fmt::format("draw-{}", draw_index);
  r.true_label = true_label;
  r.predicted_label = clf.sample_label(true_label, draw_index);
  r.probabilities = clf.probabilities()[index_of(true_label)];
  return r;
}

// `count` records with true labels cycling through the categories in
// canonical order; record i uses draw index i.
inline std::vector<PredictionRecord> sample_stream(const StochasticClassifier& clf, std::size_t count) {
  std::vector<PredictionRecord> records;
  records.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    records.push_back(sample_prediction(clf, category_at(i % kNumCategories), i));
  }
  return records;
}

// Confusion file: {"confusion": {"cardboard": [6 probabilities], ...}}.
inline ConfusionProbabilities confusion_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("confusion") || !j["confusion"].is_object()) {
    throw SchemaError("confusion document must be an object with a 'confusion' object");
  }
  const auto& rows = j["confusion"];
  for (const auto& item : rows.items()) {
    if (!try_parse_category(item.key())) throw SchemaError("confusion: unknown category '" + item.key() + "'");
  }
  ConfusionProbabilities probs{};
  for (auto c : kAllCategories) {
    std::string name(name_of(c));
    if (!rows.contains(name)) throw SchemaError("confusion: missing row '" + name + "'");
    const auto& row = rows[name];
    if (!row.is_array() || row.size() != kNumCategories) {
      throw SchemaError("confusion: row '" + name + "' must have 6 numbers");
    }
    for (std::size_t k = 0; k < kNumCategories; ++k) {
      if (!row[k].is_number()) throw SchemaError("confusion: row '" + name + "' must have 6 numbers");
      probs[index_of(c)][k] = row[k].get<double>();
    }
  }
  return probs;
}

inline nlohmann::json confusion_to_json(const ConfusionProbabilities& probs) {
  nlohmann::json rows = nlohmann::json::object();
  for (auto c : kAllCategories) rows[std::string(name_of(c))] = probs[index_of(c)];
  return {{"confusion", std::move(rows)}};
}

inline ConfusionProbabilities load_confusion(const std::filesystem::path& path) {
  return confusion_from_json(detail::read_json_file(path));
}

// Rows with `diagonal` on the diagonal and the rest spread evenly.
inline ConfusionProbabilities uniform_confusion(double diagonal) {
  ConfusionProbabilities probs{};
  const double off = (1.0 - diagonal) / static_cast<double>(kNumCategories - 1);
  for (std::size_t r = 0; r < kNumCategories; ++r) {
    for (std::size_t c = 0; c < kNumCategories; ++c) probs[r][c] = r == c ? diagonal : off;
  }
  return probs;
}

}  // namespace wastesort
