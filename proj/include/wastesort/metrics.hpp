#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "wastesort/category.hpp"
#include "wastesort/classify.hpp"
#include "wastesort/detail/io.hpp"
#include "wastesort/error.hpp"

namespace wastesort {

// 6x6 counts, row = true class, column = predicted class.
class ConfusionMatrix {
public:
  using Counts = std::array<std::array<std::uint64_t, kNumCategories>, kNumCategories>;

  ConfusionMatrix() = default;
  explicit ConfusionMatrix(const Counts& counts) : counts_(counts) {}

  void add(WasteCategory true_label, WasteCategory predicted, std::uint64_t n = 1) noexcept {
    counts_[index_of(true_label)][index_of(predicted)] += n;
  }

  std::uint64_t at(WasteCategory true_label, WasteCategory predicted) const noexcept {
    return counts_[index_of(true_label)][index_of(predicted)];
  }

  std::uint64_t row_sum(WasteCategory c) const noexcept {
    std::uint64_t s = 0;
    for (auto v : counts_[index_of(c)]) s += v;
    return s;
  }

  std::uint64_t column_sum(WasteCategory c) const noexcept {
    std::uint64_t s = 0;
    for (const auto& row : counts_) s += row[index_of(c)];
    return s;
  }

  std::uint64_t trace() const noexcept {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < kNumCategories; ++i) s += counts_[i][i];
    return s;
  }

  std::uint64_t total() const noexcept {
    std::uint64_t s = 0;
    for (auto c : kAllCategories) s += row_sum(c);
    return s;
  }

  const Counts& counts() const noexcept { return counts_; }

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

private:
  Counts counts_{};
};

inline ConfusionMatrix build_confusion(std::span<const PredictionRecord> records) {
  ConfusionMatrix cm;
  for (const auto& r : records) cm.add(r.true_label, r.predicted_label);
  return cm;
}

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool precision_defined = false;  // column sum > 0
  bool recall_defined = false;     // row sum > 0

  bool defined() const noexcept { return precision_defined && recall_defined; }
};

inline double f1_score(double precision, double recall) noexcept {
  return precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
}

// Zero denominators give 0 with the matching defined flag cleared.
inline ClassMetrics class_metrics(const ConfusionMatrix& cm, WasteCategory c) noexcept {
  ClassMetrics m;
  const auto hits = static_cast<double>(cm.at(c, c));
  if (auto col = cm.column_sum(c); col > 0) {
    m.precision = hits / static_cast<double>(col);
    m.precision_defined = true;
  }
  if (auto row = cm.row_sum(c); row > 0) {
    m.recall = hits / static_cast<double>(row);
    m.recall_defined = true;
  }
  m.f1 = f1_score(m.precision, m.recall);
  return m;
}

// Unweighted mean over all six classes; undefined classes count as 0.
inline ClassMetrics macro_average(const ConfusionMatrix& cm) noexcept {
  ClassMetrics avg;
  avg.precision_defined = avg.recall_defined = true;
  for (auto c : kAllCategories) {
    auto m = class_metrics(cm, c);
    avg.precision += m.precision;
    avg.recall += m.recall;
    avg.f1 += m.f1;
    avg.precision_defined = avg.precision_defined && m.precision_defined;
    avg.recall_defined = avg.recall_defined && m.recall_defined;
  }
  constexpr auto n = static_cast<double>(kNumCategories);
  avg.precision /= n;
  avg.recall /= n;
  avg.f1 /= n;
  return avg;
}

// Pooled TP / (TP + FP) over all classes, as a fraction.
inline double micro_precision(const ConfusionMatrix& cm) {
  std::uint64_t tp = 0, predicted = 0;
  for (auto c : kAllCategories) {
    tp += cm.at(c, c);
    predicted += cm.column_sum(c);
  }
  if (predicted == 0) throw DomainError("micro precision of an empty confusion matrix");
  return static_cast<double>(tp) / static_cast<double>(predicted);
}

inline double micro_recall(const ConfusionMatrix& cm) {
  std::uint64_t tp = 0, actual = 0;
  for (auto c : kAllCategories) {
    tp += cm.at(c, c);
    actual += cm.row_sum(c);
  }
  if (actual == 0) throw DomainError("micro recall of an empty confusion matrix");
  return static_cast<double>(tp) / static_cast<double>(actual);
}

// Percent of correctly classified records.
inline double overall_accuracy(const ConfusionMatrix& cm) {
  const auto total = cm.total();
  if (total == 0) throw DomainError("accuracy of an empty confusion matrix");
  return 100.0 * static_cast<double>(cm.trace()) / static_cast<double>(total);
}

inline void require_percent(double value, std::string_view what) {
  if (!(value >= 0.0 && value <= 100.0)) {
    throw DomainError(fmt::format("{} {} outside [0, 100]", what, value));
  }
}

// Training minus validation accuracy, in percentage points. Positive means
// the model fits training data better than held-out data; negative values
// are anomalous. Rounded to 9 decimals so decimal inputs give decimal
// outputs (99.8 - 80.5 is 19.3, not 19.299999999999997).
inline double accuracy_gap(double train_accuracy, double val_accuracy) {
  require_percent(train_accuracy, "training accuracy");
  require_percent(val_accuracy, "validation accuracy");
  return std::round((train_accuracy - val_accuracy) * 1e9) / 1e9;
}

inline bool gap_is_anomalous(double gap) noexcept { return gap < 0.0; }

struct EpochAccuracy {
  int epoch = 0;
  double train_accuracy = 0.0;  // percent
  double val_accuracy = 0.0;    // percent

  friend bool operator==(const EpochAccuracy&, const EpochAccuracy&) = default;
};

struct TrainingHistory {
  std::vector<EpochAccuracy> epochs;

  const EpochAccuracy& last() const {
    if (epochs.empty()) throw DomainError("empty training history");
    return epochs.back();
  }

  double final_gap() const { return accuracy_gap(last().train_accuracy, last().val_accuracy); }
};

inline constexpr std::string_view kHistoryHeader = "epoch,train_accuracy,val_accuracy";

inline TrainingHistory parse_history(std::string_view text, std::string_view source = "history") {
  auto lines = detail::split_lines(text);
  if (lines.empty() || lines.front() != kHistoryHeader) {
    throw SchemaError(fmt::format("{}: row 1: header must be '{}'", source, kHistoryHeader));
  }
  TrainingHistory history;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (lines[i].empty() && i + 1 == lines.size()) break;
    auto fields = detail::split_csv_line(lines[i]);
    if (fields.size() != 3) detail::row_error(source, line_no, "expected 3 fields");

    auto epoch = detail::parse_integer(fields[0]);
    if (!epoch || *epoch < 1 || *epoch > 1'000'000'000) {
      detail::row_error(source, line_no, fmt::format("bad epoch '{}'", fields[0]));
    }
    auto train = detail::parse_double(fields[1]);
    auto val = detail::parse_double(fields[2]);
    if (!train || !val) detail::row_error(source, line_no, "bad accuracy value");
    if (*train < 0.0 || *train > 100.0 || *val < 0.0 || *val > 100.0) {
      detail::row_error(source, line_no, "accuracy outside [0, 100] percent");
    }
    if (!history.epochs.empty() && *epoch <= history.epochs.back().epoch) {
      detail::row_error(source, line_no, fmt::format("epoch {} does not increase", *epoch));
    }
    history.epochs.push_back({static_cast<int>(*epoch), *train, *val});
  }
  if (history.epochs.empty()) throw SchemaError(fmt::format("{}: no epochs", source));
  return history;
}

inline TrainingHistory load_history(const std::filesystem::path& path) {
  return parse_history(detail::read_text_file(path), path.string());
}

inline std::string format_history(const TrainingHistory& history) {
  std::string out(kHistoryHeader);
  out += '\n';
  for (const auto& e : history.epochs) {
    out += fmt::format("{},{},{}\n", e.epoch, e.train_accuracy, e.val_accuracy);
  }
  return out;
}

}  // namespace wastesort
