#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include "wastesort/category.hpp"
#include "wastesort/error.hpp"
#include "wastesort/layout.hpp"
#include "wastesort/metrics.hpp"
#include "wastesort/simulate.hpp"

// Deterministic SVG output. All coordinates use fixed 4-decimal formatting so
// identical inputs give byte-identical documents.
namespace wastesort {

inline constexpr int kCanvasWidth = 800;
inline constexpr int kCanvasHeight = 600;

namespace detail {

inline std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += ch;
    }
  }
  return out;
}

inline std::string coord(double v) {
  // Avoid "-0.0000".
  if (std::abs(v) < 5e-5) v = 0.0;
  return fmt::format("{:.4f}", v);
}

inline std::string svg_open(std::string_view title) {
  return fmt::format(
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
      "font-family=\"sans-serif\">\n"
      "<title>{2}</title>\n"
      "<rect x=\"0\" y=\"0\" width=\"{0}\" height=\"{1}\" fill=\"white\"/>\n",
      kCanvasWidth, kCanvasHeight, xml_escape(title));
}

// Uniform world-to-canvas mapping that fits a bounding box into the canvas
// with a 5% margin on every side, centred, y axis pointing up.
class WorldToCanvas {
public:
  WorldToCanvas(const std::vector<Point>& points) {
    double min_x = points.front().x, max_x = min_x, min_y = points.front().y, max_y = min_y;
    for (const auto& p : points) {
      min_x = std::min(min_x, p.x);
      max_x = std::max(max_x, p.x);
      min_y = std::min(min_y, p.y);
      max_y = std::max(max_y, p.y);
    }
    const double span_x = std::max(max_x - min_x, 1e-9);
    const double span_y = std::max(max_y - min_y, 1e-9);
    const double usable_w = 0.9 * kCanvasWidth;
    const double usable_h = 0.9 * kCanvasHeight;
    scale_ = std::min(usable_w / span_x, usable_h / span_y);
    offset_x_ = 0.05 * kCanvasWidth + (usable_w - scale_ * span_x) / 2.0 - scale_ * min_x;
    offset_y_ = 0.05 * kCanvasHeight + (usable_h - scale_ * span_y) / 2.0 + scale_ * max_y;
  }

  double x(double wx) const noexcept { return offset_x_ + scale_ * wx; }
  double y(double wy) const noexcept { return offset_y_ - scale_ * wy; }

private:
  double scale_ = 1.0;
  double offset_x_ = 0.0;
  double offset_y_ = 0.0;
};

}  // namespace detail

// Sorting cell with all six labelled bins, the home marker, the arm path of
// `event` and its energy cost.
inline std::string render_trajectory(const BinLayout& layout, const SortEvent& event) {
  validate(layout);
  const Point& destination = layout.bins[event.predicted_label];
  if (event.path) {
    if (event.path->start() != layout.home || event.path->destination() != destination) {
      throw DomainError("event path does not run from the layout home to the bin of its predicted label");
    }
  }

  std::vector<Point> extent{layout.home};
  for (const auto& p : layout.bins) extent.push_back(p);
  if (event.path) {
    for (const auto& p : event.path->waypoints()) extent.push_back(p);
  }
  const detail::WorldToCanvas map(extent);

  std::string svg = detail::svg_open(fmt::format("Robotic arm trajectory to the {} bin", name_of(event.predicted_label)));

  svg += "<g id=\"bins\">\n";
  for (auto c : kAllCategories) {
    const Point& p = layout.bins[c];
    const bool target = c == event.predicted_label;
    svg += fmt::format(
        "<rect class=\"bin\" x=\"{}\" y=\"{}\" width=\"24.0000\" height=\"24.0000\" fill=\"{}\" stroke=\"black\"/>\n",
        detail::coord(map.x(p.x) - 12.0), detail::coord(map.y(p.y) - 12.0), target ? "#f4a261" : "#cfd8dc");
    svg += fmt::format("<text class=\"bin-label\" x=\"{}\" y=\"{}\" font-size=\"14\">{}</text>\n",
                       detail::coord(map.x(p.x) + 16.0), detail::coord(map.y(p.y) + 5.0), name_of(c));
  }
  svg += "</g>\n";

  svg += fmt::format("<circle id=\"home\" cx=\"{}\" cy=\"{}\" r=\"8.0000\" fill=\"black\"/>\n",
                     detail::coord(map.x(layout.home.x)), detail::coord(map.y(layout.home.y)));
  svg += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"14\" text-anchor=\"middle\">home</text>\n",
                     detail::coord(map.x(layout.home.x)), detail::coord(map.y(layout.home.y) + 24.0));

  if (event.path) {
    std::string points;
    for (const auto& p : event.path->waypoints()) {
      if (!points.empty()) points += ' ';
      points += detail::coord(map.x(p.x)) + "," + detail::coord(map.y(p.y));
    }
    svg += fmt::format(
        "<polyline id=\"path\" class=\"{}\" points=\"{}\" fill=\"none\" stroke=\"#1d3557\" stroke-width=\"3\"/>\n",
        name_of(event.path->policy()), points);
  }

  svg += fmt::format(
      "<text id=\"energy\" x=\"20\" y=\"30\" font-size=\"18\">Energy cost: {:.2f} units (distance {:.2f})</text>\n",
      event.energy, event.distance);
  svg += "</svg>\n";
  return svg;
}

// Training and validation accuracy per epoch on a 0-100 percent axis, with
// a legend and the final accuracy gap.
inline std::string render_history_plot(const TrainingHistory& history) {
  if (history.epochs.size() < 2) throw DomainError("history plot needs at least two epochs");

  constexpr double left = 80.0, right = 770.0, top = 60.0, bottom = 520.0;
  const double first = history.epochs.front().epoch;
  const double last = history.epochs.back().epoch;
  const auto px = [&](double epoch) { return left + (epoch - first) / (last - first) * (right - left); };
  const auto py = [&](double percent) { return bottom - percent / 100.0 * (bottom - top); };

  std::string svg = detail::svg_open("Training vs validation accuracy over epochs");

  svg += "<g id=\"axes\" stroke=\"black\">\n";
  svg += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\"/>\n", detail::coord(left), detail::coord(bottom),
                     detail::coord(right));
  svg += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\"/>\n", detail::coord(left), detail::coord(bottom),
                     detail::coord(top));
  svg += "</g>\n";

  svg += "<g id=\"y-ticks\" font-size=\"12\" text-anchor=\"end\">\n";
  for (int percent = 0; percent <= 100; percent += 10) {
    const double y = py(percent);
    svg += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n", detail::coord(left - 5.0),
                       detail::coord(y), detail::coord(left), detail::coord(y));
    svg += fmt::format("<text x=\"{}\" y=\"{}\">{}</text>\n", detail::coord(left - 8.0), detail::coord(y + 4.0), percent);
  }
  svg += "</g>\n";

  const int span = history.epochs.back().epoch - history.epochs.front().epoch;
  const int step = std::max(1, (span + 9) / 10);
  svg += "<g id=\"x-ticks\" font-size=\"12\" text-anchor=\"middle\">\n";
  for (int epoch = history.epochs.front().epoch; epoch <= history.epochs.back().epoch; epoch += step) {
    const double x = px(epoch);
    svg += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n", detail::coord(x),
                       detail::coord(bottom), detail::coord(x), detail::coord(bottom + 5.0));
    svg += fmt::format("<text x=\"{}\" y=\"{}\">{}</text>\n", detail::coord(x), detail::coord(bottom + 20.0), epoch);
  }
  svg += "</g>\n";

  svg += fmt::format("<text x=\"{}\" y=\"575\" font-size=\"14\" text-anchor=\"middle\">Epoch</text>\n",
                     detail::coord((left + right) / 2.0));
  svg += fmt::format(
      "<text x=\"20\" y=\"{0}\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 20 {0})\">"
      "Accuracy (%)</text>\n",
      detail::coord((top + bottom) / 2.0));

  const auto series = [&](std::string_view id, std::string_view colour, auto accessor) {
    std::string points;
    for (const auto& e : history.epochs) {
      if (!points.empty()) points += ' ';
      points += detail::coord(px(e.epoch)) + "," + detail::coord(py(accessor(e)));
    }
    return fmt::format("<polyline id=\"{}\" points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\"/>\n", id,
                       points, colour);
  };
  svg += series("train", "#1f77b4", [](const EpochAccuracy& e) { return e.train_accuracy; });
  svg += series("validation", "#ff7f0e", [](const EpochAccuracy& e) { return e.val_accuracy; });

  svg += "<g id=\"legend\" font-size=\"14\">\n";
  svg += "<line x1=\"560\" y1=\"30\" x2=\"590\" y2=\"30\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n";
  svg += "<text x=\"596\" y=\"35\">Training accuracy</text>\n";
  svg += "<line x1=\"560\" y1=\"50\" x2=\"590\" y2=\"50\" stroke=\"#ff7f0e\" stroke-width=\"2\"/>\n";
  svg += "<text x=\"596\" y=\"55\">Validation accuracy</text>\n";
  svg += "</g>\n";

  svg += fmt::format("<text id=\"gap\" x=\"{}\" y=\"40\" font-size=\"14\">gap: {:.1f}</text>\n", detail::coord(left + 10.0),
                     history.final_gap());
  svg += "</svg>\n";
  return svg;
}

}  // namespace wastesort
