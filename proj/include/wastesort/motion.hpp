#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wastesort/error.hpp"
#include "wastesort/layout.hpp"

namespace wastesort {

// How the arm turns a (start, destination) pair into waypoints.
enum class MovementPolicy {
  direct,       // one straight segment
  rectilinear,  // full x displacement, then full y displacement
};

constexpr std::string_view name_of(MovementPolicy p) noexcept {
  return p == MovementPolicy::direct ? "direct" : "rectilinear";
}

inline std::optional<MovementPolicy> try_parse_policy(std::string_view name) noexcept {
  if (name == "direct") return MovementPolicy::direct;
  if (name == "rectilinear") return MovementPolicy::rectilinear;
  return std::nullopt;
}

inline double euclidean_distance(const Point& a, const Point& b) {
  require_finite(a, "distance endpoint");
  require_finite(b, "distance endpoint");
  return std::hypot(b.x - a.x, b.y - a.y);
}

// An arm path with at least two waypoints and no repeated consecutive point.
class Path {
public:
  Path(MovementPolicy policy, std::vector<Point> waypoints)
      : policy_(policy), waypoints_(std::move(waypoints)) {
    if (waypoints_.size() < 2) throw DomainError("path needs at least two waypoints");
    for (std::size_t i = 0; i < waypoints_.size(); ++i) {
      require_finite(waypoints_[i], "path waypoint");
      if (i > 0 && waypoints_[i] == waypoints_[i - 1]) {
        throw DomainError("path has repeated consecutive waypoints");
      }
    }
  }

  MovementPolicy policy() const noexcept { return policy_; }
  const std::vector<Point>& waypoints() const noexcept { return waypoints_; }
  const Point& start() const noexcept { return waypoints_.front(); }
  const Point& destination() const noexcept { return waypoints_.back(); }

  friend bool operator==(const Path&, const Path&) = default;

private:
  MovementPolicy policy_;
  std::vector<Point> waypoints_;
};

inline double path_length(const Path& path) {
  const auto& w = path.waypoints();
  double total = 0.0;
  for (std::size_t i = 1; i < w.size(); ++i) total += euclidean_distance(w[i - 1], w[i]);
  return total;
}

// Returns std::nullopt for a zero-displacement move (from == to): it costs
// nothing and is not a valid Path.
inline std::optional<Path> plan_path(MovementPolicy policy, const Point& from, const Point& to) {
  require_finite(from, "path start");
  require_finite(to, "path destination");
  if (from == to) return std::nullopt;
  if (policy == MovementPolicy::direct) return Path(policy, {from, to});

  const Point corner{to.x, from.y};
  if (corner == from || corner == to) return Path(policy, {from, to});
  return Path(policy, {from, corner, to});
}

// Length of the planned move, 0 for a zero-displacement move.
inline double move_length(MovementPolicy policy, const Point& from, const Point& to) {
  auto path = plan_path(policy, from, to);
  return path ? path_length(*path) : 0.0;
}

// Energy per grid unit travelled: E = d * w.
class EnergyModel {
public:
  EnergyModel() = default;
  explicit EnergyModel(double weight_factor) : weight_factor_(weight_factor) {
    if (!(weight_factor > 0.0) || !std::isfinite(weight_factor)) {
      throw DomainError("weight factor must be positive and finite");
    }
  }

  double weight_factor() const noexcept { return weight_factor_; }

private:
  double weight_factor_ = kDefaultWeightFactor;
};

inline double energy_cost(double distance, const EnergyModel& model) {
  if (!(distance >= 0.0) || !std::isfinite(distance)) {
    throw DomainError("distance must be finite and non-negative");
  }
  return distance * model.weight_factor();
}

// 1 - optimized/baseline. Negative when the "optimized" run costs more.
inline double savings_ratio(double baseline_energy, double optimized_energy) {
  if (!(baseline_energy > 0.0) || !std::isfinite(baseline_energy)) {
    throw DomainError("baseline energy must be positive");
  }
  if (!(optimized_energy >= 0.0) || !std::isfinite(optimized_energy)) {
    throw DomainError("optimized energy must be non-negative");
  }
  return 1.0 - optimized_energy / baseline_energy;
}

}  // namespace wastesort
