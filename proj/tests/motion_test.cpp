#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "wastesort/motion.hpp"

namespace wastesort {
namespace {

TEST(EuclideanDistance, WorkedExample) {
  EXPECT_NEAR(euclidean_distance({0, 0}, {10, 4}), 10.7703, 1e-4);
  EXPECT_DOUBLE_EQ(euclidean_distance({0, 0}, {10, 4}), std::sqrt(116.0));
}

TEST(EuclideanDistance, IdentityAndPythagoreanTriple) {
  EXPECT_EQ(euclidean_distance({2.5, -1}, {2.5, -1}), 0.0);
  EXPECT_DOUBLE_EQ(euclidean_distance({0, 0}, {3, 4}), 5.0);
}

TEST(EuclideanDistance, RejectsNonFinite) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_THROW(euclidean_distance({nan, 0}, {1, 1}), DomainError);
  EXPECT_THROW(euclidean_distance({0, 0}, {1, inf}), DomainError);
}

TEST(PlanPath, DirectIsTwoWaypoints) {
  auto path = plan_path(MovementPolicy::direct, {0, 0}, {10, 4});
  ASSERT_TRUE(path);
  EXPECT_EQ(path->waypoints(), (std::vector<Point>{{0, 0}, {10, 4}}));
  EXPECT_NEAR(path_length(*path), 10.7703, 1e-4);
}

TEST(PlanPath, RectilinearGoesXThenY) {
  auto path = plan_path(MovementPolicy::rectilinear, {0, 0}, {10, 4});
  ASSERT_TRUE(path);
  EXPECT_EQ(path->waypoints(), (std::vector<Point>{{0, 0}, {10, 0}, {10, 4}}));
  EXPECT_DOUBLE_EQ(path_length(*path), 14.0);
}

TEST(PlanPath, RectilinearDropsCollinearCorner) {
  auto along_x = plan_path(MovementPolicy::rectilinear, {0, 0}, {5, 0});
  ASSERT_TRUE(along_x);
  EXPECT_EQ(along_x->waypoints(), (std::vector<Point>{{0, 0}, {5, 0}}));

  auto along_y = plan_path(MovementPolicy::rectilinear, {0, 0}, {0, 7});
  ASSERT_TRUE(along_y);
  EXPECT_EQ(along_y->waypoints().size(), 2u);
  EXPECT_DOUBLE_EQ(path_length(*along_y), 7.0);
}

TEST(PlanPath, ZeroDisplacementIsEmptyMove) {
  EXPECT_FALSE(plan_path(MovementPolicy::direct, {3, 3}, {3, 3}));
  EXPECT_FALSE(plan_path(MovementPolicy::rectilinear, {3, 3}, {3, 3}));
  EXPECT_EQ(move_length(MovementPolicy::direct, {3, 3}, {3, 3}), 0.0);
}

TEST(Path, RejectsInvalidWaypoints) {
  EXPECT_THROW(Path(MovementPolicy::direct, {{0, 0}}), DomainError);
  EXPECT_THROW(Path(MovementPolicy::direct, {{0, 0}, {0, 0}}), DomainError);
}

TEST(EnergyCost, WorkedExample) {
  const EnergyModel model(0.8);
  EXPECT_NEAR(energy_cost(10.7703, model), 8.6162, 1e-3);
  EXPECT_NEAR(energy_cost(std::sqrt(116.0), model), 8.62, 5e-3);
  EXPECT_EQ(energy_cost(0.0, model), 0.0);
  EXPECT_NEAR(energy_cost(14.0, model), 11.2, 1e-12);
}

TEST(EnergyCost, RejectsNegativeDistanceAndBadWeight) {
  EXPECT_THROW(energy_cost(-1.0, EnergyModel{}), DomainError);
  EXPECT_THROW(EnergyModel(0.0), DomainError);
  EXPECT_THROW(EnergyModel(-0.8), DomainError);
  EXPECT_DOUBLE_EQ(EnergyModel{}.weight_factor(), 0.8);
}

TEST(SavingsRatio, Examples) {
  EXPECT_NEAR(savings_ratio(11.2, 8.6162), 0.2307, 1e-4);
  EXPECT_EQ(savings_ratio(5.0, 5.0), 0.0);
  // Diagonal bin (5,5): 1 - sqrt(50)/10 = 1 - 1/sqrt(2).
  const double diag = savings_ratio(move_length(MovementPolicy::rectilinear, {0, 0}, {5, 5}),
                                    move_length(MovementPolicy::direct, {0, 0}, {5, 5}));
  EXPECT_NEAR(diag, 0.29289, 1e-5);
  EXPECT_LT(savings_ratio(1.0, 2.0), 0.0);
  EXPECT_THROW(savings_ratio(0.0, 1.0), DomainError);
}

// Seeded random point pairs: triangle inequality, savings bound, symmetry.
TEST(MotionProperties, RandomPointPairs) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coord(-50.0, 50.0);
  const double bound = 1.0 - 1.0 / std::sqrt(2.0);
  for (int i = 0; i < 10'000; ++i) {
    const Point a{coord(rng), coord(rng)};
    const Point b{coord(rng), coord(rng)};
    const double direct = euclidean_distance(a, b);
    const double rect = move_length(MovementPolicy::rectilinear, a, b);
    ASSERT_LE(direct, rect * (1 + 1e-12));
    ASSERT_DOUBLE_EQ(direct, euclidean_distance(b, a));
    const double s = savings_ratio(rect, direct);
    ASSERT_GE(s, -1e-12);
    ASSERT_LE(s, bound + 1e-12);
  }
}

TEST(MotionProperties, EqualityOnlyWhenAxisAligned) {
  EXPECT_DOUBLE_EQ(euclidean_distance({1, 2}, {1, 9}), move_length(MovementPolicy::rectilinear, {1, 2}, {1, 9}));
  EXPECT_LT(euclidean_distance({1, 2}, {2, 9}), move_length(MovementPolicy::rectilinear, {1, 2}, {2, 9}));
}

TEST(MotionProperties, EnergyIsLinearInDistance) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(0.0, 1000.0);
  const EnergyModel model(0.8);
  for (int i = 0; i < 1000; ++i) {
    const double d1 = dist(rng), d2 = dist(rng);
    const double lhs = energy_cost(d1 + d2, model);
    const double rhs = energy_cost(d1, model) + energy_cost(d2, model);
    ASSERT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, lhs));
  }
}

}  // namespace
}  // namespace wastesort
