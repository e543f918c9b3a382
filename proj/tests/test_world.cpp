#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "swarmloc/world.hpp"

using namespace swarmloc;

namespace {

WorldModel open_world(double size) { return WorldModel(Bounds{size, size}, {}); }

}  // namespace

TEST(RayCast, Examples) {
  const WorldModel world(Bounds{}, {{{2.0, -1.0}, {2.0, 1.0}}});
  auto r = ray_cast(world, {0, 0}, 0.0, 5.6);
  ASSERT_TRUE(r.has_value());
  EXPECT_NEAR(*r, 2.0, 1e-12);

  EXPECT_FALSE(ray_cast(open_world(30.0), {0, 0}, 0.3, 10.0).has_value());

  const WorldModel diag(Bounds{}, {{{1.0, -5.0}, {1.0, 5.0}}});
  r = ray_cast(diag, {0, 0}, kPi / 4, 5.6);
  ASSERT_TRUE(r.has_value());
  EXPECT_NEAR(*r, std::sqrt(2.0), 1e-12);

  // Boundary walls are always present.
  r = ray_cast(open_world(15.0), {0, 0}, kPi / 2, 10.0);
  ASSERT_TRUE(r.has_value());
  EXPECT_NEAR(*r, 7.5, 1e-12);
}

TEST(RayCast, OriginOutsideThrows) {
  EXPECT_THROW(ray_cast(open_world(15.0), {8.0, 0.0}, 0.0, 5.0), WorldError);
}

TEST(RayCast, HitLiesOnAWallAndMonotoneInRange) {
  const WorldModel world = default_maze();
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> coord(-7.4, 7.4);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  int hits = 0;
  for (int i = 0; i < 5000; ++i) {
    const Vec2 o{coord(rng), coord(rng)};
    const double a = ang(rng);
    const auto r = ray_cast(world, o, a, 5.6);
    if (!r) {
      ASSERT_FALSE(ray_cast(world, o, a, 3.0).has_value());
      continue;
    }
    ++hits;
    ASSERT_GE(*r, 0.0);
    ASSERT_LE(*r, 5.6);
    const Vec2 p{o.x + *r * std::cos(a), o.y + *r * std::sin(a)};
    ASSERT_LT(world.clearance(p), 1e-9);
    // Shorter range: same hit if within it, nothing otherwise.
    const auto shorter = ray_cast(world, o, a, 0.5 * 5.6);
    if (*r <= 0.5 * 5.6) {
      ASSERT_TRUE(shorter.has_value());
      ASSERT_DOUBLE_EQ(*shorter, *r);
    } else {
      ASSERT_FALSE(shorter.has_value());
    }
    const auto longer = ray_cast(world, o, a, 30.0);
    ASSERT_TRUE(longer.has_value());
    ASSERT_DOUBLE_EQ(*longer, *r);
  }
  EXPECT_GT(hits, 1000);
}

TEST(Geometry, SegmentHelpers) {
  const Segment s{{0, 0}, {2, 0}};
  EXPECT_DOUBLE_EQ(point_segment_distance({1, 1}, s), 1.0);
  EXPECT_DOUBLE_EQ(point_segment_distance({3, 0}, s), 1.0);
  EXPECT_DOUBLE_EQ(point_segment_distance({-3, 4}, s), 5.0);
  EXPECT_TRUE(segments_intersect(s, {{1, -1}, {1, 1}}));
  EXPECT_FALSE(segments_intersect(s, {{1, 0.5}, {1, 1}}));
  EXPECT_DOUBLE_EQ(segment_distance(s, {{1, 0.5}, {1, 1}}), 0.5);
  EXPECT_DOUBLE_EQ(segment_distance(s, {{1, -1}, {1, 1}}), 0.0);
}

TEST(GroundTruth, ZeroCommandHolds) {
  const WorldModel world = default_maze();
  const GroundTruth gt{default_start_pose(), 0.0, 0.0};
  const auto step = step_ground_truth(world, gt, {0.0, 0.0}, 0.032, RobotGeometry{});
  EXPECT_EQ(step.state.pose, gt.pose);
  EXPECT_EQ(step.state.angular_velocity, 0.0);
  EXPECT_EQ(step.realized, (OdometryDelta{0.0, 0.0}));
  EXPECT_FALSE(step.blocked);
}

TEST(GroundTruth, StraightMotion) {
  const WorldModel world = open_world(15.0);
  const GroundTruth gt{{0, 0, 0}, 0.0, 0.0};
  const auto step = step_ground_truth(world, gt, {0.3, 0.3}, 0.032, RobotGeometry{});
  EXPECT_NEAR(step.state.pose.x, 0.3 * 0.032, 1e-15);
  EXPECT_EQ(step.state.pose.y, 0.0);
  EXPECT_NEAR(step.state.linear_velocity, 0.3, 1e-12);
  EXPECT_EQ(step.state.angular_velocity, 0.0);
  EXPECT_NEAR(step.realized.d_left, 0.3 * 0.032, 1e-15);
}

TEST(GroundTruth, StopsShortOfWall) {
  const WorldModel world(Bounds{}, {{{2.0, -1.0}, {2.0, 1.0}}});
  const RobotGeometry geom;
  GroundTruth gt{{0, 0, 0}, 0.0, 0.0};
  const double dt = 0.032;
  const double v = 0.3;
  int blocked = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto step = step_ground_truth(world, gt, {v, v}, dt, geom);
    if (step.blocked) {
      ++blocked;
      EXPECT_EQ(step.state.pose.x, gt.pose.x);
      EXPECT_EQ(step.realized, (OdometryDelta{0.0, 0.0}));
    }
    gt = step.state;
  }
  EXPECT_GT(blocked, 0);
  const double gap = 2.0 - gt.pose.x;
  EXPECT_GE(gap, geom.body_radius);
  EXPECT_LE(gap, geom.body_radius + v * dt);
}

TEST(GroundTruth, SpinWhileBlockedOnlyTurns) {
  const WorldModel world(Bounds{}, {{{2.0, -1.0}, {2.0, 1.0}}});
  const RobotGeometry geom;
  const GroundTruth gt{{1.79, 0, 0}, 0.0, 0.0};
  // Forward-biased turn into the wall.
  const auto step = step_ground_truth(world, gt, {0.3, 0.5}, 0.032, geom);
  ASSERT_TRUE(step.blocked);
  EXPECT_EQ(step.state.pose.x, gt.pose.x);
  EXPECT_EQ(step.state.pose.y, gt.pose.y);
  EXPECT_NEAR(step.state.pose.theta, (0.5 - 0.3) * 0.032 / geom.axle_length, 1e-15);
  EXPECT_NEAR(step.realized.d_right - step.realized.d_left, (0.5 - 0.3) * 0.032, 1e-15);
  EXPECT_NEAR(step.realized.d_right + step.realized.d_left, 0.0, 1e-15);
}

TEST(DefaultMaze, Deterministic) { EXPECT_EQ(default_maze(), default_maze()); }

TEST(DefaultMaze, Enclosed) {
  const WorldModel world = default_maze();
  const double limit = 7.5 * std::sqrt(2.0);
  for (int y = -7; y <= 7; ++y) {
    for (int x = -7; x <= 7; ++x) {
      const Vec2 o{x + 0.25, y + 0.25};
      for (int k = 0; k < 360; ++k) {
        const auto r = ray_cast(world, o, k * kPi / 180.0, 100.0);
        ASSERT_TRUE(r.has_value());
        ASSERT_LE(*r, 2.0 * limit);
      }
    }
  }
  for (int k = 0; k < 360; ++k) {
    const auto r = ray_cast(world, {0.5, 0.5}, k * kPi / 180.0, 100.0);
    ASSERT_TRUE(r.has_value());
    ASSERT_LE(*r, limit);
  }
}

TEST(DefaultMaze, CorridorsFitTheRobot) {
  const WorldModel world = default_maze();
  const auto& walls = world.walls();
  for (std::size_t i = 0; i < walls.size(); ++i) {
    for (std::size_t j = i + 1; j < walls.size(); ++j) {
      if (segments_intersect(walls[i], walls[j])) continue;
      EXPECT_GE(segment_distance(walls[i], walls[j]), 1.2) << i << " vs " << j;
    }
  }
  const Pose start = default_start_pose();
  EXPECT_GT(world.clearance({start.x, start.y}), 2 * RobotGeometry{}.body_radius);
}

TEST(WorldFile, RoundTrip) {
  const WorldModel world = default_maze();
  std::stringstream buf;
  write_world(buf, world);
  EXPECT_EQ(parse_world(buf), world);
}

TEST(WorldFile, ParsesCommentsAndRejectsGarbage) {
  std::istringstream ok("# header\nbounds 8 6\n\n1.5 -1 1.5 1  # wall\n");
  const WorldModel w = parse_world(ok);
  EXPECT_EQ(w.bounds().width, 8.0);
  EXPECT_EQ(w.interior_walls().size(), 1u);
  EXPECT_EQ(w.walls().size(), 5u);

  std::istringstream no_bounds("1 1 2 2\n");
  EXPECT_THROW(parse_world(no_bounds), WorldError);
  std::istringstream short_line("bounds 8 6\n1 1 2\n");
  EXPECT_THROW(parse_world(short_line), WorldError);
  std::istringstream outside("bounds 8 6\n0 0 9 0\n");
  EXPECT_THROW(parse_world(outside), WorldError);
  std::istringstream negative("bounds -1 6\n");
  EXPECT_THROW(parse_world(negative), WorldError);
  EXPECT_THROW(load_world("/nonexistent/world.txt"), WorldError);
}
