#include <cmath>

#include <gtest/gtest.h>

#include "swarmloc/random.hpp"
#include "swarmloc/sensors.hpp"
#include "swarmloc/world.hpp"

using namespace swarmloc;

TEST(Imu, ZeroSigmaIsExact) {
  RandomStream rng(1);
  EXPECT_EQ(sample_imu(0.7, 0.0, rng), 0.7);
  EXPECT_EQ(sample_imu(-kPi + 1e-3, 0.0, rng), -kPi + 1e-3);
  EXPECT_THROW(sample_imu(0.0, -1.0, rng), std::invalid_argument);
}

TEST(Imu, WrapsNearPi) {
  RandomStream rng(2);
  for (int i = 0; i < 10000; ++i) {
    const double z = sample_imu(kPi - 1e-4, 0.02, rng);
    ASSERT_GT(z, -kPi);
    ASSERT_LE(z, kPi);
    ASSERT_LT(std::abs(wrap_angle(z - (kPi - 1e-4))), 0.2);
  }
}

TEST(Imu, NoiseMonteCarlo) {
  RandomStream rng(3);
  const int n = 1000000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double e = sample_imu(0.5, 0.02, rng) - 0.5;
    sum += e;
    sum_sq += e * e;
  }
  const double mean = sum / n;
  const double sd = std::sqrt(sum_sq / n - mean * mean);
  EXPECT_LT(std::abs(mean), 1e-4);
  EXPECT_GE(sd, 0.0198);
  EXPECT_LE(sd, 0.0202);
}

TEST(LidarConfig, RayAngles) {
  LidarConfig cfg;
  cfg.ray_count = 241;
  EXPECT_NEAR(cfg.ray_angle(0), -120.0 * kPi / 180.0, 1e-15);
  EXPECT_NEAR(cfg.ray_angle(120), 0.0, 1e-15);
  EXPECT_NEAR(cfg.ray_angle(240), 120.0 * kPi / 180.0, 1e-15);
  cfg.ray_count = 1;
  EXPECT_EQ(cfg.ray_angle(0), 0.0);
  cfg.ray_count = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(Lidar, CenterRayNoiseless) {
  const WorldModel world(Bounds{}, {{{2.0, -1.0}, {2.0, 1.0}}});
  LidarConfig cfg;
  cfg.ray_count = 241;
  RandomStream rng(4);
  const auto scan = sample_lidar(world, {0, 0, 0}, cfg, 0.0, rng);
  ASSERT_EQ(scan.ranges.size(), 241u);
  ASSERT_TRUE(scan.ranges[120].has_value());
  EXPECT_NEAR(*scan.ranges[120], 2.0, 1e-12);
}

TEST(Lidar, OpenSpaceHasNoReturns) {
  const WorldModel world(Bounds{20.0, 20.0}, {});
  RandomStream rng(5);
  const auto scan = sample_lidar(world, {0, 0, 1.0}, LidarConfig{}, 0.02, rng);
  for (const auto& r : scan.ranges) {
    EXPECT_FALSE(r.has_value());
  }
}

TEST(Lidar, RangeNoiseMonteCarlo) {
  const WorldModel world(Bounds{}, {{{3.0, -1.0}, {3.0, 1.0}}});
  LidarConfig cfg;
  cfg.ray_count = 1;
  RandomStream rng(6);
  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    sum += *sample_lidar(world, {0, 0, 0}, cfg, 0.02, rng).ranges[0];
  }
  const double mean = sum / n;
  EXPECT_GE(mean, 2.999);
  EXPECT_LE(mean, 3.001);
}

TEST(Lidar, ClampedToRange) {
  const WorldModel world(Bounds{}, {{{0.01, -1.0}, {0.01, 1.0}}, {{-5.5, -1.0}, {-5.5, 1.0}}});
  LidarConfig cfg;
  cfg.ray_count = 1;
  RandomStream rng(7);
  for (int i = 0; i < 2000; ++i) {
    const auto near = sample_lidar(world, {0, 0, 0}, cfg, 0.5, rng).ranges[0];
    ASSERT_TRUE(near.has_value());
    ASSERT_GT(*near, 0.0);
    ASSERT_LE(*near, cfg.max_range);
    const auto far = sample_lidar(world, {0, 0, kPi}, cfg, 0.5, rng).ranges[0];
    ASSERT_TRUE(far.has_value());
    ASSERT_LE(*far, cfg.max_range);
  }
}

TEST(Lidar, Deterministic) {
  const WorldModel world = default_maze();
  RandomStream a(11);
  RandomStream b(11);
  EXPECT_EQ(sample_lidar(world, default_start_pose(), LidarConfig{}, 0.02, a),
            sample_lidar(world, default_start_pose(), LidarConfig{}, 0.02, b));
}
