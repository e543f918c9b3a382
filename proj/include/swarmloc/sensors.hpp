// Noise-injecting IMU and LiDAR models.
#pragma once

#include <optional>
#include <vector>

#include "swarmloc/pose.hpp"

namespace swarmloc {

class RandomStream;
class WorldModel;

/// Scan geometry. Defaults follow a Hokuyo URG-04LX at 1 degree spacing.
struct LidarConfig {
  double fov = 240.0 * kPi / 180.0;
  double max_range = 5.6;
  int ray_count = 240;

  void validate() const;
  /// Bearing of ray i relative to the heading; rays span [-fov/2, +fov/2] inclusive.
  double ray_angle(int i) const;

  bool operator==(const LidarConfig&) const = default;
};

struct LidarScan {
  LidarConfig config;
  std::vector<std::optional<double>> ranges;

  bool operator==(const LidarScan&) const = default;
};

/// Absolute heading reading: wrap(true_theta + N(0, sigma_imu)).
double sample_imu(double true_theta, double sigma_imu, RandomStream& rng);

/// Ray casts from the true pose and adds N(0, sigma_lidar) to each hit, clamped to (0, max_range].
LidarScan sample_lidar(const WorldModel& world, const Pose& true_pose, const LidarConfig& config,
                       double sigma_lidar, RandomStream& rng);

}  // namespace swarmloc
