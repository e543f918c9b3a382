#include "swarmloc/sensors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "swarmloc/random.hpp"
#include "swarmloc/world.hpp"

namespace swarmloc {

void LidarConfig::validate() const {
  if (ray_count < 1 || !(max_range > 0.0) || !(fov > 0.0) || fov > 2.0 * kPi) {
    throw std::invalid_argument("lidar config: need ray_count >= 1, max_range > 0, fov in (0, 2pi]");
  }
}

double LidarConfig::ray_angle(int i) const {
  if (ray_count == 1) {
    return 0.0;
  }
  return -0.5 * fov + fov * static_cast<double>(i) / static_cast<double>(ray_count - 1);
}

double sample_imu(double true_theta, double sigma_imu, RandomStream& rng) {
  if (sigma_imu < 0.0) {
    throw std::invalid_argument("sample_imu: sigma_imu must be >= 0");
  }
  return wrap_angle(true_theta + sigma_imu * rng.standard_normal());
}

LidarScan sample_lidar(const WorldModel& world, const Pose& true_pose, const LidarConfig& config,
                       double sigma_lidar, RandomStream& rng) {
  if (sigma_lidar < 0.0) {
    throw std::invalid_argument("sample_lidar: sigma_lidar must be >= 0");
  }
  LidarScan scan{config, {}};
  scan.ranges.reserve(static_cast<std::size_t>(config.ray_count));
  const Vec2 origin{true_pose.x, true_pose.y};
  // Smallest positive range a noisy return may be clamped to.
  constexpr double kMinRange = 1e-6;
  for (int i = 0; i < config.ray_count; ++i) {
    const auto hit = ray_cast(world, origin, true_pose.theta + config.ray_angle(i), config.max_range);
    // Draw for every ray so the stream position does not depend on the geometry.
    const double noise = sigma_lidar * rng.standard_normal();
    if (hit) {
      scan.ranges.emplace_back(std::clamp(*hit + noise, kMinRange, config.max_range));
    } else {
      scan.ranges.emplace_back(std::nullopt);
    }
  }
  return scan;
}

}  // namespace swarmloc
