#include "swarmloc/controller.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "swarmloc/random.hpp"
#include "swarmloc/sensors.hpp"

namespace swarmloc {

void WanderParams::validate(double lidar_max_range) const {
  if (cruise_speed < 0.0 || noise_factor < 0.0 || steering_bias < 0.0 || avoid_distance < 0.0 ||
      avoid_half_angle < 0.0 || !(max_wheel_speed > 0.0)) {
    throw std::invalid_argument("wander params must be non-negative");
  }
  if (!(avoid_distance < lidar_max_range)) {
    throw std::invalid_argument("wander params: avoid_distance must be below the lidar range");
  }
}

WheelCommand wander_step(const LidarScan& scan, const WanderParams& params, RandomStream& rng) {
  const double noise = rng.standard_normal();

  constexpr double inf = std::numeric_limits<double>::infinity();
  double left_min = inf;
  double right_min = inf;
  for (int i = 0; i < static_cast<int>(scan.ranges.size()); ++i) {
    const auto& range = scan.ranges[static_cast<std::size_t>(i)];
    const double bearing = scan.config.ray_angle(i);
    if (!range || std::abs(bearing) > params.avoid_half_angle) {
      continue;
    }
    // The centre ray counts for both sides.
    if (bearing >= 0.0) {
      left_min = std::min(left_min, *range);
    }
    if (bearing <= 0.0) {
      right_min = std::min(right_min, *range);
    }
  }

  const double v = params.cruise_speed;
  WheelCommand cmd;
  if (std::min(left_min, right_min) < params.avoid_distance) {
    // The side is chosen from the whole half-scan, not the frontal sector: in a corner the
    // nearest sector return flips sides as the robot turns, and would make it dither in place.
    double left_sum = 0.0;
    double right_sum = 0.0;
    for (int i = 0; i < static_cast<int>(scan.ranges.size()); ++i) {
      const double bearing = scan.config.ray_angle(i);
      const double range = scan.ranges[static_cast<std::size_t>(i)].value_or(scan.config.max_range);
      if (bearing > 0.0) {
        left_sum += range;
      } else if (bearing < 0.0) {
        right_sum += range;
      }
    }
    if (left_sum <= right_sum) {
      cmd = {v, -v};  // obstacle on the left: spin clockwise
    } else {
      cmd = {-v, v};
    }
  } else {
    const double differential = v * (params.steering_bias + params.noise_factor * noise);
    cmd = {v - 0.5 * differential, v + 0.5 * differential};
  }
  const double vmax = params.max_wheel_speed;
  cmd.v_left = std::clamp(cmd.v_left, -vmax, vmax);
  cmd.v_right = std::clamp(cmd.v_right, -vmax, vmax);
  return cmd;
}

}  // namespace swarmloc
