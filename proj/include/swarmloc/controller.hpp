// Stochastic wandering exploration.
#pragma once

#include "swarmloc/kinematics.hpp"
#include "swarmloc/pose.hpp"

namespace swarmloc {

class RandomStream;
struct LidarScan;

struct WanderParams {
  double cruise_speed = 0.3;     // m/s
  double noise_factor = 0.2;     // differential noise stddev, as a fraction of cruise speed
  double steering_bias = 0.05;   // constant differential, as a fraction of cruise speed
  double avoid_distance = 0.6;   // m
  double avoid_half_angle = 30.0 * kPi / 180.0;
  double max_wheel_speed = kDefaultMaxWheelSpeed;

  void validate(double lidar_max_range) const;
};

/// One control step. Cruises with a biased random differential; when something in the
/// frontal sector is closer than avoid_distance it spins in place away from the nearer side.
/// Exactly one normal draw is consumed per call.
WheelCommand wander_step(const LidarScan& scan, const WanderParams& params, RandomStream& rng);

}  // namespace swarmloc
