// Differential-drive kinematics and the wheel-slip encoder model.
#pragma once

#include "swarmloc/pose.hpp"

namespace swarmloc {

class RandomStream;

/// Wheel arc-length increments over one timestep, in meters.
struct OdometryDelta {
  double d_left = 0.0;
  double d_right = 0.0;

  bool operator==(const OdometryDelta&) const = default;
};

/// Pioneer 3-DX defaults.
struct RobotGeometry {
  double wheel_radius = 0.0975;
  double axle_length = 0.33;
  double body_radius = 0.2;

  void validate() const;
};

/// Wheel rim speeds in m/s.
struct WheelCommand {
  double v_left = 0.0;
  double v_right = 0.0;

  bool operator==(const WheelCommand&) const = default;
};

inline constexpr double kDefaultMaxWheelSpeed = 1.2;

/// Midpoint-heading integration of one odometry increment.
Pose diff_drive_delta(const Pose& pose, const OdometryDelta& odo, const RobotGeometry& geom);

/// Multiplies each wheel delta by an independent N(1, sigma_slip) factor.
OdometryDelta apply_slip(const OdometryDelta& true_odo, double sigma_slip, RandomStream& rng);

/// Wheel deltas produced by holding `cmd` for `dt` seconds.
inline OdometryDelta wheel_travel(const WheelCommand& cmd, double dt) {
  return {cmd.v_left * dt, cmd.v_right * dt};
}

}  // namespace swarmloc
