#include "swarmloc/kinematics.hpp"

#include <cmath>
#include <stdexcept>

#include "swarmloc/random.hpp"

namespace swarmloc {

void RobotGeometry::validate() const {
  if (!(wheel_radius > 0.0) || !(axle_length > 0.0) || !(body_radius > 0.0)) {
    throw std::invalid_argument("robot geometry: wheel_radius, axle_length and body_radius must be > 0");
  }
}

Pose diff_drive_delta(const Pose& pose, const OdometryDelta& odo, const RobotGeometry& geom) {
  const double d = 0.5 * (odo.d_left + odo.d_right);
  const double dtheta = (odo.d_right - odo.d_left) / geom.axle_length;
  const double heading = pose.theta + 0.5 * dtheta;
  return {pose.x + d * std::cos(heading), pose.y + d * std::sin(heading),
          wrap_angle(pose.theta + dtheta)};
}

OdometryDelta apply_slip(const OdometryDelta& true_odo, double sigma_slip, RandomStream& rng) {
  if (sigma_slip < 0.0) {
    throw std::invalid_argument("apply_slip: sigma_slip must be >= 0");
  }
  const double left_factor = rng.normal(1.0, sigma_slip);
  const double right_factor = rng.normal(1.0, sigma_slip);
  return {true_odo.d_left * left_factor, true_odo.d_right * right_factor};
}

}  // namespace swarmloc
