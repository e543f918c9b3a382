#pragma once

#include <numbers>

namespace swarmloc {

inline constexpr double kPi = std::numbers::pi;

/// Wraps an angle into (-pi, pi]. Throws std::invalid_argument on non-finite input.
double wrap_angle(double theta);

/// Planar pose; theta in radians, counter-clockwise from +x.
struct Pose {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  Pose normalized() const { return {x, y, wrap_angle(theta)}; }
  bool operator==(const Pose&) const = default;
};

}  // namespace swarmloc
