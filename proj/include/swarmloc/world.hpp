// Static 2D environment: wall segments, ground-truth motion and ray casting.
#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "swarmloc/kinematics.hpp"

namespace swarmloc {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Vec2&) const = default;
};

struct Segment {
  Vec2 a;
  Vec2 b;

  bool operator==(const Segment&) const = default;
};

/// Axis-aligned arena centred on the origin.
struct Bounds {
  double width = 15.0;
  double height = 15.0;

  double min_x() const { return -0.5 * width; }
  double max_x() const { return 0.5 * width; }
  double min_y() const { return -0.5 * height; }
  double max_y() const { return 0.5 * height; }
  bool contains(const Vec2& p, double tol = 1e-9) const;

  bool operator==(const Bounds&) const = default;
};

class WorldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Immutable after construction. The four boundary walls are always present and
/// appended after the interior walls.
class WorldModel {
 public:
  WorldModel(Bounds bounds, std::vector<Segment> interior_walls);

  const Bounds& bounds() const { return bounds_; }
  const std::vector<Segment>& walls() const { return walls_; }
  std::vector<Segment> interior_walls() const;

  /// Shortest distance from p to any wall.
  double clearance(const Vec2& p) const;

  bool operator==(const WorldModel&) const = default;

 private:
  Bounds bounds_;
  std::vector<Segment> walls_;
  std::size_t interior_count_ = 0;
};

double point_segment_distance(const Vec2& p, const Segment& s);
double segment_distance(const Segment& s, const Segment& t);
bool segments_intersect(const Segment& s, const Segment& t);

/// Distance to the nearest wall along the ray, if within max_range.
/// Throws WorldError when the origin lies outside the bounds.
std::optional<double> ray_cast(const WorldModel& world, const Vec2& origin, double angle, double max_range);

struct GroundTruth {
  Pose pose;
  double angular_velocity = 0.0;  // rad/s
  double linear_velocity = 0.0;   // m/s
};

/// One physics step plus the wheel travel the encoders actually saw.
struct PhysicsStep {
  GroundTruth state;
  OdometryDelta realized;
  bool blocked = false;
};

/// Integrates the command through diff_drive_delta. If the new position would bring
/// the body within body_radius of a wall, position is held and only heading advances.
PhysicsStep step_ground_truth(const WorldModel& world, const GroundTruth& gt, const WheelCommand& cmd,
                              double dt, const RobotGeometry& geom);

/// Builtin 15 m x 15 m maze.
WorldModel default_maze();
/// Pose the default maze is designed to start from.
Pose default_start_pose();

/// Text world format: `bounds W H` first, then one `x1 y1 x2 y2` wall per line, `#` comments.
WorldModel parse_world(std::istream& in);
WorldModel load_world(const std::string& path);
void write_world(std::ostream& out, const WorldModel& world);

}  // namespace swarmloc
