#include "swarmloc/world.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace swarmloc {

namespace {

double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
Vec2 sub(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

constexpr double kParallelEps = 1e-15;

}  // namespace

bool Bounds::contains(const Vec2& p, double tol) const {
  return p.x >= min_x() - tol && p.x <= max_x() + tol && p.y >= min_y() - tol && p.y <= max_y() + tol;
}

WorldModel::WorldModel(Bounds bounds, std::vector<Segment> interior_walls)
    : bounds_(bounds), walls_(std::move(interior_walls)) {
  if (!(bounds_.width > 0.0) || !(bounds_.height > 0.0)) {
    throw WorldError("world bounds must be positive");
  }
  for (const auto& w : walls_) {
    if (!bounds_.contains(w.a) || !bounds_.contains(w.b)) {
      throw WorldError("wall endpoint outside world bounds");
    }
  }
  interior_count_ = walls_.size();
  const Vec2 ll{bounds_.min_x(), bounds_.min_y()};
  const Vec2 lr{bounds_.max_x(), bounds_.min_y()};
  const Vec2 ur{bounds_.max_x(), bounds_.max_y()};
  const Vec2 ul{bounds_.min_x(), bounds_.max_y()};
  walls_.push_back({ll, lr});
  walls_.push_back({lr, ur});
  walls_.push_back({ur, ul});
  walls_.push_back({ul, ll});
}

std::vector<Segment> WorldModel::interior_walls() const {
  return {walls_.begin(), walls_.begin() + static_cast<std::ptrdiff_t>(interior_count_)};
}

double WorldModel::clearance(const Vec2& p) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& w : walls_) {
    best = std::min(best, point_segment_distance(p, w));
  }
  return best;
}

double point_segment_distance(const Vec2& p, const Segment& s) {
  const Vec2 e = sub(s.b, s.a);
  const double len2 = dot(e, e);
  double u = 0.0;
  if (len2 > 0.0) {
    u = std::clamp(dot(sub(p, s.a), e) / len2, 0.0, 1.0);
  }
  const Vec2 closest{s.a.x + u * e.x, s.a.y + u * e.y};
  return std::hypot(p.x - closest.x, p.y - closest.y);
}

bool segments_intersect(const Segment& s, const Segment& t) {
  const Vec2 r = sub(s.b, s.a);
  const Vec2 q = sub(t.b, t.a);
  const double denom = cross(r, q);
  const Vec2 ta = sub(t.a, s.a);
  if (std::abs(denom) < kParallelEps) {
    // Parallel: only touching if collinear and overlapping.
    if (std::abs(cross(ta, r)) > 1e-12) {
      return false;
    }
    return point_segment_distance(t.a, s) < 1e-12 || point_segment_distance(t.b, s) < 1e-12 ||
           point_segment_distance(s.a, t) < 1e-12;
  }
  const double u = cross(ta, q) / denom;
  const double v = cross(ta, r) / denom;
  constexpr double tol = 1e-12;
  return u >= -tol && u <= 1.0 + tol && v >= -tol && v <= 1.0 + tol;
}

double segment_distance(const Segment& s, const Segment& t) {
  if (segments_intersect(s, t)) {
    return 0.0;
  }
  return std::min({point_segment_distance(s.a, t), point_segment_distance(s.b, t),
                   point_segment_distance(t.a, s), point_segment_distance(t.b, s)});
}

std::optional<double> ray_cast(const WorldModel& world, const Vec2& origin, double angle, double max_range) {
  if (!world.bounds().contains(origin)) {
    throw WorldError("ray_cast: origin outside world bounds");
  }
  const Vec2 d{std::cos(angle), std::sin(angle)};
  double best = std::numeric_limits<double>::infinity();
  for (const auto& w : world.walls()) {
    const Vec2 e = sub(w.b, w.a);
    const Vec2 ao = sub(w.a, origin);
    const double denom = cross(d, e);
    if (std::abs(denom) < kParallelEps) {
      // Ray runs along the wall line: the first endpoint ahead is the hit.
      if (std::abs(cross(ao, d)) > 1e-12) {
        continue;
      }
      for (const Vec2& end : {w.a, w.b}) {
        const double t = dot(sub(end, origin), d);
        if (t > 0.0) {
          best = std::min(best, t);
        }
      }
      continue;
    }
    const double t = cross(ao, e) / denom;
    const double u = cross(ao, d) / denom;
    if (t > 0.0 && u >= 0.0 && u <= 1.0) {
      best = std::min(best, t);
    }
  }
  if (best <= max_range) {
    return best;
  }
  return std::nullopt;
}

PhysicsStep step_ground_truth(const WorldModel& world, const GroundTruth& gt, const WheelCommand& cmd,
                              double dt, const RobotGeometry& geom) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("step_ground_truth: dt must be > 0");
  }
  const OdometryDelta travel = wheel_travel(cmd, dt);
  const Pose next = diff_drive_delta(gt.pose, travel, geom);

  PhysicsStep step;
  step.realized = travel;
  step.state.pose = next;

  const Vec2 from{gt.pose.x, gt.pose.y};
  const Vec2 to{next.x, next.y};
  if (!(to == from)) {
    const double next_clearance = world.clearance(to);
    if (next_clearance < geom.body_radius && next_clearance < world.clearance(from)) {
      // Held against the wall: wheels still turn the body in place.
      step.blocked = true;
      step.realized = {0.5 * (travel.d_left - travel.d_right), 0.5 * (travel.d_right - travel.d_left)};
      step.state.pose = {gt.pose.x, gt.pose.y, next.theta};
    }
  }
  const double moved = 0.5 * (step.realized.d_left + step.realized.d_right);
  step.state.linear_velocity = moved / dt;
  step.state.angular_velocity = (step.realized.d_right - step.realized.d_left) / geom.axle_length / dt;
  return step;
}

WorldModel default_maze() {
  // Corridors between any two non-touching walls are at least 1.5 m wide.
  std::vector<Segment> walls{
      {{-4.0, -7.5}, {-4.0, 2.5}},   // west spine, from the south wall
      {{-7.5, 4.5}, {-1.5, 4.5}},    // north-west shelf
      {{0.0, -4.5}, {0.0, 3.0}},     // central spine
      {{0.0, -2.0}, {4.0, -2.0}},    // east arm off the spine
      {{4.0, 1.0}, {4.0, 7.5}},      // north-east spine, from the north wall
      {{2.5, -5.5}, {7.5, -5.5}},    // south-east shelf
      {{1.5, 2.0}, {2.5, 2.0}},      // free-standing baffle
      {{-2.0, -7.5}, {-2.0, -5.0}},  // south stub
  };
  return WorldModel(Bounds{15.0, 15.0}, std::move(walls));
}

Pose default_start_pose() { return {-2.0, -1.0, 0.0}; }

WorldModel parse_world(std::istream& in) {
  std::optional<Bounds> bounds;
  std::vector<Segment> walls;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) {
      continue;
    }
    const auto fail = [&](const std::string& what) {
      return WorldError("world file line " + std::to_string(line_no) + ": " + what);
    };
    if (first == "bounds") {
      if (bounds) {
        throw fail("duplicate bounds line");
      }
      Bounds b;
      if (!(fields >> b.width >> b.height)) {
        throw fail("expected `bounds W H`");
      }
      bounds = b;
      continue;
    }
    if (!bounds) {
      throw fail("`bounds W H` must come before any wall");
    }
    Segment s;
    std::istringstream coords(line);
    if (!(coords >> s.a.x >> s.a.y >> s.b.x >> s.b.y)) {
      throw fail("expected `x1 y1 x2 y2`");
    }
    std::string extra;
    if (coords >> extra) {
      throw fail("trailing fields after wall");
    }
    walls.push_back(s);
  }
  if (!bounds) {
    throw WorldError("world file: missing `bounds W H` line");
  }
  return WorldModel(*bounds, std::move(walls));
}

WorldModel load_world(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw WorldError("cannot open world file: " + path);
  }
  return parse_world(in);
}

void write_world(std::ostream& out, const WorldModel& world) {
  out << "# x1 y1 x2 y2 (meters); outer boundary walls are implicit\n";
  out << std::setprecision(17) << "bounds " << world.bounds().width << ' ' << world.bounds().height << '\n';
  for (const auto& w : world.interior_walls()) {
    out << w.a.x << ' ' << w.a.y << ' ' << w.b.x << ' ' << w.b.y << '\n';
  }
}

}  // namespace swarmloc
