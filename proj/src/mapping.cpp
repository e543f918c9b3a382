#include "swarmloc/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "swarmloc/sensors.hpp"

namespace swarmloc {

void MappingConfig::validate() const {
  if (increment < 1) {
    throw std::invalid_argument("mapping config: increment must be >= 1");
  }
  if (tau_conf > max_confidence) {
    throw std::invalid_argument("mapping config: tau_conf exceeds max_confidence");
  }
  if (max_confidence < 1 || max_confidence > 65535 || !(resolution > 0.0) || omega_thresh < 0.0) {
    throw std::invalid_argument("mapping config: bad max_confidence, resolution or omega_thresh");
  }
}

ConfidenceGrid::ConfidenceGrid(Vec2 origin, double resolution, int rows, int cols, int max_confidence)
    : origin_(origin),
      resolution_(resolution),
      rows_(rows),
      cols_(cols),
      max_confidence_(max_confidence),
      cells_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0) {
  if (rows <= 0 || cols <= 0 || !(resolution > 0.0) || max_confidence < 1 || max_confidence > 65535) {
    throw std::invalid_argument("confidence grid: bad dimensions");
  }
}

ConfidenceGrid ConfidenceGrid::covering(const Bounds& bounds, const MappingConfig& cfg) {
  const int cols = static_cast<int>(std::ceil(bounds.width / cfg.resolution - 1e-9));
  const int rows = static_cast<int>(std::ceil(bounds.height / cfg.resolution - 1e-9));
  return {{bounds.min_x(), bounds.min_y()}, cfg.resolution, rows, cols, cfg.max_confidence};
}

int ConfidenceGrid::add(Cell c, int amount) {
  auto& v = cells_[index(c)];
  v = static_cast<std::uint16_t>(std::min(static_cast<int>(v) + amount, max_confidence_));
  return v;
}

Vec2 ConfidenceGrid::cell_center(Cell c) const {
  return {origin_.x + (c.col + 0.5) * resolution_, origin_.y + (c.row + 0.5) * resolution_};
}

std::size_t ConfidenceGrid::nonzero_count() const {
  return static_cast<std::size_t>(std::count_if(cells_.begin(), cells_.end(), [](auto v) { return v > 0; }));
}

std::size_t BinaryGrid::occupied_count() const {
  return static_cast<std::size_t>(std::count(occupied.begin(), occupied.end(), true));
}

bool should_map(double angular_velocity, const MappingConfig& cfg) {
  return std::abs(angular_velocity) <= cfg.omega_thresh;
}

std::optional<Cell> world_to_cell(const Vec2& point, const ConfidenceGrid& grid) {
  const double fc = std::floor((point.x - grid.origin().x) / grid.resolution());
  const double fr = std::floor((point.y - grid.origin().y) / grid.resolution());
  if (!(fc >= 0.0 && fr >= 0.0 && fc < grid.cols() && fr < grid.rows())) {
    return std::nullopt;
  }
  return Cell{static_cast<int>(fr), static_cast<int>(fc)};
}

void integrate_scan(ConfidenceGrid& grid, const Pose& est_pose, const LidarScan& scan, const MappingConfig& cfg,
                    double angular_velocity) {
  if (!should_map(angular_velocity, cfg)) {
    return;
  }
  for (int i = 0; i < static_cast<int>(scan.ranges.size()); ++i) {
    const auto& range = scan.ranges[static_cast<std::size_t>(i)];
    if (!range) {
      continue;
    }
    const double bearing = est_pose.theta + scan.config.ray_angle(i);
    const Vec2 hit{est_pose.x + *range * std::cos(bearing), est_pose.y + *range * std::sin(bearing)};
    if (const auto cell = world_to_cell(hit, grid)) {
      grid.add(*cell, cfg.increment);
    }
  }
}

BinaryGrid extract_occupancy(const ConfidenceGrid& grid, const MappingConfig& cfg) {
  BinaryGrid out{grid.rows(), grid.cols(), std::vector<bool>(static_cast<std::size_t>(grid.rows()) * grid.cols())};
  for (int r = 0; r < grid.rows(); ++r) {
    for (int c = 0; c < grid.cols(); ++c) {
      out.occupied[static_cast<std::size_t>(r) * grid.cols() + c] = grid.at({r, c}) >= cfg.tau_conf;
    }
  }
  return out;
}

void write_pgm(std::ostream& out, const BinaryGrid& map) {
  out << "P5\n" << map.cols << ' ' << map.rows << "\n255\n";
  std::vector<char> row(static_cast<std::size_t>(map.cols));
  for (int r = map.rows - 1; r >= 0; --r) {
    for (int c = 0; c < map.cols; ++c) {
      row[static_cast<std::size_t>(c)] = map.at({r, c}) ? static_cast<char>(0) : static_cast<char>(255);
    }
    out.write(row.data(), static_cast<std::streamsize>(row.size()));
  }
}

void write_map_metadata(std::ostream& out, const ConfidenceGrid& grid) {
  out << "origin_x " << grid.origin().x << '\n'
      << "origin_y " << grid.origin().y << '\n'
      << "resolution " << grid.resolution() << '\n'
      << "rows " << grid.rows() << '\n'
      << "cols " << grid.cols() << '\n'
      << "row0 max_y\n";
}

double wall_fidelity(const BinaryGrid& map, const ConfidenceGrid& grid, const WorldModel& world,
                     double tolerance) {
  std::size_t occupied = 0;
  std::size_t near = 0;
  for (int r = 0; r < map.rows; ++r) {
    for (int c = 0; c < map.cols; ++c) {
      if (!map.at({r, c})) {
        continue;
      }
      ++occupied;
      if (world.clearance(grid.cell_center({r, c})) <= tolerance) {
        ++near;
      }
    }
  }
  return occupied == 0 ? 0.0 : static_cast<double>(near) / static_cast<double>(occupied);
}

}  // namespace swarmloc
