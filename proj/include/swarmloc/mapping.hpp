// Confidence-accumulating occupancy grid.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "swarmloc/pose.hpp"
#include "swarmloc/world.hpp"

namespace swarmloc {

struct LidarScan;

struct MappingConfig {
  double omega_thresh = 0.05;  // rad/s
  int tau_conf = 30;
  int increment = 1;
  int max_confidence = 100;
  double resolution = 0.05;  // m per cell

  void validate() const;
};

struct Cell {
  int row = 0;  // along y
  int col = 0;  // along x

  bool operator==(const Cell&) const = default;
};

/// Hit counts per cell, saturating at max_confidence. Row 0 is the min-y edge.
class ConfidenceGrid {
 public:
  ConfidenceGrid(Vec2 origin, double resolution, int rows, int cols, int max_confidence);

  /// Grid exactly covering the world bounds.
  static ConfidenceGrid covering(const Bounds& bounds, const MappingConfig& cfg);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double resolution() const { return resolution_; }
  const Vec2& origin() const { return origin_; }
  int max_confidence() const { return max_confidence_; }

  int at(Cell c) const { return cells_[index(c)]; }
  /// Adds `amount`, saturating. Returns the new value.
  int add(Cell c, int amount);
  Vec2 cell_center(Cell c) const;
  std::size_t nonzero_count() const;

  bool operator==(const ConfidenceGrid&) const = default;

 private:
  std::size_t index(Cell c) const { return static_cast<std::size_t>(c.row) * cols_ + c.col; }

  Vec2 origin_;
  double resolution_;
  int rows_;
  int cols_;
  int max_confidence_;
  std::vector<std::uint16_t> cells_;
};

struct BinaryGrid {
  int rows = 0;
  int cols = 0;
  std::vector<bool> occupied;  // row-major, row 0 = min-y edge

  bool at(Cell c) const { return occupied[static_cast<std::size_t>(c.row) * cols + c.col]; }
  std::size_t occupied_count() const;
};

/// Lag suppression: map only while |omega| <= omega_thresh.
bool should_map(double angular_velocity, const MappingConfig& cfg);

std::optional<Cell> world_to_cell(const Vec2& point, const ConfidenceGrid& grid);

/// Projects every present range from est_pose and bumps the containing cell.
/// No-op while should_map is false.
void integrate_scan(ConfidenceGrid& grid, const Pose& est_pose, const LidarScan& scan, const MappingConfig& cfg,
                    double angular_velocity);

BinaryGrid extract_occupancy(const ConfidenceGrid& grid, const MappingConfig& cfg);

/// Binary PGM (P5): occupied = 0, free = 255, first row written is the max-y edge.
void write_pgm(std::ostream& out, const BinaryGrid& map);
/// Sidecar with origin and resolution.
void write_map_metadata(std::ostream& out, const ConfidenceGrid& grid);

/// Fraction of occupied cells whose centre lies within `tolerance` of a wall.
double wall_fidelity(const BinaryGrid& map, const ConfidenceGrid& grid, const WorldModel& world,
                     double tolerance);

}  // namespace swarmloc
