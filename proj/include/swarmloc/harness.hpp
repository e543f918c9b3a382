// Scenario orchestration, metrics and persistence for the drift/convergence experiments.
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "swarmloc/comm.hpp"
#include "swarmloc/controller.hpp"
#include "swarmloc/estimation.hpp"
#include "swarmloc/mapping.hpp"
#include "swarmloc/sensors.hpp"
#include "swarmloc/world.hpp"

namespace swarmloc {

enum class ScenarioKind { Baseline, ImuFused, GreedySwarm };

std::string_view scenario_name(ScenarioKind kind);      // baseline | imu | greedy
ScenarioKind parse_scenario(std::string_view name);     // throws std::invalid_argument

/// How peer contacts are triggered. Temporal is the single-agent proxy; Radius needs several agents.
enum class CommMode { Temporal, Radius };

/// The noise and communication parameters of the experiments.
struct NoiseConfig {
  double sigma_slip = 0.02;
  double sigma_imu = 0.02;    // rad
  double sigma_lidar = 0.02;  // m
  double sigma_sensor = 0.02; // m
  double t_sync = 4.0;        // s
  double r_mask = 0.55;       // m
  double omega_thresh = 0.05; // rad/s
  int tau_conf = 30;

  static NoiseConfig noiseless();
  CommConfig comm() const { return {t_sync, r_mask, sigma_sensor}; }
};

/// Per-step Q matching the spread that wheel slip causes at a given wheel speed:
/// translational sigma = sigma_slip*v*dt/sqrt(2), heading sigma = sqrt(2)*sigma_slip*v*dt/axle.
ProcessNoise slip_matched_process_noise(double sigma_slip, double wheel_speed, double dt, double axle_length);

struct RunConfig {
  double duration = 600.0;
  double dt = 0.032;
  NoiseConfig noise;
  ScenarioKind scenario = ScenarioKind::GreedySwarm;
  std::uint64_t seed = 1;

  std::shared_ptr<const WorldModel> world;  // null means default_maze()
  std::vector<Pose> start_poses;            // empty means the default start(s)
  int agents = 1;
  CommMode comm_mode = CommMode::Temporal;

  RobotGeometry geometry;
  WanderParams wander;
  LidarConfig lidar;
  // Matched to the default slip, cruise speed, timestep and axle.
  ProcessNoise process_noise = slip_matched_process_noise(0.02, 0.3, 0.032, 0.33);
  Propagation propagation = Propagation::Additive;

  // Grid layout; thresholds come from `noise`.
  int map_increment = 1;
  int map_max_confidence = 100;
  double map_resolution = 0.05;

  /// When false each scenario draws from its own streams instead of sharing them.
  bool shared_noise = true;
  int sample_every = 3;

  MappingConfig mapping() const;
  const WorldModel& world_model() const;
  int step_count() const;
  /// Throws ConfigError on any inconsistency.
  void validate() const;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ErrorSample {
  double t = 0.0;
  double error = 0.0;

  bool operator==(const ErrorSample&) const = default;
};

/// State right after a full-pose update.
struct SyncCheck {
  double t = 0.0;
  double error = 0.0;
  Eigen::Vector3d covariance_diagonal = Eigen::Vector3d::Zero();
  Eigen::Vector3d noise_diagonal = Eigen::Vector3d::Zero();

  bool operator==(const SyncCheck&) const = default;
};

struct TrialRecord {
  ScenarioKind scenario = ScenarioKind::Baseline;
  std::uint64_t seed = 0;
  int agent_id = 0;
  std::vector<ErrorSample> samples;
  ConfidenceGrid final_grid{{0.0, 0.0}, 1.0, 1, 1, 1};
  double peak_error = 0.0;
  double final_error = 0.0;
  /// Max over every step after the first full update; 0 if none happened.
  double peak_error_after_first_sync = 0.0;
  double peak_heading_error = 0.0;
  int full_updates = 0;
  int heading_updates = 0;
  int blocked_steps = 0;
  std::vector<SyncCheck> sync_checks;
  std::vector<Pose> truth_track;  // ground truth at each sample time
  BeliefState final_belief;

  bool operator==(const TrialRecord&) const = default;
};

/// Planar distance; heading ignored.
double euclidean_error(const Pose& truth, const Pose& estimate);

/// (1 - e_swarm / e_base) * 100. Throws std::domain_error if e_base is 0.
double error_reduction_rate(double e_swarm, double e_base);

/// Runs one single-agent trial. Deterministic in cfg.
TrialRecord run_trial(const RunConfig& cfg);

/// Runs cfg.agents agents in one world; one record per agent.
std::vector<TrialRecord> run_swarm(const RunConfig& cfg);

/// `Time,Error` with 3 and 6 decimals.
void write_csv(std::ostream& out, const TrialRecord& record);
void export_csv(const TrialRecord& record, const std::filesystem::path& path);
std::vector<ErrorSample> read_csv(std::istream& in);
std::vector<ErrorSample> import_csv(const std::filesystem::path& path);

/// Writes the thresholded map as PGM, plus a `.meta` sidecar with origin and resolution.
void export_map(const TrialRecord& record, const MappingConfig& cfg, const std::filesystem::path& path);

void write_summary(std::ostream& out, const TrialRecord& record);

/// Fraction of free 0.5 m cells (centre clear of walls by body_radius) visited by the truth track.
double visited_coverage(const std::vector<Pose>& track, const WorldModel& world, double body_radius,
                        double cell_size = 0.5);

}  // namespace swarmloc
