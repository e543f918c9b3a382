#include "swarmloc/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "swarmloc/random.hpp"

namespace swarmloc {

std::string_view scenario_name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Baseline:
      return "baseline";
    case ScenarioKind::ImuFused:
      return "imu";
    case ScenarioKind::GreedySwarm:
      return "greedy";
  }
  return "unknown";
}

ScenarioKind parse_scenario(std::string_view name) {
  if (name == "baseline") return ScenarioKind::Baseline;
  if (name == "imu") return ScenarioKind::ImuFused;
  if (name == "greedy") return ScenarioKind::GreedySwarm;
  throw std::invalid_argument("unknown scenario '" + std::string(name) + "' (baseline|imu|greedy)");
}

NoiseConfig NoiseConfig::noiseless() {
  NoiseConfig n;
  n.sigma_slip = 0.0;
  n.sigma_imu = 0.0;
  n.sigma_lidar = 0.0;
  n.sigma_sensor = 0.0;
  return n;
}

ProcessNoise slip_matched_process_noise(double sigma_slip, double wheel_speed, double dt, double axle_length) {
  const double wheel_sigma = sigma_slip * wheel_speed * dt;
  const double trans_var = 0.5 * wheel_sigma * wheel_sigma;
  const double heading_sigma = std::sqrt(2.0) * wheel_sigma / axle_length;
  return ProcessNoise::diagonal(trans_var, trans_var, heading_sigma * heading_sigma);
}

MappingConfig RunConfig::mapping() const {
  MappingConfig m;
  m.omega_thresh = noise.omega_thresh;
  m.tau_conf = noise.tau_conf;
  m.increment = map_increment;
  m.max_confidence = map_max_confidence;
  m.resolution = map_resolution;
  return m;
}

const WorldModel& RunConfig::world_model() const {
  static const WorldModel kDefault = default_maze();
  return world ? *world : kDefault;
}

int RunConfig::step_count() const { return static_cast<int>(std::llround(duration / dt)); }

namespace {

const std::vector<Pose>& default_swarm_starts() {
  static const std::vector<Pose> starts{
      default_start_pose(), {2.0, -4.0, kPi / 2}, {-6.0, -3.0, 0.0}, {6.0, 0.0, kPi},
      {-6.0, 6.0, 0.0},     {2.0, 5.0, -kPi / 2}, {6.0, -7.0, kPi}, {-3.0, 6.5, 0.0},
  };
  return starts;
}

std::vector<Pose> start_poses_for(const RunConfig& cfg) {
  if (!cfg.start_poses.empty()) {
    return cfg.start_poses;
  }
  const auto& defaults = default_swarm_starts();
  return {defaults.begin(), defaults.begin() + cfg.agents};
}

}  // namespace

void RunConfig::validate() const {
  const auto fail = [](const std::string& what) { throw ConfigError(what); };
  if (!(duration > 0.0)) fail("duration must be > 0");
  if (!(dt > 0.0)) fail("dt must be > 0");
  if (step_count() < 1) fail("duration shorter than one step");
  if (noise.sigma_slip < 0.0 || noise.sigma_imu < 0.0 || noise.sigma_lidar < 0.0 || noise.sigma_sensor < 0.0) {
    fail("noise sigmas must be >= 0");
  }
  if (sample_every < 1) fail("sample_every must be >= 1");
  if (agents < 1) fail("agents must be >= 1");
  if (comm_mode == CommMode::Radius && agents < 2) fail("radius detection needs at least two agents");
  if ((process_noise.variances.array() < 0.0).any()) fail("process noise must be >= 0");
  try {
    noise.comm().validate();
    mapping().validate();
    geometry.validate();
    lidar.validate();
    wander.validate(lidar.max_range);
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  if (start_poses.empty()) {
    if (world) {
      fail("a custom world needs explicit start poses");
    }
    if (agents > static_cast<int>(default_swarm_starts().size())) fail("too many agents for the default starts");
  } else if (static_cast<int>(start_poses.size()) != agents) {
    fail("start pose count does not match agent count");
  }
  const auto& w = world_model();
  for (const auto& p : start_poses_for(*this)) {
    if (!w.bounds().contains({p.x, p.y}) || w.clearance({p.x, p.y}) < geometry.body_radius) {
      fail("start pose is outside the arena or inside a wall");
    }
  }
}

double euclidean_error(const Pose& truth, const Pose& estimate) {
  return std::hypot(truth.x - estimate.x, truth.y - estimate.y);
}

double error_reduction_rate(double e_swarm, double e_base) {
  if (e_base == 0.0) {
    throw std::domain_error("error_reduction_rate: baseline error is zero");
  }
  return (1.0 - e_swarm / e_base) * 100.0;
}

namespace {

/// Per-agent mutable trial state.
struct Agent {
  int id = 0;
  GroundTruth truth;
  BeliefState belief;
  LidarScan scan;
  RandomStream control_rng;
  RandomStream slip_rng;
  RandomStream imu_rng;
  RandomStream lidar_rng;
  RandomStream packet_rng;
  double last_event = 0.0;
  bool synced = false;
  TrialRecord record;

  // Filled by the sense phase.
  OdometryDelta measured_odometry;
  double imu_heading = 0.0;
};

std::string stream_label(const RunConfig& cfg, int agent, std::string_view source) {
  std::string label;
  if (!cfg.shared_noise) {
    label += scenario_name(cfg.scenario);
    label += '/';
  }
  if (agent > 0) {
    label += "agent" + std::to_string(agent) + '/';
  }
  label += source;
  return label;
}

Agent make_agent(const RunConfig& cfg, int id, const Pose& start) {
  const auto stream = [&](std::string_view source) {
    return RandomStream::derive(cfg.seed, stream_label(cfg, id, source));
  };
  Agent a{id,
          GroundTruth{start.normalized(), 0.0, 0.0},
          BeliefState{start.normalized(), Covariance3::Zero()},
          LidarScan{},
          stream("control"),
          stream("slip"),
          stream("imu"),
          stream("lidar"),
          stream("packet"),
          0.0,
          false,
          TrialRecord{},
          {},
          0.0};
  a.record.scenario = cfg.scenario;
  a.record.seed = cfg.seed;
  a.record.agent_id = id;
  a.record.final_grid = ConfidenceGrid::covering(cfg.world_model().bounds(), cfg.mapping());
  a.scan = sample_lidar(cfg.world_model(), a.truth.pose, cfg.lidar, cfg.noise.sigma_lidar, a.lidar_rng);
  a.record.samples.push_back({0.0, 0.0});
  a.record.truth_track.push_back(a.truth.pose);
  return a;
}

// control -> physics -> sense
void advance_and_sense(const RunConfig& cfg, Agent& a) {
  const WorldModel& world = cfg.world_model();
  const WheelCommand cmd = wander_step(a.scan, cfg.wander, a.control_rng);
  const PhysicsStep step = step_ground_truth(world, a.truth, cmd, cfg.dt, cfg.geometry);
  a.truth = step.state;
  if (step.blocked) {
    ++a.record.blocked_steps;
  }
  a.measured_odometry = apply_slip(step.realized, cfg.noise.sigma_slip, a.slip_rng);
  a.imu_heading = sample_imu(a.truth.pose.theta, cfg.noise.sigma_imu, a.imu_rng);
  a.scan = sample_lidar(world, a.truth.pose, cfg.lidar, cfg.noise.sigma_lidar, a.lidar_rng);
}

// estimate -> map -> metrics
void estimate_and_map(const RunConfig& cfg, Agent& a, int step, std::optional<int> peer) {
  const double t = step * cfg.dt;
  const NoiseConfig& noise = cfg.noise;
  a.belief = predict_state(a.belief, a.measured_odometry, cfg.process_noise, cfg.geometry, cfg.propagation);

  bool full_update = false;
  switch (cfg.scenario) {
    case ScenarioKind::Baseline:
      break;
    case ScenarioKind::ImuFused:
      a.belief = kalman_update(a.belief, Measurement::heading(a.imu_heading, noise.sigma_imu * noise.sigma_imu));
      ++a.record.heading_updates;
      break;
    case ScenarioKind::GreedySwarm:
      if (select_observation_mode(peer.has_value()) == ObservationMode::FullPose) {
        const LocalizationPacket packet =
            make_packet(a.truth.pose, noise.comm(), noise.sigma_imu, a.packet_rng, t, *peer);
        const Measurement z = Measurement::full_pose({packet.position.x, packet.position.y, packet.heading},
                                                     packet.position_variance.x, packet.position_variance.y,
                                                     packet.heading_variance);
        a.belief = kalman_update(a.belief, z);
        a.last_event = t;
        ++a.record.full_updates;
        full_update = true;
      } else {
        a.belief =
            kalman_update(a.belief, Measurement::heading(a.imu_heading, noise.sigma_imu * noise.sigma_imu));
        ++a.record.heading_updates;
      }
      break;
  }

  integrate_scan(a.record.final_grid, a.belief.mean, a.scan, cfg.mapping(), a.truth.angular_velocity);

  const double error = euclidean_error(a.truth.pose, a.belief.mean);
  const double heading_error = std::abs(wrap_angle(a.belief.mean.theta - a.truth.pose.theta));
  auto& rec = a.record;
  rec.peak_heading_error = std::max(rec.peak_heading_error, heading_error);
  if (full_update) {
    a.synced = true;
    SyncCheck check;
    check.t = t;
    check.error = error;
    check.covariance_diagonal = a.belief.covariance.diagonal();
    check.noise_diagonal << noise.sigma_sensor * noise.sigma_sensor, noise.sigma_sensor * noise.sigma_sensor,
        noise.sigma_imu * noise.sigma_imu;
    rec.sync_checks.push_back(check);
  }
  if (a.synced) {
    rec.peak_error_after_first_sync = std::max(rec.peak_error_after_first_sync, error);
  }
  if (step % cfg.sample_every == 0) {
    rec.samples.push_back({t, error});
    rec.truth_track.push_back(a.truth.pose);
  }
}

void finish(Agent& a) {
  auto& rec = a.record;
  rec.peak_error = 0.0;
  for (const auto& s : rec.samples) {
    rec.peak_error = std::max(rec.peak_error, s.error);
  }
  rec.final_error = euclidean_error(a.truth.pose, a.belief.mean);
  rec.final_belief = a.belief;
}

}  // namespace

std::vector<TrialRecord> run_swarm(const RunConfig& cfg) {
  cfg.validate();
  const auto starts = start_poses_for(cfg);
  std::vector<Agent> agents;
  agents.reserve(starts.size());
  for (int i = 0; i < cfg.agents; ++i) {
    agents.push_back(make_agent(cfg, i, starts[static_cast<std::size_t>(i)]));
  }
  const CommConfig comm = cfg.noise.comm();
  const int steps = cfg.step_count();
  std::vector<AgentPosition> snapshot(agents.size());
  for (int k = 1; k <= steps; ++k) {
    const double t = k * cfg.dt;
    for (auto& a : agents) {
      advance_and_sense(cfg, a);
    }
    for (std::size_t i = 0; i < agents.size(); ++i) {
      snapshot[i] = {agents[i].id, {agents[i].truth.pose.x, agents[i].truth.pose.y}};
    }
    for (auto& a : agents) {
      std::optional<int> peer;
      if (cfg.comm_mode == CommMode::Temporal) {
        if (peer_event_due(t, a.last_event, comm)) {
          peer = -1;  // proxy peer
        }
      } else if (const auto peers = detect_peers_radius(snapshot, a.id, comm); !peers.empty()) {
        peer = peers.front();
      }
      estimate_and_map(cfg, a, k, peer);
    }
  }
  std::vector<TrialRecord> records;
  records.reserve(agents.size());
  for (auto& a : agents) {
    finish(a);
    records.push_back(std::move(a.record));
  }
  return records;
}

TrialRecord run_trial(const RunConfig& cfg) {
  if (cfg.agents != 1) {
    throw ConfigError("run_trial is single-agent; use run_swarm");
  }
  return std::move(run_swarm(cfg).front());
}

void write_csv(std::ostream& out, const TrialRecord& record) {
  out << "Time,Error\n";
  char line[64];
  for (const auto& s : record.samples) {
    std::snprintf(line, sizeof line, "%.3f,%.6f\n", s.t, s.error);
    out << line;
  }
}

void export_csv(const TrialRecord& record, const std::filesystem::path& path) {
  if (record.samples.empty()) {
    throw std::invalid_argument("export_csv: record has no samples");
  }
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("export_csv: cannot open " + path.string());
  }
  write_csv(out, record);
  if (!out) {
    throw std::runtime_error("export_csv: write failed for " + path.string());
  }
}

std::vector<ErrorSample> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "Time,Error") {
    throw std::runtime_error("read_csv: missing `Time,Error` header");
  }
  std::vector<ErrorSample> samples;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    ErrorSample s;
    char comma = 0;
    std::istringstream fields(line);
    if (!(fields >> s.t >> comma >> s.error) || comma != ',') {
      throw std::runtime_error("read_csv: malformed row: " + line);
    }
    samples.push_back(s);
  }
  return samples;
}

std::vector<ErrorSample> import_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("import_csv: cannot open " + path.string());
  }
  return read_csv(in);
}

void export_map(const TrialRecord& record, const MappingConfig& cfg, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("export_map: cannot open " + path.string());
  }
  write_pgm(out, extract_occupancy(record.final_grid, cfg));
  auto meta_path = path;
  meta_path.replace_extension(".meta");
  std::ofstream meta(meta_path);
  if (!meta) {
    throw std::runtime_error("export_map: cannot open " + meta_path.string());
  }
  write_map_metadata(meta, record.final_grid);
  if (!out || !meta) {
    throw std::runtime_error("export_map: write failed for " + path.string());
  }
}

void write_summary(std::ostream& out, const TrialRecord& record) {
  out << std::setprecision(9);
  out << "scenario " << scenario_name(record.scenario) << '\n'
      << "seed " << record.seed << '\n'
      << "agent " << record.agent_id << '\n'
      << "samples " << record.samples.size() << '\n'
      << "peak_error " << record.peak_error << '\n'
      << "final_error " << record.final_error << '\n'
      << "peak_heading_error " << record.peak_heading_error << '\n'
      << "full_updates " << record.full_updates << '\n'
      << "heading_updates " << record.heading_updates << '\n'
      << "blocked_steps " << record.blocked_steps << '\n';
}

double visited_coverage(const std::vector<Pose>& track, const WorldModel& world, double body_radius,
                        double cell_size) {
  const auto& b = world.bounds();
  const int cols = static_cast<int>(std::ceil(b.width / cell_size - 1e-9));
  const int rows = static_cast<int>(std::ceil(b.height / cell_size - 1e-9));
  std::vector<char> free(static_cast<std::size_t>(rows * cols), 0);
  std::vector<char> visited(free.size(), 0);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const Vec2 centre{b.min_x() + (c + 0.5) * cell_size, b.min_y() + (r + 0.5) * cell_size};
      free[static_cast<std::size_t>(r * cols + c)] = world.clearance(centre) >= body_radius;
    }
  }
  for (const auto& p : track) {
    const int c = static_cast<int>(std::floor((p.x - b.min_x()) / cell_size));
    const int r = static_cast<int>(std::floor((p.y - b.min_y()) / cell_size));
    if (r >= 0 && r < rows && c >= 0 && c < cols) {
      visited[static_cast<std::size_t>(r * cols + c)] = 1;
    }
  }
  std::size_t free_count = 0;
  std::size_t hit = 0;
  for (std::size_t i = 0; i < free.size(); ++i) {
    free_count += free[i] ? 1 : 0;
    hit += (free[i] && visited[i]) ? 1 : 0;
  }
  return free_count == 0 ? 0.0 : static_cast<double>(hit) / static_cast<double>(free_count);
}

}  // namespace swarmloc
