// Pseudo-global localization proxy: when a peer contact happens and what it sends.
#pragma once

#include <vector>

#include "swarmloc/pose.hpp"
#include "swarmloc/world.hpp"

namespace swarmloc {

class RandomStream;

struct CommConfig {
  double t_sync = 4.0;        // s
  double r_mask = 0.55;       // m
  double sigma_sensor = 0.02; // m

  void validate() const;
};

/// Absolute tolerance on the sync interval; absorbs accumulated k*dt rounding.
inline constexpr double kSyncTimeTolerance = 1e-9;

struct LocalizationPacket {
  Vec2 position;
  double heading = 0.0;
  Vec2 position_variance;    // m^2
  double heading_variance = 0.0;  // rad^2
  int sender_id = 0;
  double timestamp = 0.0;
};

/// True once t_sync has elapsed since the last event. The first event is due at t_sync.
bool peer_event_due(double t, double last_event, const CommConfig& cfg);

/// Fabricates a peer packet from ground truth. Never looks at the estimator.
LocalizationPacket make_packet(const Pose& true_pose, const CommConfig& cfg, double sigma_imu,
                               RandomStream& rng, double t, int sender_id = -1);

struct AgentPosition {
  int id = 0;
  Vec2 position;
};

/// Ids of every other agent within r_mask (inclusive). Throws std::invalid_argument if self_id is absent.
std::vector<int> detect_peers_radius(const std::vector<AgentPosition>& positions, int self_id,
                                     const CommConfig& cfg);

}  // namespace swarmloc
