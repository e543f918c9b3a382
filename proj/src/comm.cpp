#include "swarmloc/comm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "swarmloc/random.hpp"
#include "swarmloc/sensors.hpp"

namespace swarmloc {

void CommConfig::validate() const {
  if (!(t_sync > 0.0) || !(r_mask > 0.0) || sigma_sensor < 0.0) {
    throw std::invalid_argument("comm config: need t_sync > 0, r_mask > 0, sigma_sensor >= 0");
  }
}

bool peer_event_due(double t, double last_event, const CommConfig& cfg) {
  return t - last_event >= cfg.t_sync - kSyncTimeTolerance;
}

LocalizationPacket make_packet(const Pose& true_pose, const CommConfig& cfg, double sigma_imu,
                               RandomStream& rng, double t, int sender_id) {
  LocalizationPacket packet;
  packet.position.x = true_pose.x + cfg.sigma_sensor * rng.standard_normal();
  packet.position.y = true_pose.y + cfg.sigma_sensor * rng.standard_normal();
  packet.heading = sample_imu(true_pose.theta, sigma_imu, rng);
  const double var_pos = cfg.sigma_sensor * cfg.sigma_sensor;
  packet.position_variance = {var_pos, var_pos};
  packet.heading_variance = sigma_imu * sigma_imu;
  packet.sender_id = sender_id;
  packet.timestamp = t;
  return packet;
}

std::vector<int> detect_peers_radius(const std::vector<AgentPosition>& positions, int self_id,
                                     const CommConfig& cfg) {
  const auto self = std::find_if(positions.begin(), positions.end(),
                                 [&](const AgentPosition& a) { return a.id == self_id; });
  if (self == positions.end()) {
    throw std::invalid_argument("detect_peers_radius: self id not present");
  }
  std::vector<int> peers;
  for (const auto& other : positions) {
    if (other.id == self_id) {
      continue;
    }
    const double dist = std::hypot(other.position.x - self->position.x, other.position.y - self->position.y);
    if (dist <= cfg.r_mask) {
      peers.push_back(other.id);
    }
  }
  return peers;
}

}  // namespace swarmloc
