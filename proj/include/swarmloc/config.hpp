// INI-style run configuration.
//
//   [run]      duration dt shared_noise start_x start_y start_theta world
//   [noise]    sigma_slip sigma_imu sigma_lidar sigma_sensor t_sync r_mask omega_thresh tau_conf
//   [mapping]  increment max_confidence resolution
//   [wander]   cruise_speed noise_factor steering_bias avoid_distance avoid_half_angle_deg max_wheel_speed
//   [geometry] wheel_radius axle_length body_radius
//   [lidar]    ray_count fov_deg max_range
//   [filter]   q_x q_y q_theta propagation (additive|jacobian)
//
// Unknown sections or keys are rejected.
#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "swarmloc/harness.hpp"

namespace swarmloc {

/// Overlays the settings in `in` on top of `base`. A relative `world` path is resolved
/// against base_dir. Throws ConfigError.
RunConfig parse_config(std::istream& in, RunConfig base = {}, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

}  // namespace swarmloc
