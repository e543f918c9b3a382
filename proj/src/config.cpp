#include "swarmloc/config.hpp"

#include <fstream>
#include <functional>
#include <map>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace swarmloc {

namespace {

namespace pt = boost::property_tree;

constexpr double kDeg = kPi / 180.0;

template <typename T>
T get(const pt::ptree& node, const std::string& key) {
  try {
    return node.get_value<T>();
  } catch (const pt::ptree_bad_data&) {
    throw ConfigError("config: bad value for '" + key + "': " + node.data());
  }
}

bool get_bool(const pt::ptree& node, const std::string& key) {
  const auto& v = node.data();
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config: bad boolean for '" + key + "': " + v);
}

using Setter = std::function<void(RunConfig&, const pt::ptree&, const std::string&)>;

template <typename T, typename F>
Setter setter(F field) {
  return [field](RunConfig& cfg, const pt::ptree& node, const std::string& key) {
    field(cfg) = get<T>(node, key);
  };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table{
      {"run.duration", setter<double>([](RunConfig& c) -> double& { return c.duration; })},
      {"run.dt", setter<double>([](RunConfig& c) -> double& { return c.dt; })},
      {"run.shared_noise",
       [](RunConfig& c, const pt::ptree& n, const std::string& k) { c.shared_noise = get_bool(n, k); }},
      {"run.start_x",
       [](RunConfig& c, const pt::ptree& n, const std::string& k) { c.start_poses.at(0).x = get<double>(n, k); }},
      {"run.start_y",
       [](RunConfig& c, const pt::ptree& n, const std::string& k) { c.start_poses.at(0).y = get<double>(n, k); }},
      {"run.start_theta",
       [](RunConfig& c, const pt::ptree& n, const std::string& k) {
         c.start_poses.at(0).theta = get<double>(n, k);
       }},

      {"noise.sigma_slip", setter<double>([](RunConfig& c) -> double& { return c.noise.sigma_slip; })},
      {"noise.sigma_imu", setter<double>([](RunConfig& c) -> double& { return c.noise.sigma_imu; })},
      {"noise.sigma_lidar", setter<double>([](RunConfig& c) -> double& { return c.noise.sigma_lidar; })},
      {"noise.sigma_sensor", setter<double>([](RunConfig& c) -> double& { return c.noise.sigma_sensor; })},
      {"noise.t_sync", setter<double>([](RunConfig& c) -> double& { return c.noise.t_sync; })},
      {"noise.r_mask", setter<double>([](RunConfig& c) -> double& { return c.noise.r_mask; })},
      {"noise.omega_thresh", setter<double>([](RunConfig& c) -> double& { return c.noise.omega_thresh; })},
      {"noise.tau_conf", setter<int>([](RunConfig& c) -> int& { return c.noise.tau_conf; })},

      {"mapping.increment", setter<int>([](RunConfig& c) -> int& { return c.map_increment; })},
      {"mapping.max_confidence", setter<int>([](RunConfig& c) -> int& { return c.map_max_confidence; })},
      {"mapping.resolution", setter<double>([](RunConfig& c) -> double& { return c.map_resolution; })},

      {"wander.cruise_speed", setter<double>([](RunConfig& c) -> double& { return c.wander.cruise_speed; })},
      {"wander.noise_factor", setter<double>([](RunConfig& c) -> double& { return c.wander.noise_factor; })},
      {"wander.steering_bias", setter<double>([](RunConfig& c) -> double& { return c.wander.steering_bias; })},
      {"wander.avoid_distance", setter<double>([](RunConfig& c) -> double& { return c.wander.avoid_distance; })},
      {"wander.avoid_half_angle_deg",
       [](RunConfig& c, const pt::ptree& n, const std::string& k) {
         c.wander.avoid_half_angle = get<double>(n, k) * kDeg;
       }},
      {"wander.max_wheel_speed",
       setter<double>([](RunConfig& c) -> double& { return c.wander.max_wheel_speed; })},

      {"geometry.wheel_radius", setter<double>([](RunConfig& c) -> double& { return c.geometry.wheel_radius; })},
      {"geometry.axle_length", setter<double>([](RunConfig& c) -> double& { return c.geometry.axle_length; })},
      {"geometry.body_radius", setter<double>([](RunConfig& c) -> double& { return c.geometry.body_radius; })},

      {"lidar.ray_count", setter<int>([](RunConfig& c) -> int& { return c.lidar.ray_count; })},
      {"lidar.fov_deg",
       [](RunConfig& c, const pt::ptree& n, const std::string& k) { c.lidar.fov = get<double>(n, k) * kDeg; }},
      {"lidar.max_range", setter<double>([](RunConfig& c) -> double& { return c.lidar.max_range; })},

      {"filter.q_x", setter<double>([](RunConfig& c) -> double& { return c.process_noise.variances(0); })},
      {"filter.q_y", setter<double>([](RunConfig& c) -> double& { return c.process_noise.variances(1); })},
      {"filter.q_theta", setter<double>([](RunConfig& c) -> double& { return c.process_noise.variances(2); })},
      {"filter.propagation",
       [](RunConfig& c, const pt::ptree& n, const std::string& k) {
         if (n.data() == "additive") {
           c.propagation = Propagation::Additive;
         } else if (n.data() == "jacobian") {
           c.propagation = Propagation::Jacobian;
         } else {
           throw ConfigError("config: '" + k + "' must be additive or jacobian");
         }
       }},
  };
  return table;
}

}  // namespace

RunConfig parse_config(std::istream& in, RunConfig base, const std::filesystem::path& base_dir) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  bool start_touched = false;
  for (const auto& [section, entries] : tree) {
    if (entries.empty() && !entries.data().empty()) {
      throw ConfigError("config: key '" + section + "' outside a section");
    }
    for (const auto& [key, node] : entries) {
      const std::string full = section + "." + key;
      if (full == "run.world") {
        std::filesystem::path world_path = node.data();
        if (world_path.is_relative()) {
          world_path = base_dir / world_path;
        }
        base.world = std::make_shared<const WorldModel>(load_world(world_path.string()));
        continue;
      }
      const auto it = setters().find(full);
      if (it == setters().end()) {
        throw ConfigError("config: unknown key '" + full + "'");
      }
      if (full.rfind("run.start_", 0) == 0 && !start_touched) {
        start_touched = true;
        if (base.start_poses.empty()) {
          base.start_poses.push_back(default_start_pose());
        }
      }
      it->second(base, node, full);
    }
  }
  return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file: " + path);
  }
  return parse_config(in, std::move(base), std::filesystem::path(path).parent_path());
}

}  // namespace swarmloc
