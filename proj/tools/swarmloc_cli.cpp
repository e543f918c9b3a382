// Command-line front end: single runs, three-scenario comparisons and world export.
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "swarmloc/config.hpp"
#include "swarmloc/harness.hpp"

namespace fs = std::filesystem;
using namespace swarmloc;

namespace {

// "1..5", "3" or "1,4,7".
std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const auto lo = std::stoull(text.substr(0, dots));
    const auto hi = std::stoull(text.substr(dots + 2));
    if (hi < lo) {
      throw std::invalid_argument("empty seed range: " + text);
    }
    for (auto s = lo; s <= hi; ++s) {
      seeds.push_back(s);
    }
    return seeds;
  }
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    seeds.push_back(std::stoull(item));
  }
  if (seeds.empty()) {
    throw std::invalid_argument("no seeds given");
  }
  return seeds;
}

RunConfig base_config(const std::string& config_path, double duration) {
  RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
  if (duration > 0.0) {
    cfg.duration = duration;
  }
  return cfg;
}

void write_record(const TrialRecord& rec, const RunConfig& cfg, const fs::path& dir, const std::string& stem) {
  export_csv(rec, dir / (stem + ".csv"));
  export_map(rec, cfg.mapping(), dir / (stem + ".pgm"));
}

int cmd_run(const std::string& scenario, std::uint64_t seed, double duration, const std::string& config_path,
            const fs::path& out, int agents, const std::string& comm) {
  RunConfig cfg = base_config(config_path, duration);
  cfg.scenario = parse_scenario(scenario);
  cfg.seed = seed;
  cfg.agents = agents;
  cfg.comm_mode = comm == "radius" ? CommMode::Radius : CommMode::Temporal;
  fs::create_directories(out);

  const auto records = run_swarm(cfg);
  for (const auto& rec : records) {
    const std::string suffix = records.size() > 1 ? "_agent" + std::to_string(rec.agent_id) : "";
    export_csv(rec, out / ("trace" + suffix + ".csv"));
    export_map(rec, cfg.mapping(), out / ("map" + suffix + ".pgm"));
    std::ofstream summary(out / ("summary" + suffix + ".txt"));
    write_summary(summary, rec);
    write_summary(std::cout, rec);
  }
  return 0;
}

int cmd_compare(const std::string& seed_text, double duration, const std::string& config_path, const fs::path& out) {
  const RunConfig base = base_config(config_path, duration);
  const auto seeds = parse_seed_list(seed_text);
  constexpr ScenarioKind kinds[] = {ScenarioKind::Baseline, ScenarioKind::ImuFused, ScenarioKind::GreedySwarm};

  // Trials are independent; aggregation happens after all of them finish.
  std::vector<std::future<TrialRecord>> jobs;
  for (const auto seed : seeds) {
    for (const auto kind : kinds) {
      RunConfig cfg = base;
      cfg.seed = seed;
      cfg.scenario = kind;
      jobs.push_back(std::async(std::launch::async, [cfg] { return run_trial(cfg); }));
    }
  }
  std::vector<TrialRecord> results;
  for (auto& j : jobs) {
    results.push_back(j.get());
  }

  fs::create_directories(out);
  std::ofstream eta(out / "eta.txt");
  eta << "seed peak_baseline peak_imu peak_greedy eta_percent\n";
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const auto& baseline = results[3 * i];
    const auto& imu = results[3 * i + 1];
    const auto& greedy = results[3 * i + 2];
    const fs::path dir = out / ("seed_" + std::to_string(seeds[i]));
    fs::create_directories(dir);
    write_record(baseline, base, dir, "baseline_data");
    write_record(imu, base, dir, "kalman");
    write_record(greedy, base, dir, "swarm_data");
    const double rate = error_reduction_rate(greedy.peak_error, baseline.peak_error);
    eta << seeds[i] << ' ' << baseline.peak_error << ' ' << imu.peak_error << ' ' << greedy.peak_error << ' '
        << rate << '\n';
    std::cout << "seed " << seeds[i] << ": peak baseline " << baseline.peak_error << " m, imu " << imu.peak_error
              << " m, greedy " << greedy.peak_error << " m, eta " << rate << " %\n";
  }
  return 0;
}

int cmd_export_world(const fs::path& out) {
  if (out.has_parent_path()) {
    fs::create_directories(out.parent_path());
  }
  std::ofstream file(out);
  if (!file) {
    throw std::runtime_error("cannot open " + out.string());
  }
  write_world(file, default_maze());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"swarmloc: greedy Kalman swarm localization simulator"};
  app.require_subcommand(1);

  std::string scenario = "greedy";
  std::uint64_t seed = 1;
  double duration = 0.0;
  std::string config_path;
  std::string out_dir = "out";
  int agents = 1;
  std::string comm = "temporal";
  auto* run = app.add_subcommand("run", "Run one scenario and write trace.csv, map.pgm, summary.txt");
  run->add_option("--scenario", scenario, "baseline | imu | greedy")
      ->check(CLI::IsMember({"baseline", "imu", "greedy"}));
  run->add_option("--seed", seed, "Trial seed");
  run->add_option("--duration", duration, "Trial length in seconds (default 600)");
  run->add_option("--config", config_path, "INI config file")->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--agents", agents, "Number of agents")->check(CLI::Range(1, 8));
  run->add_option("--comm", comm, "Peer trigger: temporal | radius")->check(CLI::IsMember({"temporal", "radius"}));

  std::string seeds = "1..5";
  double cmp_duration = 0.0;
  std::string cmp_config;
  std::string cmp_out = "compare";
  auto* compare = app.add_subcommand("compare", "Run all three scenarios per seed");
  compare->add_option("--seeds", seeds, "Seed range a..b or comma list");
  compare->add_option("--duration", cmp_duration, "Trial length in seconds (default 600)");
  compare->add_option("--config", cmp_config, "INI config file")->check(CLI::ExistingFile);
  compare->add_option("--out", cmp_out, "Output directory");

  std::string world_out = "world.txt";
  auto* export_world = app.add_subcommand("export-world", "Write the default maze as a world file");
  export_world->add_option("--out", world_out, "Output file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      return cmd_run(scenario, seed, duration, config_path, out_dir, agents, comm);
    }
    if (*compare) {
      return cmd_compare(seeds, cmp_duration, cmp_config, cmp_out);
    }
    if (*export_world) {
      return cmd_export_world(world_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
