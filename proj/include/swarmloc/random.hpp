// Seeded random streams. Everything stochastic in a trial draws from one of these.
#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace swarmloc {

/// Portable random stream: mt19937_64 plus a hand-rolled Box-Muller normal so that
/// draw sequences do not depend on the standard library's distribution code.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed = 0);

  /// Independent stream keyed by a fixed label, e.g. derive(trial_seed, "slip").
  static RandomStream derive(std::uint64_t seed, std::string_view label);

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform();
  /// Standard normal draw.
  double standard_normal();
  double normal(double mean, double stddev) { return mean + stddev * standard_normal(); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t mix_seed(std::uint64_t seed, std::string_view label);

}  // namespace swarmloc
