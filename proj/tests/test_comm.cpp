#include <cmath>

#include <gtest/gtest.h>

#include "swarmloc/comm.hpp"
#include "swarmloc/random.hpp"

using namespace swarmloc;

TEST(PeerEvent, Examples) {
  const CommConfig cfg;
  EXPECT_FALSE(peer_event_due(3.968, 0.0, cfg));
  EXPECT_TRUE(peer_event_due(4.0, 0.0, cfg));
  EXPECT_FALSE(peer_event_due(7.99, 4.0, cfg));
  EXPECT_TRUE(peer_event_due(8.0, 4.0, cfg));
}

TEST(PeerEvent, AccumulatedTimestepCount) {
  const CommConfig cfg;
  for (const double dt : {0.032, 0.01, 0.05}) {
    for (const double duration : {60.0, 600.0}) {
      const long steps = std::lround(duration / dt);
      double last = 0.0;
      int events = 0;
      for (long k = 1; k <= steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        if (peer_event_due(t, last, cfg)) {
          ++events;
          last = t;
        }
      }
      EXPECT_EQ(events, static_cast<int>(std::floor(duration / cfg.t_sync + 1e-9))) << dt << " " << duration;
    }
  }
}

TEST(Packet, ZeroNoiseIsTruth) {
  CommConfig cfg;
  cfg.sigma_sensor = 0.0;
  RandomStream rng(1);
  const auto p = make_packet({1.5, -2.0, 0.3}, cfg, 0.0, rng, 4.0, 2);
  EXPECT_EQ(p.position, (Vec2{1.5, -2.0}));
  EXPECT_EQ(p.heading, 0.3);
  EXPECT_EQ(p.position_variance, (Vec2{0.0, 0.0}));
  EXPECT_EQ(p.heading_variance, 0.0);
  EXPECT_EQ(p.sender_id, 2);
  EXPECT_EQ(p.timestamp, 4.0);
}

TEST(Packet, NoiseMonteCarlo) {
  const CommConfig cfg;
  RandomStream rng(2);
  const int n = 1000000;
  double sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto p = make_packet({1.0, 2.0, 0.0}, cfg, 0.02, rng, 0.0);
    const double ex = p.position.x - 1.0;
    const double ey = p.position.y - 2.0;
    sx += ex;
    sy += ey;
    sxx += ex * ex;
    syy += ey * ey;
    sxy += ex * ey;
  }
  EXPECT_LT(std::abs(sx / n), 1e-4);
  EXPECT_LT(std::abs(sy / n), 1e-4);
  EXPECT_NEAR(std::sqrt(sxx / n), 0.02, 0.0002);
  EXPECT_NEAR(std::sqrt(syy / n), 0.02, 0.0002);
  EXPECT_LT(std::abs(sxy / n) / 4e-4, 0.01);
}

TEST(Packet, ReportsItsVariance) {
  const CommConfig cfg;
  RandomStream rng(3);
  const auto p = make_packet({0, 0, 0}, cfg, 0.02, rng, 0.0);
  EXPECT_DOUBLE_EQ(p.position_variance.x, 4e-4);
  EXPECT_DOUBLE_EQ(p.position_variance.y, 4e-4);
  EXPECT_DOUBLE_EQ(p.heading_variance, 4e-4);
}

TEST(Radius, Examples) {
  const CommConfig cfg;
  EXPECT_EQ(detect_peers_radius({{0, {0, 0}}, {1, {0.5, 0}}}, 0, cfg), std::vector<int>{1});
  EXPECT_TRUE(detect_peers_radius({{0, {0, 0}}, {1, {0.56, 0}}}, 0, cfg).empty());
  EXPECT_TRUE(detect_peers_radius({{0, {0, 0}}}, 0, cfg).empty());
  EXPECT_EQ(detect_peers_radius({{0, {0, 0}}, {1, {0.55, 0}}}, 0, cfg), std::vector<int>{1});
  EXPECT_THROW(detect_peers_radius({{0, {0, 0}}}, 3, cfg), std::invalid_argument);
}

TEST(Radius, Symmetric) {
  const CommConfig cfg;
  RandomStream rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<AgentPosition> agents;
    for (int i = 0; i < 6; ++i) {
      agents.push_back({i, {rng.uniform() * 2.0, rng.uniform() * 2.0}});
    }
    for (int i = 0; i < 6; ++i) {
      for (const int j : detect_peers_radius(agents, i, cfg)) {
        const auto back = detect_peers_radius(agents, j, cfg);
        ASSERT_NE(std::find(back.begin(), back.end(), i), back.end());
      }
    }
  }
}

TEST(CommConfig, Validation) {
  EXPECT_NO_THROW(CommConfig{}.validate());
  EXPECT_THROW((CommConfig{0.0, 0.55, 0.02}.validate()), std::invalid_argument);
  EXPECT_THROW((CommConfig{4.0, 0.55, -0.1}.validate()), std::invalid_argument);
}
