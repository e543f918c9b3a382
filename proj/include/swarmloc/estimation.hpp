// Belief state and the predict/update cycle of the greedy EKF.
#pragma once

#include <stdexcept>

#include <Eigen/Dense>

#include "swarmloc/kinematics.hpp"

namespace swarmloc {

using Covariance3 = Eigen::Matrix3d;

/// Gaussian belief over a planar pose.
struct BeliefState {
  Pose mean;
  Covariance3 covariance = Covariance3::Zero();

  bool operator==(const BeliefState&) const = default;
};

/// Diagonal process noise added to P on every prediction.
struct ProcessNoise {
  Eigen::Vector3d variances = Eigen::Vector3d::Zero();  // m^2, m^2, rad^2 per step

  static ProcessNoise diagonal(double var_x, double var_y, double var_theta);
  Covariance3 matrix() const { return variances.asDiagonal(); }
};

enum class ObservationMode { HeadingOnly, FullPose };

/// Observation matrix H for a mode: [0 0 1] or I3.
Eigen::MatrixXd observation_matrix(ObservationMode mode);
int measurement_dimension(ObservationMode mode);

/// A measurement z with diagonal noise R. Values are (theta) or (x, y, theta).
class Measurement {
 public:
  Measurement(ObservationMode mode, Eigen::VectorXd values, Eigen::VectorXd noise_variances);

  static Measurement heading(double theta, double variance);
  static Measurement full_pose(const Pose& pose, double var_x, double var_y, double var_theta);

  ObservationMode mode() const { return mode_; }
  const Eigen::VectorXd& values() const { return values_; }
  Eigen::MatrixXd noise() const { return noise_.asDiagonal(); }
  const Eigen::VectorXd& noise_variances() const { return noise_; }

 private:
  ObservationMode mode_;
  Eigen::VectorXd values_;
  Eigen::VectorXd noise_;
};

/// Raised when the innovation covariance cannot be inverted.
class DegenerateUpdateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// How the covariance is carried through a prediction. Additive is P + Q; Jacobian is F P F^T + Q.
enum class Propagation { Additive, Jacobian };

Covariance3 predict_covariance(const Covariance3& p, const ProcessNoise& q);

BeliefState predict_state(const BeliefState& belief, const OdometryDelta& odo, const ProcessNoise& q,
                          const RobotGeometry& geom = {},
                          Propagation propagation = Propagation::Additive);

/// Standard Kalman correction with a shortest-arc heading innovation.
/// Throws DegenerateUpdateError if S = H P H^T + R is singular.
BeliefState kalman_update(const BeliefState& belief, const Measurement& z);

/// Greedy policy: use the full pose whenever a peer packet is available.
constexpr ObservationMode select_observation_mode(bool peer_available) {
  return peer_available ? ObservationMode::FullPose : ObservationMode::HeadingOnly;
}

}  // namespace swarmloc
