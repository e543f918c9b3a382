#include "swarmloc/estimation.hpp"

#include <cmath>
#include <string>

namespace swarmloc {

double wrap_angle(double theta) {
  if (!std::isfinite(theta)) {
    throw std::invalid_argument("wrap_angle: non-finite angle");
  }
  double r = std::remainder(theta, 2.0 * kPi);  // [-pi, pi]
  if (r <= -kPi) {
    r = kPi;
  }
  return r;
}

ProcessNoise ProcessNoise::diagonal(double var_x, double var_y, double var_theta) {
  if (var_x < 0.0 || var_y < 0.0 || var_theta < 0.0) {
    throw std::invalid_argument("process noise variances must be >= 0");
  }
  ProcessNoise q;
  q.variances << var_x, var_y, var_theta;
  return q;
}

Eigen::MatrixXd observation_matrix(ObservationMode mode) {
  if (mode == ObservationMode::FullPose) {
    return Eigen::MatrixXd::Identity(3, 3);
  }
  Eigen::MatrixXd h(1, 3);
  h << 0.0, 0.0, 1.0;
  return h;
}

int measurement_dimension(ObservationMode mode) { return mode == ObservationMode::FullPose ? 3 : 1; }

Measurement::Measurement(ObservationMode mode, Eigen::VectorXd values, Eigen::VectorXd noise_variances)
    : mode_(mode), values_(std::move(values)), noise_(std::move(noise_variances)) {
  const auto dim = measurement_dimension(mode_);
  if (values_.size() != dim || noise_.size() != dim) {
    throw std::invalid_argument("measurement: dimension does not match observation mode (expected " +
                                std::to_string(dim) + ")");
  }
  if ((noise_.array() < 0.0).any()) {
    throw std::invalid_argument("measurement: noise variances must be >= 0");
  }
}

Measurement Measurement::heading(double theta, double variance) {
  return {ObservationMode::HeadingOnly, Eigen::VectorXd::Constant(1, theta),
          Eigen::VectorXd::Constant(1, variance)};
}

Measurement Measurement::full_pose(const Pose& pose, double var_x, double var_y, double var_theta) {
  Eigen::VectorXd values(3);
  values << pose.x, pose.y, pose.theta;
  Eigen::VectorXd noise(3);
  noise << var_x, var_y, var_theta;
  return {ObservationMode::FullPose, std::move(values), std::move(noise)};
}

Covariance3 predict_covariance(const Covariance3& p, const ProcessNoise& q) { return p + q.matrix(); }

BeliefState predict_state(const BeliefState& belief, const OdometryDelta& odo, const ProcessNoise& q,
                          const RobotGeometry& geom, Propagation propagation) {
  BeliefState out;
  out.mean = diff_drive_delta(belief.mean, odo, geom);
  if (propagation == Propagation::Additive) {
    out.covariance = predict_covariance(belief.covariance, q);
    return out;
  }
  const double d = 0.5 * (odo.d_left + odo.d_right);
  const double heading = belief.mean.theta + 0.5 * (odo.d_right - odo.d_left) / geom.axle_length;
  Eigen::Matrix3d f = Eigen::Matrix3d::Identity();
  f(0, 2) = -d * std::sin(heading);
  f(1, 2) = d * std::cos(heading);
  out.covariance = predict_covariance(f * belief.covariance * f.transpose(), q);
  return out;
}

namespace {

// S is PSD by construction, so det(S) <= prod(diag(S)). A tiny ratio means S is
// singular relative to its own scale, whatever the units of the observed block.
void check_innovation_covariance(const Eigen::MatrixXd& s) {
  const Eigen::VectorXd diag = s.diagonal();
  if ((diag.array() <= 0.0).any()) {
    throw DegenerateUpdateError("kalman_update: innovation covariance has a non-positive diagonal");
  }
  const double ratio = s.determinant() / diag.prod();
  if (!(ratio >= 1e-12)) {
    throw DegenerateUpdateError("kalman_update: innovation covariance is singular");
  }
}

}  // namespace

BeliefState kalman_update(const BeliefState& belief, const Measurement& z) {
  const Eigen::MatrixXd h = observation_matrix(z.mode());
  const Eigen::Matrix3d& p = belief.covariance;
  const Eigen::MatrixXd s = h * p * h.transpose() + z.noise();
  check_innovation_covariance(s);

  Eigen::MatrixXd s_inv;
  if (s.rows() == 1) {
    s_inv = Eigen::MatrixXd::Constant(1, 1, 1.0 / s(0, 0));
  } else {
    s_inv = Eigen::Matrix3d(s).inverse();
  }
  const Eigen::MatrixXd k = p * h.transpose() * s_inv;

  const Eigen::Vector3d x(belief.mean.x, belief.mean.y, belief.mean.theta);
  Eigen::VectorXd innovation = z.values() - h * x;
  const Eigen::Index heading_row = innovation.size() - 1;  // theta is last in both modes
  innovation(heading_row) = wrap_angle(innovation(heading_row));

  const Eigen::Vector3d corrected = x + k * innovation;
  const Eigen::Matrix3d m = p - k * h * p;

  BeliefState out;
  out.mean = {corrected(0), corrected(1), wrap_angle(corrected(2))};
  out.covariance = 0.5 * (m + m.transpose());
  return out;
}

}  // namespace swarmloc
