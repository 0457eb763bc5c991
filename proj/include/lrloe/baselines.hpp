// Classical attitude estimators run against the same measurement streams as
// the learned estimator: a multiplicative (error-state) EKF, a quaternion
// UKF with rotation-vector sigma points, and a complementary filter.
//
// All three share the conventions of the estimator module: navigation-frame
// deviation eta, retraction q_hat' = rotvec_quat(eta) (x) q_hat, and a
// 3-dimensional error state.

#pragma once

#include <vector>

#include "lrloe/estimator.hpp"

namespace lrloe {

using Mat6 = Eigen::Matrix<double, 6, 6>;

// ---------------------------------------------------------------------------
// Multiplicative EKF

struct EkfConfig {
  Mat3 Q = Mat3::Identity() * 3e-8;  // process noise per step (rad^2)
  Mat6 R = Mat6::Identity() * 5e-4;  // measurement noise
  double trace_ceiling = 1e3;        // covariance blow-up signal (rad^2)

  static EkfConfig from_noise(const NoiseConfig& noise, double dt);
};

struct EkfState {
  UnitQuatd q_hat;
  Mat3 P = Mat3::Identity() * 0.01;
};

EkfState ekf_init(const UnitQuatd& q0, double p0_var = 0.01);

// One predict+update cycle. Returns false when the covariance trace exceeds
// the ceiling or the state stops being finite (state left untouched then).
bool ekf_step(EkfState& state, const ImuSample& sample,
              const WorldConfig& world, const EkfConfig& config);

// ---------------------------------------------------------------------------
// Quaternion UKF

struct UkfConfig {
  double alpha = 1e-3;
  double beta = 2.0;
  double kappa = 0.0;
  Mat3 Q = Mat3::Identity() * 3e-8;
  Mat6 R = Mat6::Identity() * 5e-4;
  double trace_ceiling = 1e3;
  int mean_max_iters = 100;
  double mean_tol = 1e-10;

  static UkfConfig from_noise(const NoiseConfig& noise, double dt);
};

struct UkfState {
  UnitQuatd q_hat;
  Mat3 P = Mat3::Identity() * 0.01;
};

UkfState ukf_init(const UnitQuatd& q0, double p0_var = 0.01);

bool ukf_step(UkfState& state, const ImuSample& sample,
              const WorldConfig& world, const UkfConfig& config);

// Weighted quaternion barycentre via iterative log-mean. Weights must sum to
// one; iteration stops at tol or max_iters.
UnitQuatd quat_weighted_mean(const std::vector<UnitQuatd>& points,
                             const std::vector<double>& weights,
                             const UnitQuatd& initial_guess,
                             int max_iters = 100, double tol = 1e-10);

// ---------------------------------------------------------------------------
// Complementary filter

struct CfConfig {
  double k_acc = 0.01;   // tilt correction fraction per step, in [0, 1]
  double k_mag = 0.005;  // heading correction fraction per step, in [0, 1]
};

struct CfState {
  UnitQuatd q_hat;
};

// Gyro prediction, accelerometer tilt correction (roll/pitch only) and
// magnetometer heading correction (yaw only). Gains 0 reduce to open-loop
// integration; gains 1 snap to the measurement-implied orientation.
void cf_step(CfState& state, const ImuSample& sample, const WorldConfig& world,
             const CfConfig& config);

// Symmetrise and floor the eigenvalues of a covariance in place.
void psd_floor(Mat3& P, double floor = 1e-14);

}  // namespace lrloe
