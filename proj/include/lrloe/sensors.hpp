// Ground-truth trajectory generation and synthetic gyroscope /
// accelerometer / magnetometer measurements.
//
// Discrete-time truth model at sample period T:
//   q_{t+1} = q_t (x) exp_q(T/2 w_t)
//   y_gyro  = w_t + e_w,            e_w ~ N(0, var_gyro I)
//   y_acc   = -R(q_t)^T g_n + e_a,  e_a ~ N(0, var_acc I)
//   y_mag   =  R(q_t)^T m_n + e_m,  e_m ~ N(0, var_mag I)
// Linear acceleration is assumed zero; gyro bias and magnetic distortion are
// not modelled.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "lrloe/quat.hpp"
#include "lrloe/rng.hpp"

namespace lrloe {

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix3d;

// Per-axis measurement noise variances (isotropic, sigma^2 I3).
struct NoiseConfig {
  double var_gyro = 3e-4;  // (rad/s)^2
  double var_acc = 5e-4;   // (m/s^2)^2
  double var_mag = 3e-4;   // (normalised units)^2
  std::uint64_t seed = 0;
};

struct WorldConfig {
  Vec3 gravity_n{0.0, 0.0, 9.81};  // m/s^2, navigation frame
  // Unit local magnetic field; 67 deg dip angle by default.
  Vec3 mag_n{std::cos(67.0 * M_PI / 180.0), 0.0,
             -std::sin(67.0 * M_PI / 180.0)};
  double dt = 0.01;  // s (100 Hz)
};

// Parametric angular-velocity profile.
struct ProfileSpec {
  enum class Kind { kConstant, kSinusoidSum, kDrastic };

  Kind kind = Kind::kSinusoidSum;
  // Per-axis term amplitudes (rad/s) and matching frequencies (Hz).
  // For kConstant only amplitudes[axis][0] is used.
  std::array<std::vector<double>, 3> amplitudes;
  std::array<std::vector<double>, 3> frequencies;
  // Burst parameters for kDrastic: inside [burst_start, burst_start+burst_len)
  // a high-amplitude oscillation is added on top of the base waveform.
  double burst_start = 4.0;   // s
  double burst_len = 2.0;     // s
  double burst_amp = 25.0;    // rad/s
  double duration = 10.0;     // s

  // Named presets: "constant", "train", "simple", "medium", "drastic".
  static ProfileSpec preset(const std::string& name, double duration);
};

struct ImuSample {
  Vec3 gyro = Vec3::Zero();  // rad/s
  Vec3 acc = Vec3::Zero();   // m/s^2
  Vec3 mag = Vec3::Zero();   // normalised

  bool finite() const {
    return gyro.allFinite() && acc.allFinite() && mag.allFinite();
  }
};

// Uniform-grid trajectory with retained ground truth. Loaded datasets may
// lack truth (has_truth == false) and never carry omega_true.
struct Trajectory {
  double dt = 0.01;
  std::vector<double> t;
  std::vector<UnitQuatd> q_true;
  std::vector<Vec3> omega_true;
  std::vector<ImuSample> imu;
  bool has_truth = true;

  std::size_t size() const { return imu.size(); }
};

// One step of the exact discrete orientation dynamics.
UnitQuatd propagate_truth(const UnitQuatd& q, const Vec3& omega, double dt);

// Noisy measurements at orientation q with true rate omega.
// Draw order per call: gyro, acc, mag (three Gaussians each).
ImuSample synth_measurements(const UnitQuatd& q, const Vec3& omega,
                             const WorldConfig& world,
                             const NoiseConfig& noise, Rng& rng);

// Deterministic waveform sampling on the dt grid; throws std::invalid_argument
// for non-positive duration.
std::vector<Vec3> generate_profile(const ProfileSpec& spec, double dt);

// Full synthetic trajectory; rng stream is derived from noise.seed.
Trajectory simulate(const ProfileSpec& spec, const WorldConfig& world,
                    const NoiseConfig& noise,
                    const UnitQuatd& q0 = UnitQuatd::identity());

// Uniform random orientation (for randomised initial attitudes).
UnitQuatd random_orientation(Rng& rng);

}  // namespace lrloe
