#include "lrloe/sensors.hpp"

#include <cmath>
#include <stdexcept>

namespace lrloe {

ProfileSpec ProfileSpec::preset(const std::string& name, double duration) {
  ProfileSpec spec;
  spec.duration = duration;
  if (name == "constant") {
    spec.kind = Kind::kConstant;
    spec.amplitudes = {{{0.5}, {0.0}, {0.0}}};
    spec.frequencies = {{{0.0}, {0.0}, {0.0}}};
  } else if (name == "train") {
    // Gentle single-tone motion per axis; the profile the policy learns on.
    spec.kind = Kind::kSinusoidSum;
    spec.amplitudes = {{{0.5}, {0.4}, {0.3}}};
    spec.frequencies = {{{0.20}, {0.15}, {0.10}}};
  } else if (name == "simple") {
    spec.kind = Kind::kSinusoidSum;
    spec.amplitudes = {{{0.3}, {0.25}, {0.2}}};
    spec.frequencies = {{{0.10}, {0.12}, {0.08}}};
  } else if (name == "medium") {
    spec.kind = Kind::kSinusoidSum;
    spec.amplitudes = {{{1.0, 0.5}, {0.8, 0.4}, {0.6, 0.3}}};
    spec.frequencies = {{{0.30, 0.70}, {0.25, 0.55}, {0.20, 0.45}}};
  } else if (name == "drastic") {
    spec.kind = Kind::kDrastic;
    spec.amplitudes = {{{1.0, 0.5}, {0.8, 0.4}, {0.6, 0.3}}};
    spec.frequencies = {{{0.30, 0.70}, {0.25, 0.55}, {0.20, 0.45}}};
    spec.burst_start = 0.4 * duration;
    spec.burst_len = 0.2 * duration;
    spec.burst_amp = 25.0;
  } else {
    throw std::invalid_argument("unknown profile preset: " + name);
  }
  return spec;
}

UnitQuatd propagate_truth(const UnitQuatd& q, const Vec3& omega, double dt) {
  return hamilton(q, exp_q<double>(0.5 * dt * omega));
}

ImuSample synth_measurements(const UnitQuatd& q, const Vec3& omega,
                             const WorldConfig& world,
                             const NoiseConfig& noise, Rng& rng) {
  const Mat3 R_bn = to_rotation(q).transpose();
  ImuSample s;
  s.gyro = omega + rng.gaussian3(std::sqrt(noise.var_gyro));
  s.acc = -R_bn * world.gravity_n + rng.gaussian3(std::sqrt(noise.var_acc));
  s.mag = R_bn * world.mag_n + rng.gaussian3(std::sqrt(noise.var_mag));
  return s;
}

std::vector<Vec3> generate_profile(const ProfileSpec& spec, double dt) {
  if (spec.duration <= 0.0) {
    throw std::invalid_argument("profile duration must be positive");
  }
  const auto n = static_cast<std::size_t>(std::llround(spec.duration / dt));
  std::vector<Vec3> omega(n, Vec3::Zero());
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * dt;
    Vec3 w = Vec3::Zero();
    for (int axis = 0; axis < 3; ++axis) {
      const auto& amps = spec.amplitudes[axis];
      const auto& freqs = spec.frequencies[axis];
      if (spec.kind == ProfileSpec::Kind::kConstant) {
        if (!amps.empty()) w[axis] = amps[0];
        continue;
      }
      for (std::size_t i = 0; i < amps.size() && i < freqs.size(); ++i) {
        w[axis] += amps[i] * std::sin(2.0 * M_PI * freqs[i] * t);
      }
    }
    if (spec.kind == ProfileSpec::Kind::kDrastic && t >= spec.burst_start &&
        t < spec.burst_start + spec.burst_len) {
      // High-rate tumble on all axes for the burst window.
      w[0] += spec.burst_amp * std::sin(2.0 * M_PI * 2.0 * t);
      w[1] += spec.burst_amp * std::cos(2.0 * M_PI * 1.5 * t);
      w[2] += 0.5 * spec.burst_amp * std::sin(2.0 * M_PI * 2.5 * t);
    }
    omega[k] = w;
  }
  return omega;
}

Trajectory simulate(const ProfileSpec& spec, const WorldConfig& world,
                    const NoiseConfig& noise, const UnitQuatd& q0) {
  Trajectory traj;
  traj.dt = world.dt;
  traj.omega_true = generate_profile(spec, world.dt);
  const std::size_t n = traj.omega_true.size();
  traj.t.resize(n);
  traj.q_true.resize(n);
  traj.imu.resize(n);

  Rng rng = Rng::derive(noise.seed, 0x73696d756c617465ULL);
  UnitQuatd q = q0;
  for (std::size_t k = 0; k < n; ++k) {
    traj.t[k] = static_cast<double>(k) * world.dt;
    traj.q_true[k] = q;
    traj.imu[k] = synth_measurements(q, traj.omega_true[k], world, noise, rng);
    q = propagate_truth(q, traj.omega_true[k], world.dt);
  }
  return traj;
}

UnitQuatd random_orientation(Rng& rng) {
  // Shoemake's method from three uniforms.
  const double u1 = rng.uniform(), u2 = rng.uniform(), u3 = rng.uniform();
  const double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
  return UnitQuatd(a * std::sin(2.0 * M_PI * u2), a * std::cos(2.0 * M_PI * u2),
                   b * std::sin(2.0 * M_PI * u3),
                   b * std::cos(2.0 * M_PI * u3));
}

}  // namespace lrloe
