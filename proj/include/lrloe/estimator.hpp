// Deviation-form orientation estimator with a pluggable gain provider.
//
// One step, given gyro/accelerometer/magnetometer sample y and gain K:
//   q_pred = q_hat (x) exp_q(T/2 y_gyro)                (time update)
//   y_hat  = [-R(q_pred)^T g_n ; R(q_pred)^T m_n]       (predicted measurement)
//   eta    = K (y - y_hat)                              (deviation estimate)
//   q_hat' = rotvec_quat(eta) (x) q_pred                (multiplicative retraction)
//
// The gain provider sees only the previously applied deviation, which makes
// the same loop run a learned gain policy, a fixed gain, or the zero gain
// (pure open-loop gyro integration).

#pragma once

#include <utility>

#include "lrloe/sensors.hpp"

namespace lrloe {

using GainMatrix = Eigen::Matrix<double, 3, 6>;

struct EstimatorState {
  UnitQuatd q_hat;
  Vec3 eta_hat = Vec3::Zero();
  std::int64_t t = 0;

  bool finite() const { return q_hat.finite() && eta_hat.allFinite(); }
};

class GainProvider {
 public:
  virtual ~GainProvider() = default;
  // deterministic requests the provider's noise-free gain (mean action).
  virtual GainMatrix provide(const Vec3& eta_hat, bool deterministic) = 0;
};

class FixedGainProvider final : public GainProvider {
 public:
  FixedGainProvider() : gain_(GainMatrix::Zero()) {}
  explicit FixedGainProvider(const GainMatrix& gain) : gain_(gain) {}

  GainMatrix provide(const Vec3&, bool) override { return gain_; }

 private:
  GainMatrix gain_;
};

UnitQuatd time_update(const UnitQuatd& q_hat, const Vec3& y_gyro, double dt);

Vec6 predict_measurement(const UnitQuatd& q_pred, const WorldConfig& world);

// Returns (corrected quaternion, applied deviation eta).
std::pair<UnitQuatd, Vec3> correct(const UnitQuatd& q_pred,
                                   const Vec6& innovation,
                                   const GainMatrix& gain);

EstimatorState step(const EstimatorState& state, const ImuSample& sample,
                    GainProvider& provider, const WorldConfig& world,
                    bool deterministic = false);

// Orientation error as a rotation vector: quat_rotvec(q_true (x) q_hat^c).
Vec3 error_state(const UnitQuatd& q_true, const UnitQuatd& q_hat);

// Entrywise clamp to [-bound, bound].
GainMatrix clamp_gain(const GainMatrix& gain, double bound);

}  // namespace lrloe
