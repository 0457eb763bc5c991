#include "lrloe/estimator.hpp"

namespace lrloe {

UnitQuatd time_update(const UnitQuatd& q_hat, const Vec3& y_gyro, double dt) {
  return hamilton(q_hat, exp_q<double>(0.5 * dt * y_gyro));
}

Vec6 predict_measurement(const UnitQuatd& q_pred, const WorldConfig& world) {
  const Mat3 R_bn = to_rotation(q_pred).transpose();
  Vec6 y_hat;
  y_hat.head<3>() = -R_bn * world.gravity_n;
  y_hat.tail<3>() = R_bn * world.mag_n;
  return y_hat;
}

std::pair<UnitQuatd, Vec3> correct(const UnitQuatd& q_pred,
                                   const Vec6& innovation,
                                   const GainMatrix& gain) {
  const Vec3 eta = gain * innovation;
  return {hamilton(rotvec_quat<double>(eta), q_pred), eta};
}

EstimatorState step(const EstimatorState& state, const ImuSample& sample,
                    GainProvider& provider, const WorldConfig& world,
                    bool deterministic) {
  const UnitQuatd q_pred = time_update(state.q_hat, sample.gyro, world.dt);
  const Vec6 innovation =
      (Vec6() << sample.acc, sample.mag).finished() -
      predict_measurement(q_pred, world);
  const GainMatrix gain = provider.provide(state.eta_hat, deterministic);
  auto [q_new, eta] = correct(q_pred, innovation, gain);
  return {q_new, eta, state.t + 1};
}

Vec3 error_state(const UnitQuatd& q_true, const UnitQuatd& q_hat) {
  return quat_rotvec(hamilton(q_true, conj(q_hat)));
}

GainMatrix clamp_gain(const GainMatrix& gain, double bound) {
  return gain.cwiseMax(-bound).cwiseMin(bound);
}

}  // namespace lrloe
