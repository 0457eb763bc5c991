#include "lrloe/baselines.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>

namespace lrloe {

namespace {

Mat3 skew(const Vec3& v) {
  Mat3 m;
  m << 0, -v[2], v[1], v[2], 0, -v[0], -v[1], v[0], 0;
  return m;
}

// Measurement Jacobian wrt the navigation-frame deviation at q_hat:
//   d/d_eta [-R^T g ; R^T m] = [-R^T [g]x ; R^T [m]x]
Eigen::Matrix<double, 6, 3> measurement_jacobian(const UnitQuatd& q_hat,
                                                 const WorldConfig& world) {
  const Mat3 R_bn = to_rotation(q_hat).transpose();
  Eigen::Matrix<double, 6, 3> H;
  H.topRows<3>() = -R_bn * skew(world.gravity_n);
  H.bottomRows<3>() = R_bn * skew(world.mag_n);
  return H;
}

}  // namespace

void psd_floor(Mat3& P, double floor) {
  P = 0.5 * (P + P.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Mat3> es(P);
  const Vec3 ev = es.eigenvalues().cwiseMax(floor);
  P = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
  P = 0.5 * (P + P.transpose()).eval();
}

// ---------------------------------------------------------------------------
// EKF

EkfConfig EkfConfig::from_noise(const NoiseConfig& noise, double dt) {
  EkfConfig c;
  c.Q = Mat3::Identity() * std::max(noise.var_gyro, 1e-12) * dt * dt;
  c.R.setZero();
  c.R.topLeftCorner<3, 3>() =
      Mat3::Identity() * std::max(noise.var_acc, 1e-12);
  c.R.bottomRightCorner<3, 3>() =
      Mat3::Identity() * std::max(noise.var_mag, 1e-12);
  return c;
}

EkfState ekf_init(const UnitQuatd& q0, double p0_var) {
  return {q0, Mat3::Identity() * p0_var};
}

bool ekf_step(EkfState& state, const ImuSample& sample,
              const WorldConfig& world, const EkfConfig& config) {
  // Predict. The navigation-frame deviation is invariant under the gyro
  // propagation and the isotropic gyro noise keeps Q frame-independent.
  const UnitQuatd q_pred = time_update(state.q_hat, sample.gyro, world.dt);
  Mat3 P = state.P + config.Q;

  // Update.
  const Eigen::Matrix<double, 6, 3> H = measurement_jacobian(q_pred, world);
  const Vec6 innovation =
      (Vec6() << sample.acc, sample.mag).finished() -
      predict_measurement(q_pred, world);
  const Mat6 S = H * P * H.transpose() + config.R;
  const Eigen::Matrix<double, 3, 6> K = P * H.transpose() * S.ldlt().solve(
      Mat6::Identity());
  const Vec3 eta = K * innovation;

  const Mat3 IKH = Mat3::Identity() - K * H;
  P = IKH * P * IKH.transpose() + K * config.R * K.transpose();  // Joseph
  psd_floor(P);

  const UnitQuatd q_new = hamilton(rotvec_quat<double>(eta), q_pred);
  if (!q_new.finite() || !P.allFinite() ||
      P.trace() > config.trace_ceiling) {
    return false;
  }
  state.q_hat = q_new;
  state.P = P;
  return true;
}

// ---------------------------------------------------------------------------
// UKF

UkfConfig UkfConfig::from_noise(const NoiseConfig& noise, double dt) {
  UkfConfig c;
  c.Q = Mat3::Identity() * std::max(noise.var_gyro, 1e-12) * dt * dt;
  c.R.setZero();
  c.R.topLeftCorner<3, 3>() =
      Mat3::Identity() * std::max(noise.var_acc, 1e-12);
  c.R.bottomRightCorner<3, 3>() =
      Mat3::Identity() * std::max(noise.var_mag, 1e-12);
  return c;
}

UkfState ukf_init(const UnitQuatd& q0, double p0_var) {
  return {q0, Mat3::Identity() * p0_var};
}

UnitQuatd quat_weighted_mean(const std::vector<UnitQuatd>& points,
                             const std::vector<double>& weights,
                             const UnitQuatd& initial_guess, int max_iters,
                             double tol) {
  UnitQuatd mean = initial_guess;
  for (int iter = 0; iter < max_iters; ++iter) {
    Vec3 delta = Vec3::Zero();
    for (std::size_t i = 0; i < points.size(); ++i) {
      delta += weights[i] * quat_rotvec(hamilton(points[i], conj(mean)));
    }
    mean = hamilton(rotvec_quat<double>(delta), mean);
    if (delta.norm() < tol) break;
  }
  return mean;
}

namespace {

struct SigmaPoints {
  std::vector<UnitQuatd> q;      // 2n+1 points
  std::vector<Vec3> delta;       // generating deviations
  std::vector<double> w_mean, w_cov;
};

SigmaPoints make_sigma_points(const UnitQuatd& q_hat, const Mat3& P,
                              const UkfConfig& config) {
  constexpr int n = 3;
  const double lambda =
      config.alpha * config.alpha * (n + config.kappa) - n;
  Mat3 Ps = P;
  psd_floor(Ps);
  const Mat3 Sqrt = ((n + lambda) * Ps).llt().matrixL();

  SigmaPoints sp;
  sp.q.reserve(2 * n + 1);
  sp.delta.reserve(2 * n + 1);
  sp.q.push_back(q_hat);
  sp.delta.push_back(Vec3::Zero());
  for (int i = 0; i < n; ++i) {
    const Vec3 d = Sqrt.col(i);
    sp.q.push_back(hamilton(rotvec_quat<double>(d), q_hat));
    sp.delta.push_back(d);
    sp.q.push_back(hamilton(rotvec_quat<double>(-d), q_hat));
    sp.delta.push_back(-d);
  }
  sp.w_mean.assign(2 * n + 1, 1.0 / (2.0 * (n + lambda)));
  sp.w_cov = sp.w_mean;
  sp.w_mean[0] = lambda / (n + lambda);
  sp.w_cov[0] = sp.w_mean[0] + 1.0 - config.alpha * config.alpha + config.beta;
  return sp;
}

}  // namespace

bool ukf_step(UkfState& state, const ImuSample& sample,
              const WorldConfig& world, const UkfConfig& config) {
  // Predict: push sigma points through the gyro propagation.
  SigmaPoints sp = make_sigma_points(state.q_hat, state.P, config);
  for (auto& q : sp.q) q = time_update(q, sample.gyro, world.dt);

  UnitQuatd q_pred = quat_weighted_mean(sp.q, sp.w_mean, sp.q[0],
                                        config.mean_max_iters, config.mean_tol);
  Mat3 P_pred = config.Q;
  std::vector<Vec3> dev(sp.q.size());
  for (std::size_t i = 0; i < sp.q.size(); ++i) {
    dev[i] = quat_rotvec(hamilton(sp.q[i], conj(q_pred)));
    P_pred += sp.w_cov[i] * dev[i] * dev[i].transpose();
  }
  psd_floor(P_pred);

  // Update: redraw sigma points around the predicted mean.
  SigmaPoints su = make_sigma_points(q_pred, P_pred, config);
  std::vector<Vec6> z(su.q.size());
  Vec6 z_mean = Vec6::Zero();
  for (std::size_t i = 0; i < su.q.size(); ++i) {
    z[i] = predict_measurement(su.q[i], world);
    z_mean += su.w_mean[i] * z[i];
  }
  Mat6 S = config.R;
  Eigen::Matrix<double, 3, 6> C = Eigen::Matrix<double, 3, 6>::Zero();
  for (std::size_t i = 0; i < su.q.size(); ++i) {
    const Vec6 dz = z[i] - z_mean;
    S += su.w_cov[i] * dz * dz.transpose();
    C += su.w_cov[i] * su.delta[i] * dz.transpose();
  }

  const Eigen::Matrix<double, 3, 6> K = C * S.ldlt().solve(Mat6::Identity());
  const Vec6 y = (Vec6() << sample.acc, sample.mag).finished();
  const Vec3 eta = K * (y - z_mean);
  Mat3 P = P_pred - K * S * K.transpose();
  psd_floor(P);

  const UnitQuatd q_new = hamilton(rotvec_quat<double>(eta), q_pred);
  if (!q_new.finite() || !P.allFinite() ||
      P.trace() > config.trace_ceiling) {
    return false;
  }
  state.q_hat = q_new;
  state.P = P;
  return true;
}

// ---------------------------------------------------------------------------
// Complementary filter

void cf_step(CfState& state, const ImuSample& sample, const WorldConfig& world,
             const CfConfig& config) {
  UnitQuatd q = time_update(state.q_hat, sample.gyro, world.dt);

  const Vec3 g_dir = world.gravity_n.normalized();

  // Tilt: rotate the estimate so the measured gravity direction matches the
  // navigation-frame one. The correction axis is horizontal, so heading is
  // untouched.
  const Vec3 v = rotate(q, Vec3(-sample.acc));
  if (v.norm() > 1e-12) {
    const Vec3 axis = v.normalized().cross(g_dir);
    const double angle = std::atan2(axis.norm(), v.normalized().dot(g_dir));
    if (axis.norm() > 1e-12) {
      const Vec3 delta = config.k_acc * angle * axis.normalized();
      q = hamilton(rotvec_quat<double>(delta), q);
    }
  }

  // Heading: compare the horizontally projected magnetometer reading with the
  // reference field and rotate about the vertical only.
  const Vec3 m_est = rotate(q, sample.mag);
  const Vec3 m_est_h = m_est - m_est.dot(g_dir) * g_dir;
  const Vec3 m_ref_h = world.mag_n - world.mag_n.dot(g_dir) * g_dir;
  if (m_est_h.norm() > 1e-12 && m_ref_h.norm() > 1e-12) {
    const double dpsi = std::atan2(m_ref_h.cross(m_est_h).dot(g_dir),
                                   m_ref_h.dot(m_est_h));
    const Vec3 delta = -config.k_mag * dpsi * g_dir;
    q = hamilton(rotvec_quat<double>(delta), q);
  }

  state.q_hat = q;
}

}  // namespace lrloe
