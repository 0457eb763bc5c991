// Unit-quaternion algebra used by every estimator in this project.
//
// Conventions (used consistently everywhere):
//  * scalar-first storage (w, x, y, z)
//  * q^nb rotates body-frame vectors into the navigation frame
//  * log_q canonicalises to the w >= 0 hemisphere, so q and -q map to the
//    same rotation vector
//  * exp_q(u) = (cos|u|, sin|u| u/|u|), i.e. u is a HALF-angle vector;
//    rotation vectors (axis * angle, radians) convert through
//    rotvec_quat(phi) = exp_q(phi/2) and quat_rotvec(q) = 2 log_q(q).

#pragma once

#include <Eigen/Core>
#include <cmath>

namespace lrloe {

template <typename Scalar>
class UnitQuat {
 public:
  using Vec3 = Eigen::Matrix<Scalar, 3, 1>;
  using Vec4 = Eigen::Matrix<Scalar, 4, 1>;

  // Identity rotation.
  UnitQuat() : c_(Scalar(1), Scalar(0), Scalar(0), Scalar(0)) {}

  UnitQuat(Scalar w, Scalar x, Scalar y, Scalar z) : c_(w, x, y, z) {
    renormalize();
  }

  explicit UnitQuat(const Vec4& wxyz) : c_(wxyz) { renormalize(); }

  static UnitQuat identity() { return UnitQuat(); }

  Scalar w() const { return c_[0]; }
  Scalar x() const { return c_[1]; }
  Scalar y() const { return c_[2]; }
  Scalar z() const { return c_[3]; }

  const Vec4& coeffs() const { return c_; }
  Vec3 vec() const { return c_.template tail<3>(); }

  // Other representative of the same rotation (double cover).
  UnitQuat negated() const {
    UnitQuat q;
    q.c_ = -c_;
    return q;
  }

  bool finite() const { return c_.allFinite(); }

 private:
  void renormalize() { c_ /= c_.norm(); }

  Vec4 c_;
};

using UnitQuatd = UnitQuat<double>;

// Hamilton product a (x) b; composition of rotations, renormalised.
template <typename S>
UnitQuat<S> hamilton(const UnitQuat<S>& a, const UnitQuat<S>& b) {
  const typename UnitQuat<S>::Vec3 av = a.vec(), bv = b.vec();
  const S w = a.w() * b.w() - av.dot(bv);
  const typename UnitQuat<S>::Vec3 v = a.w() * bv + b.w() * av + av.cross(bv);
  return UnitQuat<S>(w, v[0], v[1], v[2]);
}

template <typename S>
UnitQuat<S> conj(const UnitQuat<S>& q) {
  return UnitQuat<S>(q.w(), -q.x(), -q.y(), -q.z());
}

// Quaternion exponential of a half-angle vector u.
template <typename S>
UnitQuat<S> exp_q(const Eigen::Matrix<S, 3, 1>& u) {
  const S n = u.norm();
  S k;  // sin(n)/n with series limit at n -> 0
  if (n < S(1e-8)) {
    k = S(1) - n * n / S(6);
  } else {
    k = std::sin(n) / n;
  }
  const Eigen::Matrix<S, 3, 1> v = k * u;
  return UnitQuat<S>(std::cos(n), v[0], v[1], v[2]);
}

// Inverse of exp_q on |u| < pi/2; picks the w >= 0 representative first.
template <typename S>
Eigen::Matrix<S, 3, 1> log_q(const UnitQuat<S>& q) {
  S w = q.w();
  Eigen::Matrix<S, 3, 1> v = q.vec();
  if (w < S(0)) {
    w = -w;
    v = -v;
  }
  const S s = v.norm();
  const S theta = std::atan2(s, w);
  S k;  // theta/sin(theta) applied through v = sin(theta) * axis
  if (s < S(1e-8)) {
    // theta ~ s/w; theta/s ~ (1 - s^2/(3 w^2)) / w
    k = (S(1) - s * s / (S(3) * w * w)) / w;
  } else {
    k = theta / s;
  }
  return k * v;
}

// Rotation vector (axis * angle, |phi| < pi after canonicalisation).
template <typename S>
UnitQuat<S> rotvec_quat(const Eigen::Matrix<S, 3, 1>& phi) {
  return exp_q<S>(S(0.5) * phi);
}

template <typename S>
Eigen::Matrix<S, 3, 1> quat_rotvec(const UnitQuat<S>& q) {
  return S(2) * log_q(q);
}

// Direction cosine matrix of q = q^nb (body -> navigation).
template <typename S>
Eigen::Matrix<S, 3, 3> to_rotation(const UnitQuat<S>& q) {
  const S w = q.w();
  const Eigen::Matrix<S, 3, 1> v = q.vec();
  Eigen::Matrix<S, 3, 3> vx;
  vx << S(0), -v[2], v[1], v[2], S(0), -v[0], -v[1], v[0], S(0);
  return (w * w - v.squaredNorm()) * Eigen::Matrix<S, 3, 3>::Identity() +
         S(2) * v * v.transpose() + S(2) * w * vx;
}

// Rotate a vector by q without forming the full matrix.
template <typename S>
Eigen::Matrix<S, 3, 1> rotate(const UnitQuat<S>& q,
                              const Eigen::Matrix<S, 3, 1>& p) {
  const Eigen::Matrix<S, 3, 1> v = q.vec();
  const Eigen::Matrix<S, 3, 1> t = S(2) * v.cross(p);
  return p + q.w() * t + v.cross(t);
}

// ZYX intrinsic Euler angles (yaw, pitch, roll) of q^nb.
// At gimbal lock (|pitch| = pi/2) roll is set to 0 and yaw carries the
// merged z/x rotation.
template <typename S>
Eigen::Matrix<S, 3, 1> to_euler_zyx(const UnitQuat<S>& q) {
  const S w = q.w(), x = q.x(), y = q.y(), z = q.z();
  const S sinp = S(2) * (w * y - z * x);
  Eigen::Matrix<S, 3, 1> ypr;
  if (std::abs(sinp) >= S(1) - S(1e-12)) {
    const Eigen::Matrix<S, 3, 3> R = to_rotation(q);
    ypr[0] = std::atan2(-R(0, 1), R(1, 1));
    ypr[1] = std::copysign(S(M_PI) / S(2), sinp);
    ypr[2] = S(0);
    return ypr;
  }
  ypr[0] = std::atan2(S(2) * (w * z + x * y), S(1) - S(2) * (y * y + z * z));
  ypr[1] = std::asin(sinp);
  ypr[2] = std::atan2(S(2) * (w * x + y * z), S(1) - S(2) * (x * x + y * y));
  return ypr;
}

template <typename S>
UnitQuat<S> from_euler_zyx(S yaw, S pitch, S roll) {
  const UnitQuat<S> qz(std::cos(yaw / 2), S(0), S(0), std::sin(yaw / 2));
  const UnitQuat<S> qy(std::cos(pitch / 2), S(0), std::sin(pitch / 2), S(0));
  const UnitQuat<S> qx(std::cos(roll / 2), std::sin(roll / 2), S(0), S(0));
  return hamilton(hamilton(qz, qy), qx);
}

// Geodesic angle between two orientations, in [0, pi].
template <typename S>
S angle_between(const UnitQuat<S>& a, const UnitQuat<S>& b) {
  return quat_rotvec(hamilton(a, conj(b))).norm();
}

}  // namespace lrloe
