#pragma once

#include <Eigen/Geometry>

#include <cmath>

#include "widecal/common.hpp"

namespace widecal {

// Rotation vector (angle-axis) to rotation matrix.
inline Mat3 so3_exp(const Vec3& w) {
  double theta = w.norm();
  if (theta < 1e-12) {
    Mat3 r = Mat3::Identity();
    r(0, 1) = -w.z();
    r(1, 0) = w.z();
    r(0, 2) = w.y();
    r(2, 0) = -w.y();
    r(1, 2) = -w.x();
    r(2, 1) = w.x();
    return r;
  }
  return Eigen::AngleAxisd(theta, w / theta).toRotationMatrix();
}

inline Vec3 so3_log(const Mat3& r) {
  Eigen::AngleAxisd aa(r);
  return aa.angle() * aa.axis();
}

// Rigid transform mapping target-frame points into the camera frame.
struct Pose {
  Quat rotation = Quat::Identity();
  Vec3 translation = Vec3::Zero();

  Vec3 apply(const Vec3& x) const { return rotation * x + translation; }

  Pose inverse() const {
    Quat qi = rotation.conjugate();
    return {qi, qi * (-translation)};
  }

  Pose compose(const Pose& rhs) const {  // this * rhs
    return {(rotation * rhs.rotation).normalized(), rotation * rhs.translation + translation};
  }

  Mat3 matrix() const { return rotation.toRotationMatrix(); }

  // Left-multiplied tangent update: R <- Exp(w) R, t <- t + v.
  Pose retract(const Vec3& w, const Vec3& v) const {
    Quat dq(Eigen::AngleAxisd(w.norm(), w.norm() < 1e-12 ? Vec3::UnitX() : w.normalized()));
    return {(dq * rotation).normalized(), translation + v};
  }

  double rotation_angle_to(const Pose& other) const {
    Quat d = rotation.conjugate() * other.rotation;
    d.normalize();
    return 2.0 * std::atan2(d.vec().norm(), std::abs(d.w()));
  }
};

}  // namespace widecal
