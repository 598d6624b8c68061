#pragma once

#include <Eigen/Dense>

namespace foldquad {

using Eigen::Matrix3d;
using Eigen::Vector3d;

inline Matrix3d hat(const Vector3d& w) {
  Matrix3d m;
  m << 0.0, -w.z(), w.y(),  //
      w.z(), 0.0, -w.x(),   //
      -w.y(), w.x(), 0.0;
  return m;
}

/// Inverse of hat(); only the antisymmetric part of `m` is used.
inline Vector3d vee(const Matrix3d& m) {
  return Vector3d(0.5 * (m(2, 1) - m(1, 2)), 0.5 * (m(0, 2) - m(2, 0)),
                  0.5 * (m(1, 0) - m(0, 1)));
}

/// Rodrigues' formula for exp(hat(phi)).
Matrix3d exp_so3(const Vector3d& phi);

/// Nearest rotation matrix (polar decomposition via SVD, det fixed to +1).
Matrix3d orthonormalize(const Matrix3d& r);

/// Active rotation about body z by `angle` (counter-clockwise).
inline Matrix3d rot_z(double angle) {
  return Eigen::AngleAxisd(angle, Vector3d::UnitZ()).toRotationMatrix();
}

/// Z-Y-X (yaw, pitch, roll) angles of a body-to-world rotation.
Vector3d euler_rpy(const Matrix3d& r);

/// Largest absolute entry of R^T R - I.
double orthonormality_error(const Matrix3d& r);

}  // namespace foldquad
