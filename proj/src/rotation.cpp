#include "foldquad/rotation.hpp"

#include <algorithm>
#include <cmath>

namespace foldquad {

Matrix3d exp_so3(const Vector3d& phi) {
  const double theta = phi.norm();
  const Matrix3d k = hat(phi);
  if (theta < 1e-8) {
    // second-order series; error O(theta^3)
    return Matrix3d::Identity() + k + 0.5 * k * k;
  }
  const double a = std::sin(theta) / theta;
  const double b = (1.0 - std::cos(theta)) / (theta * theta);
  return Matrix3d::Identity() + a * k + b * k * k;
}

Matrix3d orthonormalize(const Matrix3d& r) {
  Eigen::JacobiSVD<Matrix3d> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Matrix3d u = svd.matrixU();
  const Matrix3d v = svd.matrixV();
  if ((u * v.transpose()).determinant() < 0.0) u.col(2) *= -1.0;
  return u * v.transpose();
}

Vector3d euler_rpy(const Matrix3d& r) {
  const double pitch = std::asin(std::clamp(-r(2, 0), -1.0, 1.0));
  const double roll = std::atan2(r(2, 1), r(2, 2));
  const double yaw = std::atan2(r(1, 0), r(0, 0));
  return {roll, pitch, yaw};
}

double orthonormality_error(const Matrix3d& r) {
  return (r.transpose() * r - Matrix3d::Identity()).cwiseAbs().maxCoeff();
}

}  // namespace foldquad
