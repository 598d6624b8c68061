#pragma once

// Configuration-dependent control allocation. Maps the four motor thrusts to
// [total upward thrust, roll, pitch, yaw torque] and back.

#include <Eigen/Dense>
#include <array>

#include "foldquad/morphology.hpp"

namespace foldquad {

enum class Arm { kUpper, kLower };

/// CW motors put their drag reaction along +thrust axis, CCW along -axis.
enum class Spin { kCW, kCCW };

struct Motor {
  Arm arm;
  double azimuth;           // rad, in the body x-y plane
  Eigen::Vector3d position;  // body FRD, m
  Eigen::Vector3d axis;      // unit thrust direction, body FRD
  Spin spin;

  double spin_sign() const { return spin == Spin::kCW ? 1.0 : -1.0; }
};

/// Motor order: upper arm (+A), upper arm (A + pi), lower arm (-A),
/// lower arm (pi - A). Upper arm sits h/2 above the lower arm. Each thrust
/// axis is tilted by delta toward the vehicle centre.
using MotorLayout = std::array<Motor, 4>;

MotorLayout motor_layout(const ParamSet& p, double alpha,
                         bool flip_spins = false);

/// Body force and torque produced by one unit of thrust on `m`.
struct UnitWrench {
  Eigen::Vector3d force;
  Eigen::Vector3d torque;
};
UnitWrench unit_wrench(const Motor& m, double km);

struct AllocationMatrix {
  Eigen::Matrix4d b;  // rows: thrust, tau_x, tau_y, tau_z
  double alpha = 0.0;
  Eigen::Vector4d singular_values;
  double condition_number = 0.0;
  int rank = 0;
  double max_motor_thrust = 0.0;
};

AllocationMatrix build_allocation(const ParamSet& p, double alpha,
                                  bool flip_spins = false);

/// Numerical rank with relative tolerance `rel_tol * sigma_max`.
int numerical_rank(const Eigen::Vector4d& singular_values,
                   double rel_tol = 1e-9);

struct AllocationResult {
  Eigen::Vector4d thrusts;
  bool saturated = false;
};

/// Solves B t = [T, tau] and clamps each motor to [0, max]. When clamping is
/// needed, roll/pitch are kept first, then yaw, then collective thrust.
/// Throws AllocationError (naming the lost axis) when B is rank deficient.
AllocationResult allocate(const AllocationMatrix& alloc, double total_thrust,
                          const Eigen::Vector3d& tau);

/// Minimum-norm least-squares allocation (pseudo-inverse), clamped. Used when
/// the full-rank path is unavailable; uncontrollable axes are dropped.
AllocationResult allocate_least_squares(const AllocationMatrix& alloc,
                                        double total_thrust,
                                        const Eigen::Vector3d& tau);

}  // namespace foldquad
