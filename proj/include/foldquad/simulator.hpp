#pragma once

// 6-DOF rigid-body model of the folding quadrotor: Newton-Euler with the
// joint-angle dependent inertia, first-order motor lag and a rate-limited
// joint. World frame NED, body frame FRD.

#include <Eigen/Dense>
#include <limits>
#include <vector>

#include "foldquad/morphology.hpp"

namespace foldquad {

struct RigidState {
  Eigen::Vector3d p = Eigen::Vector3d::Zero();
  Eigen::Vector3d v = Eigen::Vector3d::Zero();
  Eigen::Matrix3d r = Eigen::Matrix3d::Identity();  // body -> world
  Eigen::Vector3d omega = Eigen::Vector3d::Zero();  // body rates

  bool all_finite() const {
    return p.allFinite() && v.allFinite() && r.allFinite() &&
           omega.allFinite();
  }
};

struct RigidDerivative {
  Eigen::Vector3d p_dot;
  Eigen::Vector3d v_dot;
  Eigen::Vector3d omega_dot;  // attitude evolves as R_dot = R hat(omega)
};

struct MotorBank {
  Eigen::Vector4d commanded = Eigen::Vector4d::Zero();
  Eigen::Vector4d actual = Eigen::Vector4d::Zero();
};

enum class DisturbanceKind { kConstantForce, kOscillatingForce, kImpulse };

/// External force (world frame) and torque (body frame).
struct Wrench {
  Eigen::Vector3d force = Eigen::Vector3d::Zero();
  Eigen::Vector3d torque = Eigen::Vector3d::Zero();
};

/// Active on [start_s, start_s + duration_s).
///  - constant force: magnitude_n along direction (wind)
///  - oscillating: (magnitude_n + amplitude_n sin(2 pi f tau)) along the
///    direction swung about world z by sweep_rad cos(2 pi f tau) (fan)
///  - impulse: magnitude_n along direction, a short poke
/// torque_nm is applied in the body frame for every kind.
struct Disturbance {
  DisturbanceKind kind = DisturbanceKind::kConstantForce;
  Eigen::Vector3d direction = Eigen::Vector3d::UnitX();
  double magnitude_n = 0.0;
  double amplitude_n = 0.0;
  double frequency_hz = 0.0;
  double sweep_rad = 0.0;
  double start_s = 0.0;
  double duration_s = 0.0;
  Eigen::Vector3d torque_nm = Eigen::Vector3d::Zero();

  Wrench evaluate(double t) const;
  bool operator==(const Disturbance&) const = default;
};

Wrench total_disturbance(const std::vector<Disturbance>& list, double t);

/// Diagonal inertia J(alpha) = diag(I_x(A), I_y(A), I_z).
Eigen::Vector3d body_inertia(const ParamSet& p, double alpha);

/// Body force and torque from the four motor thrusts at joint angle alpha.
Wrench motor_wrench(const ParamSet& p, double alpha,
                    const Eigen::Vector4d& thrusts);

/// State derivative for fixed motor wrench and external disturbance.
RigidDerivative dynamics_derivative(const ParamSet& p, const RigidState& s,
                                    double alpha, const Wrench& motors,
                                    const Wrench& external);

struct World {
  double t = 0.0;
  RigidState rigid;
  MorphState morph;
  MotorBank motors;
};

struct ActuatorCommand {
  Eigen::Vector4d motor_thrusts = Eigen::Vector4d::Zero();
  double alpha = 0.0;
};

/// One fixed step: RK4 on (p, v, omega) with the attitude advanced through
/// the exponential map of the RK4-averaged body rate, then re-orthonormalized;
/// motors follow their first-order lag and the joint its rate limiter.
/// Motor thrusts and alpha are held over the step. dt = 0 returns `world`.
World step(const ParamSet& p, const World& world, const ActuatorCommand& cmd,
           const std::vector<Disturbance>& disturbances, double dt);

}  // namespace foldquad
