#include "foldquad/simulator.hpp"

#include <algorithm>
#include <cmath>

#include "foldquad/allocation.hpp"
#include "foldquad/errors.hpp"
#include "foldquad/rotation.hpp"

namespace foldquad {

Wrench Disturbance::evaluate(double t) const {
  Wrench w;
  const double tau = t - start_s;
  if (tau < 0.0 || tau >= duration_s) return w;
  const Eigen::Vector3d dir = direction.normalized();
  switch (kind) {
    case DisturbanceKind::kConstantForce:
    case DisturbanceKind::kImpulse:
      w.force = magnitude_n * dir;
      break;
    case DisturbanceKind::kOscillatingForce: {
      const double phase = 2.0 * kPi * frequency_hz * tau;
      const double mag = magnitude_n + amplitude_n * std::sin(phase);
      const double swing = sweep_rad * std::cos(phase);
      w.force = mag * (rot_z(swing) * dir);
      break;
    }
  }
  w.torque = torque_nm;
  return w;
}

Wrench total_disturbance(const std::vector<Disturbance>& list, double t) {
  Wrench sum;
  for (const Disturbance& d : list) {
    const Wrench w = d.evaluate(t);
    sum.force += w.force;
    sum.torque += w.torque;
  }
  return sum;
}

Eigen::Vector3d body_inertia(const ParamSet& p, double alpha) {
  const double a = arm_angle(alpha);
  return {inertia_roll(p, a), inertia_pitch(p, a), inertia_yaw(p)};
}

Wrench motor_wrench(const ParamSet& p, double alpha,
                    const Eigen::Vector4d& thrusts) {
  const MotorLayout layout = motor_layout(p, alpha);
  Wrench w;
  for (int i = 0; i < 4; ++i) {
    const UnitWrench u = unit_wrench(layout[i], p.moment_coeff_km);
    w.force += thrusts[i] * u.force;
    w.torque += thrusts[i] * u.torque;
  }
  return w;
}

RigidDerivative dynamics_derivative(const ParamSet& p, const RigidState& s,
                                    double alpha, const Wrench& motors,
                                    const Wrench& external) {
  const Eigen::Vector3d inertia = body_inertia(p, alpha);
  RigidDerivative d;
  d.p_dot = s.v;
  d.v_dot = Eigen::Vector3d(0.0, 0.0, p.gravity_mps2) +
            (s.r * motors.force + external.force - p.linear_drag_nspm * s.v) /
                p.mass_kg;
  const Eigen::Vector3d h = inertia.cwiseProduct(s.omega);
  d.omega_dot = (motors.torque + external.torque - s.omega.cross(h))
                    .cwiseQuotient(inertia);
  return d;
}

World step(const ParamSet& p, const World& world, const ActuatorCommand& cmd,
           const std::vector<Disturbance>& disturbances, double dt) {
  if (dt == 0.0) return world;
  if (!(dt > 0.0)) throw DomainError("dt must be non-negative");

  const double alpha = world.morph.alpha;
  const Wrench motors = motor_wrench(p, alpha, world.motors.actual);
  const RigidState& s0 = world.rigid;
  const double t0 = world.t;

  // Intermediate stage: translational/rate states advanced linearly, attitude
  // rotated by the previous stage's body rate.
  auto stage = [&](const RigidDerivative& k, const Eigen::Vector3d& rate,
                   double h) {
    RigidState s;
    s.p = s0.p + h * k.p_dot;
    s.v = s0.v + h * k.v_dot;
    s.omega = s0.omega + h * k.omega_dot;
    s.r = s0.r * exp_so3(h * rate);
    return s;
  };

  const Wrench e0 = total_disturbance(disturbances, t0);
  const Wrench eh = total_disturbance(disturbances, t0 + 0.5 * dt);
  const Wrench e1 = total_disturbance(disturbances, t0 + dt);

  const RigidDerivative k1 = dynamics_derivative(p, s0, alpha, motors, e0);
  const RigidState s1 = stage(k1, s0.omega, 0.5 * dt);
  const RigidDerivative k2 = dynamics_derivative(p, s1, alpha, motors, eh);
  const RigidState s2 = stage(k2, s1.omega, 0.5 * dt);
  const RigidDerivative k3 = dynamics_derivative(p, s2, alpha, motors, eh);
  const RigidState s3 = stage(k3, s2.omega, dt);
  const RigidDerivative k4 = dynamics_derivative(p, s3, alpha, motors, e1);

  World next = world;
  next.t = t0 + dt;
  RigidState& s = next.rigid;
  s.p = s0.p + dt / 6.0 * (k1.p_dot + 2.0 * k2.p_dot + 2.0 * k3.p_dot + k4.p_dot);
  s.v = s0.v + dt / 6.0 * (k1.v_dot + 2.0 * k2.v_dot + 2.0 * k3.v_dot + k4.v_dot);
  s.omega = s0.omega + dt / 6.0 * (k1.omega_dot + 2.0 * k2.omega_dot +
                                   2.0 * k3.omega_dot + k4.omega_dot);
  const Eigen::Vector3d mean_rate =
      (s0.omega + 2.0 * s1.omega + 2.0 * s2.omega + s3.omega) / 6.0;
  s.r = orthonormalize(s0.r * exp_so3(dt * mean_rate));

  const double blend = 1.0 - std::exp(-dt / p.motor_time_constant_s);
  const Eigen::Vector4d cmd_clamped =
      cmd.motor_thrusts.cwiseMax(0.0).cwiseMin(p.max_motor_thrust_n);
  next.motors.commanded = cmd_clamped;
  next.motors.actual += blend * (cmd_clamped - world.motors.actual);
  next.morph = step_morph(world.morph, cmd.alpha, dt, p.alpha_rate_limit_radps);
  return next;
}

}  // namespace foldquad
