#include "foldquad/controller.hpp"

#include <algorithm>
#include <cmath>

#include "foldquad/errors.hpp"
#include "foldquad/rotation.hpp"

namespace foldquad {
namespace {

Eigen::Vector3d clamp_each(const Eigen::Vector3d& v, double limit) {
  return v.cwiseMax(-limit).cwiseMin(limit);
}

}  // namespace

void GainSet::validate() const {
  const bool nonneg = (kp.array() >= 0).all() && (kv.array() >= 0).all() &&
                      (ki.array() >= 0).all() &&
                      (kp_inner.array() >= 0).all() &&
                      (kv_inner.array() >= 0).all() &&
                      (ki_inner.array() >= 0).all();
  if (!nonneg) throw DomainError("controller gains must be non-negative");
  if (!(position_integral_clamp > 0.0 && attitude_integral_clamp > 0.0)) {
    throw DomainError("integrator clamps must be positive");
  }
}

PositionCommand position_control(const ParamSet& p, const GainSet& gains,
                                 ControlState& state,
                                 const PositionTarget& desired,
                                 const Eigen::Vector3d& est_position,
                                 const Eigen::Vector3d& est_velocity,
                                 double dt) {
  if (!(dt > 0.0)) throw DomainError("dt must be positive");
  const Eigen::Vector3d e_p = desired.p - est_position;
  const Eigen::Vector3d e_v = desired.v - est_velocity;
  state.position_integral =
      clamp_each(state.position_integral + e_p * dt,
                 gains.position_integral_clamp);

  const Eigen::Vector3d gravity_comp(0.0, 0.0, -p.gravity_mps2);
  const Eigen::Vector3d f_des =
      p.mass_kg * (desired.a + gravity_comp + gains.kp.cwiseProduct(e_p) +
                   gains.kv.cwiseProduct(e_v) +
                   gains.ki.cwiseProduct(state.position_integral));
  const double f_norm = f_des.norm();
  if (f_norm < 1e-6) {
    throw SingularSetpointError("desired force vanishes (free-fall request)");
  }

  const Eigen::Vector3d z_b = -f_des / f_norm;
  const Eigen::Vector3d x_c(std::cos(desired.yaw), std::sin(desired.yaw), 0.0);
  const Eigen::Vector3d y_raw = z_b.cross(x_c);
  if (y_raw.norm() < 1e-6) {
    throw GimbalSingularityError("desired thrust axis parallel to heading");
  }
  const Eigen::Vector3d y_b = y_raw.normalized();
  const Eigen::Vector3d x_b = y_b.cross(z_b);

  PositionCommand cmd;
  cmd.setpoint.r_des.col(0) = x_b;
  cmd.setpoint.r_des.col(1) = y_b;
  cmd.setpoint.r_des.col(2) = z_b;
  cmd.setpoint.thrust_des = f_norm;
  cmd.setpoint.yaw_des = desired.yaw;
  cmd.f_des = f_des;
  cmd.position_error = e_p;
  return cmd;
}

Eigen::Matrix3d imu_from_body(double alpha) {
  const double c = std::cos(0.5 * alpha);
  const double s = std::sin(0.5 * alpha);
  Eigen::Matrix3d m;
  m << c, s, 0.0,  //
      -s, c, 0.0,  //
      0.0, 0.0, 1.0;
  return m;
}

BodyAttitude imu_to_body(const Eigen::Matrix3d& r_imu,
                         const Eigen::Vector3d& omega_imu, double alpha) {
  const Eigen::Matrix3d m = imu_from_body(alpha);
  return {r_imu * m, m.transpose() * omega_imu};
}

BodyAttitude body_to_imu(const Eigen::Matrix3d& r_body,
                         const Eigen::Vector3d& omega_body, double alpha) {
  const Eigen::Matrix3d m = imu_from_body(alpha);
  return {r_body * m.transpose(), m * omega_body};
}

Eigen::Vector3d attitude_error(const Eigen::Matrix3d& r_des,
                               const Eigen::Matrix3d& r) {
  const Eigen::Matrix3d m = r.transpose() * r_des - r_des.transpose() * r;
  return 0.5 * vee(m);
}

Eigen::Vector3d adaptation_gains(const ParamSet& p, double alpha) {
  const double a = arm_angle(alpha);
  const double t_ref = p.hover_thrust();
  const double roll = (inertia_roll(p, a) / inertia_roll(p, kQuarterPi)) *
                      (roll_torque_capacity(p, kQuarterPi, t_ref) /
                       roll_torque_capacity(p, a, t_ref));
  const double pitch = (inertia_pitch(p, a) / inertia_pitch(p, kQuarterPi)) *
                       (pitch_torque_capacity(p, kQuarterPi, t_ref) /
                        pitch_torque_capacity(p, a, t_ref));
  return {roll, pitch, 1.0};
}

Eigen::Vector3d attitude_control(const ParamSet& p, const GainSet& gains,
                                 ControlState& state,
                                 const Eigen::Matrix3d& r_des,
                                 const Eigen::Matrix3d& r,
                                 const Eigen::Vector3d& omega, double alpha,
                                 double dt, bool adaptation) {
  if (!(dt > 0.0)) throw DomainError("dt must be positive");
  const Eigen::Vector3d e_r = attitude_error(r_des, r);
  const Eigen::Vector3d e_w = -omega;
  state.attitude_integral = clamp_each(state.attitude_integral + e_r * dt,
                                       gains.attitude_integral_clamp);
  const Eigen::Vector3d tau_pre =
      gains.kp_inner.cwiseProduct(e_r) + gains.kv_inner.cwiseProduct(e_w) +
      gains.ki_inner.cwiseProduct(state.attitude_integral);
  if (!adaptation) return tau_pre;
  return adaptation_gains(p, alpha).cwiseProduct(tau_pre);
}

double collective_thrust(const Eigen::Vector3d& f_des,
                         const Eigen::Vector3d& z_body) {
  return -f_des.dot(z_body);
}

std::vector<GainRatioRow> gain_ratio_curves(const ParamSet& p,
                                            const std::vector<double>& grid) {
  std::vector<GainRatioRow> rows;
  rows.reserve(grid.size());
  for (double alpha : grid) {
    const Eigen::Vector3d g = adaptation_gains(p, alpha);
    rows.push_back({alpha, g.x(), g.y()});
  }
  return rows;
}

std::vector<double> alpha_grid(int n) {
  if (n < 2) throw DomainError("alpha grid needs at least two points");
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) grid[i] = kHalfPi * i / (n - 1);
  grid.back() = kHalfPi;
  return grid;
}

CascadedController::CascadedController(ParamSet params, GainSet gains,
                                       double outer_rate_hz,
                                       double inner_rate_hz, bool adaptation)
    : params_(std::move(params)),
      gains_(std::move(gains)),
      outer_period_(1.0 / outer_rate_hz),
      inner_period_(1.0 / inner_rate_hz),
      adaptation_(adaptation) {
  if (!(outer_rate_hz > 0.0 && inner_rate_hz > 0.0)) {
    throw DomainError("controller rates must be positive");
  }
}

const ControlOutput& CascadedController::update(double t,
                                                const PositionTarget& target,
                                                const SensorReading& sensor) {
  constexpr double kTickSlack = 1e-9;
  const BodyAttitude body =
      imu_to_body(sensor.r_imu, sensor.omega_imu, sensor.alpha);

  if (!started_ || t + kTickSlack >= outer_ticks_ * outer_period_) {
    const PositionCommand cmd =
        position_control(params_, gains_, state_, target, sensor.position,
                         sensor.velocity, outer_period_);
    out_.f_des = cmd.f_des;
    out_.r_des = cmd.setpoint.r_des;
    state_.last_outer_time = t;
    outer_ticks_ = static_cast<long>(std::floor(t / outer_period_ + kTickSlack)) + 1;
  }
  if (!started_ || t + kTickSlack >= inner_ticks_ * inner_period_) {
    out_.attitude_error = attitude_error(out_.r_des, body.r);
    out_.torque =
        attitude_control(params_, gains_, state_, out_.r_des, body.r,
                         body.omega, sensor.alpha, inner_period_, adaptation_);
    out_.thrust = std::max(0.0, collective_thrust(out_.f_des, body.r.col(2)));
    state_.last_inner_time = t;
    inner_ticks_ = static_cast<long>(std::floor(t / inner_period_ + kTickSlack)) + 1;
  }
  started_ = true;
  return out_;
}

}  // namespace foldquad
