#pragma once

// Cascaded flight controller: position loop -> desired attitude and force,
// attitude loop -> desired body torque with joint-angle dependent gain
// adaptation.
//
// Frames: world NED (gravity along +z), body FRD. Thrust acts along -z_body
// and collective thrust is reported as a non-negative magnitude.

#include <Eigen/Dense>
#include <vector>

#include "foldquad/morphology.hpp"

namespace foldquad {

struct GainSet {
  // Position loop, per world axis (x, y, z).
  Eigen::Vector3d kp{1.4, 1.4, 5.0};
  Eigen::Vector3d kv{1.4, 1.4, 4.5};
  Eigen::Vector3d ki{0.2, 0.2, 0.75};
  // Attitude loop, per body axis (roll, pitch, yaw); tuned at alpha = 0.
  Eigen::Vector3d kp_inner{0.5, 0.5, 0.2};
  Eigen::Vector3d kv_inner{0.075, 0.075, 0.1};
  Eigen::Vector3d ki_inner{0.004, 0.004, 0.004};
  double position_integral_clamp = 2.0;  // m*s
  double attitude_integral_clamp = 0.5;  // rad*s

  void validate() const;
  bool operator==(const GainSet&) const = default;
};

struct AttitudeSetpoint {
  Eigen::Matrix3d r_des = Eigen::Matrix3d::Identity();  // body -> world
  double thrust_des = 0.0;  // ||f_des||
  double yaw_des = 0.0;
};

struct ControlState {
  Eigen::Vector3d position_integral = Eigen::Vector3d::Zero();
  Eigen::Vector3d attitude_integral = Eigen::Vector3d::Zero();
  double last_outer_time = 0.0;
  double last_inner_time = 0.0;
};

struct PositionTarget {
  Eigen::Vector3d p = Eigen::Vector3d::Zero();
  Eigen::Vector3d v = Eigen::Vector3d::Zero();
  Eigen::Vector3d a = Eigen::Vector3d::Zero();
  double yaw = 0.0;
};

struct PositionCommand {
  AttitudeSetpoint setpoint;
  Eigen::Vector3d f_des;  // world NED, N
  Eigen::Vector3d position_error;
};

/// Desired force and attitude from position/velocity errors. Integrates the
/// position error (clamped) into `state`. Throws SingularSetpointError when
/// ||f_des|| < 1e-6 and GimbalSingularityError when the heading is parallel
/// to the desired body z axis.
PositionCommand position_control(const ParamSet& p, const GainSet& gains,
                                 ControlState& state,
                                 const PositionTarget& desired,
                                 const Eigen::Vector3d& est_position,
                                 const Eigen::Vector3d& est_velocity,
                                 double dt);

/// Rotation taking body-frame vectors into the IMU (lower-arm) frame.
Eigen::Matrix3d imu_from_body(double alpha);

struct BodyAttitude {
  Eigen::Matrix3d r;
  Eigen::Vector3d omega;
};

/// IMU attitude/rate -> body attitude/rate for joint angle alpha.
BodyAttitude imu_to_body(const Eigen::Matrix3d& r_imu,
                         const Eigen::Vector3d& omega_imu, double alpha);
/// Inverse of imu_to_body.
BodyAttitude body_to_imu(const Eigen::Matrix3d& r_body,
                         const Eigen::Vector3d& omega_body, double alpha);

/// e_R = 1/2 (R^T R_des - R_des^T R)^vee; positive components command
/// positive torque.
Eigen::Vector3d attitude_error(const Eigen::Matrix3d& r_des,
                               const Eigen::Matrix3d& r);

/// Diagonal of the adaptation matrix: inertia ratio times inverse control
/// action ratio, both relative to alpha = 0; yaw entry is 1.
Eigen::Vector3d adaptation_gains(const ParamSet& p, double alpha);

/// Desired body torque. Updates the attitude integral in `state`.
Eigen::Vector3d attitude_control(const ParamSet& p, const GainSet& gains,
                                 ControlState& state,
                                 const Eigen::Matrix3d& r_des,
                                 const Eigen::Matrix3d& r,
                                 const Eigen::Vector3d& omega, double alpha,
                                 double dt, bool adaptation = true);

/// Projection of f_des onto the actual thrust direction (-z_b); the result is
/// the upward thrust magnitude and is positive in level hover.
double collective_thrust(const Eigen::Vector3d& f_des,
                         const Eigen::Vector3d& z_body);

struct GainRatioRow {
  double alpha;
  double roll;
  double pitch;
};
std::vector<GainRatioRow> gain_ratio_curves(const ParamSet& p,
                                            const std::vector<double>& grid);

/// `n` evenly spaced joint angles over [0, pi/2] inclusive.
std::vector<double> alpha_grid(int n);

struct SensorReading {
  Eigen::Vector3d position;
  Eigen::Vector3d velocity;
  Eigen::Matrix3d r_imu;
  Eigen::Vector3d omega_imu;
  double alpha;
};

struct ControlOutput {
  double thrust = 0.0;
  Eigen::Vector3d torque = Eigen::Vector3d::Zero();
  Eigen::Vector3d f_des = Eigen::Vector3d::Zero();
  Eigen::Matrix3d r_des = Eigen::Matrix3d::Identity();
  Eigen::Vector3d attitude_error = Eigen::Vector3d::Zero();
};

/// Multi-rate wrapper: runs the position loop at `outer_rate_hz` and the
/// attitude loop at `inner_rate_hz`, holding outputs between updates.
class CascadedController {
 public:
  CascadedController(ParamSet params, GainSet gains, double outer_rate_hz,
                     double inner_rate_hz, bool adaptation = true);

  /// Call once per physics step with the current time.
  const ControlOutput& update(double t, const PositionTarget& target,
                              const SensorReading& sensor);

  const ControlOutput& output() const { return out_; }
  const ControlState& state() const { return state_; }

 private:
  ParamSet params_;
  GainSet gains_;
  double outer_period_;
  double inner_period_;
  bool adaptation_;
  ControlState state_;
  ControlOutput out_;
  long outer_ticks_ = 0;
  long inner_ticks_ = 0;
  bool started_ = false;
};

}  // namespace foldquad
