#pragma once

// Physical parameters of the folding quadrotor and the closed-form
// configuration-dependent quantities derived from the joint angle.
//
// Conventions: alpha is the joint angle between the arms (0 = X quad,
// pi/2 = stacked bicopters); A = pi/4 - alpha/2 is the angle each arm makes
// with the body x axis.

#include <numbers>

namespace foldquad {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;
inline constexpr double kQuarterPi = std::numbers::pi / 4.0;

inline constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

struct ParamSet {
  double mass_kg = 1.8;
  double arm_length_m = 0.21821;  // propeller to COM
  double tilt_delta_rad = deg2rad(25.0);
  // Arm inertias about the joint pivot: u/l = upper/lower arm,
  // x = axis along the arm, y = axis perpendicular to it (in plane).
  double inertia_upper_x = 1.80e-3;
  double inertia_upper_y = 11.72e-3;
  double inertia_lower_x = 2.42e-3;
  double inertia_lower_y = 14.29e-3;
  double moment_coeff_km = 0.055;  // reaction moment per unit thrust [m]
  double gravity_mps2 = 9.81;
  double width_at_alpha0_m = 0.447;
  double width_at_alpha90_m = 0.138;
  // Not in the hardware table; documented guesses.
  double max_motor_thrust_n = 10.0;
  double motor_time_constant_s = 0.02;
  double alpha_rate_limit_radps = 0.5;
  double vertical_arm_offset_m = 0.03;
  double yaw_inertia_factor = 1.0;  // I_z = factor * (sum of arm inertias)
  double linear_drag_nspm = 0.0;

  /// Throws DomainError when an invariant is violated.
  void validate() const;

  double hover_thrust() const { return mass_kg * gravity_mps2; }
  double inertia_sum_x() const { return inertia_upper_x + inertia_lower_x; }
  double inertia_sum_y() const { return inertia_upper_y + inertia_lower_y; }

  bool operator==(const ParamSet&) const = default;
};

struct MorphState {
  double alpha = 0.0;
  double alpha_rate = 0.0;
  double commanded_alpha = 0.0;

  bool operator==(const MorphState&) const = default;
};

/// A = pi/4 - alpha/2. Throws DomainError unless 0 <= alpha <= pi/2.
double arm_angle(double alpha);

// Inertias about body roll / pitch / yaw for arm angle A in [0, pi/4].
double inertia_roll(const ParamSet& p, double arm_angle_a);
double inertia_pitch(const ParamSet& p, double arm_angle_a);
double inertia_yaw(const ParamSet& p);

// Roll / pitch moment one propeller can contribute when the vehicle produces
// total thrust T (each motor carrying T/4).
double roll_torque_capacity(const ParamSet& p, double arm_angle_a,
                            double total_thrust);
double pitch_torque_capacity(const ParamSet& p, double arm_angle_a,
                             double total_thrust);

/// Residual of the tilt design equation (roll agility at A=0 equal to
/// 1/divisor of the agility at A=pi/4). Positive above the root.
double tilt_design_residual(const ParamSet& p, double delta, double divisor);

/// Solves tilt_design_residual(delta) = 0 on (0, pi/2) by bisection.
/// Throws DomainError for divisor < 1 and InfeasibleDesignError when no sign
/// change exists on the interval.
double solve_tilt_angle(const ParamSet& p, double roll_agility_divisor);

/// Fraction of total thrust pointing along the body vertical.
double thrust_efficiency(double delta);

/// Lateral (body y) extent of the vehicle, calibrated so that it equals
/// width_at_alpha0_m at alpha=0 and width_at_alpha90_m at alpha=pi/2.
double body_width(const ParamSet& p, double alpha);

/// Longitudinal (body x) extent from the same calibrated model with cos(A).
double body_length(const ParamSet& p, double alpha);

/// Rate-limited move of the joint toward `commanded_alpha` (clamped to
/// [0, pi/2]). Throws DomainError for dt <= 0.
MorphState step_morph(const MorphState& state, double commanded_alpha,
                      double dt, double rate_limit);

}  // namespace foldquad
