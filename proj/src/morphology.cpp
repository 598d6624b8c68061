#include "foldquad/morphology.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "foldquad/errors.hpp"

namespace foldquad {
namespace {

// Slack for values produced by floating-point arithmetic on exact endpoints.
constexpr double kDomainSlack = 1e-12;

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(name) + " must be positive and finite");
  }
}

double checked_arm_angle(double a) {
  if (!(a >= -kDomainSlack && a <= kQuarterPi + kDomainSlack)) {
    throw DomainError("arm angle A must lie in [0, pi/4], got " +
                      std::to_string(a));
  }
  return std::clamp(a, 0.0, kQuarterPi);
}

void require_thrust(double t) {
  if (!(t >= 0.0)) throw DomainError("total thrust must be non-negative");
}

}  // namespace

void ParamSet::validate() const {
  require_positive(mass_kg, "mass_kg");
  require_positive(arm_length_m, "arm_length_m");
  require_positive(inertia_upper_x, "inertia_upper_x");
  require_positive(inertia_upper_y, "inertia_upper_y");
  require_positive(inertia_lower_x, "inertia_lower_x");
  require_positive(inertia_lower_y, "inertia_lower_y");
  require_positive(moment_coeff_km, "moment_coeff_km");
  require_positive(gravity_mps2, "gravity_mps2");
  require_positive(width_at_alpha0_m, "width_at_alpha0_m");
  require_positive(width_at_alpha90_m, "width_at_alpha90_m");
  require_positive(max_motor_thrust_n, "max_motor_thrust_n");
  require_positive(motor_time_constant_s, "motor_time_constant_s");
  require_positive(alpha_rate_limit_radps, "alpha_rate_limit_radps");
  require_positive(yaw_inertia_factor, "yaw_inertia_factor");
  if (!(vertical_arm_offset_m >= 0.0)) {
    throw DomainError("vertical_arm_offset_m must be non-negative");
  }
  if (!(linear_drag_nspm >= 0.0)) {
    throw DomainError("linear_drag_nspm must be non-negative");
  }
  if (!(tilt_delta_rad >= 0.0 && tilt_delta_rad < kHalfPi)) {
    throw DomainError("tilt_delta_rad must lie in [0, pi/2)");
  }
  if (!(width_at_alpha90_m < width_at_alpha0_m)) {
    throw DomainError("folded width must be smaller than the X-config width");
  }
}

double arm_angle(double alpha) {
  if (!(alpha >= -kDomainSlack && alpha <= kHalfPi + kDomainSlack)) {
    throw DomainError("joint angle alpha must lie in [0, pi/2], got " +
                      std::to_string(alpha));
  }
  return std::clamp(kQuarterPi - 0.5 * alpha, 0.0, kQuarterPi);
}

double inertia_roll(const ParamSet& p, double arm_angle_a) {
  const double a = checked_arm_angle(arm_angle_a);
  const double s = std::sin(a);
  const double c = std::cos(a);
  return p.inertia_sum_y() * s * s + p.inertia_sum_x() * c * c;
}

double inertia_pitch(const ParamSet& p, double arm_angle_a) {
  const double a = checked_arm_angle(arm_angle_a);
  const double s = std::sin(a);
  const double c = std::cos(a);
  return p.inertia_sum_y() * c * c + p.inertia_sum_x() * s * s;
}

double inertia_yaw(const ParamSet& p) {
  return p.yaw_inertia_factor * (p.inertia_sum_x() + p.inertia_sum_y());
}

double roll_torque_capacity(const ParamSet& p, double arm_angle_a,
                            double total_thrust) {
  const double a = checked_arm_angle(arm_angle_a);
  require_thrust(total_thrust);
  const double per_motor = 0.25 * total_thrust;
  const double d = p.tilt_delta_rad;
  return per_motor * std::cos(d) * (p.arm_length_m * std::sin(a)) +
         p.moment_coeff_km * per_motor * std::sin(d) * std::cos(a);
}

double pitch_torque_capacity(const ParamSet& p, double arm_angle_a,
                             double total_thrust) {
  const double a = checked_arm_angle(arm_angle_a);
  require_thrust(total_thrust);
  const double per_motor = 0.25 * total_thrust;
  const double d = p.tilt_delta_rad;
  return per_motor * std::cos(d) * (p.arm_length_m * std::cos(a)) +
         p.moment_coeff_km * per_motor * std::sin(d) * std::sin(a);
}

double tilt_design_residual(const ParamSet& p, double delta, double divisor) {
  const double km = p.moment_coeff_km;
  const double folded = km * std::sin(delta) / p.inertia_sum_x();
  const double x_config =
      std::numbers::sqrt2 * (std::cos(delta) * p.arm_length_m +
                             km * std::sin(delta)) /
      (divisor * (p.inertia_sum_x() + p.inertia_sum_y()));
  return folded - x_config;
}

double solve_tilt_angle(const ParamSet& p, double roll_agility_divisor) {
  if (!(roll_agility_divisor >= 1.0)) {
    throw DomainError("roll agility divisor must be >= 1");
  }
  double lo = 0.0;
  double hi = kHalfPi;
  double f_lo = tilt_design_residual(p, lo, roll_agility_divisor);
  const double f_hi = tilt_design_residual(p, hi, roll_agility_divisor);
  if (f_lo == 0.0) return lo;
  if (f_lo * f_hi > 0.0) {
    throw InfeasibleDesignError(
        "tilt design equation has no root in (0, pi/2)");
  }
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = tilt_design_residual(p, mid, roll_agility_divisor);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double thrust_efficiency(double delta) { return std::cos(delta); }

namespace {

// w(alpha) = core + span * trig(A), with span = 2 l cos(delta) s folded into
// one calibrated constant.
struct WidthModel {
  double core;
  double span;
};

WidthModel width_model(const ParamSet& p) {
  const double core = p.width_at_alpha90_m;
  const double span =
      (p.width_at_alpha0_m - p.width_at_alpha90_m) / std::sin(kQuarterPi);
  return {core, span};
}

}  // namespace

double body_width(const ParamSet& p, double alpha) {
  const double a = arm_angle(alpha);
  if (alpha <= 0.0) return p.width_at_alpha0_m;
  if (alpha >= kHalfPi) return p.width_at_alpha90_m;
  const WidthModel m = width_model(p);
  return m.core + m.span * std::sin(a);
}

double body_length(const ParamSet& p, double alpha) {
  const double a = arm_angle(alpha);
  if (alpha <= 0.0) return p.width_at_alpha0_m;
  const WidthModel m = width_model(p);
  return m.core + m.span * std::cos(a);
}

MorphState step_morph(const MorphState& state, double commanded_alpha,
                      double dt, double rate_limit) {
  if (!(dt > 0.0)) throw DomainError("dt must be positive");
  const double target = std::clamp(commanded_alpha, 0.0, kHalfPi);
  const double max_step = rate_limit * dt;
  const double delta = std::clamp(target - state.alpha, -max_step, max_step);
  MorphState next;
  next.alpha = std::clamp(state.alpha + delta, 0.0, kHalfPi);
  next.alpha_rate = (next.alpha - state.alpha) / dt;
  next.commanded_alpha = target;
  return next;
}

}  // namespace foldquad
