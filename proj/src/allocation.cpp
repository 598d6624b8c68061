#include "foldquad/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "foldquad/errors.hpp"

namespace foldquad {
namespace {

constexpr const char* kAxisNames[4] = {"thrust", "roll", "pitch", "yaw"};

// Interval of collective scale s for which base + s * dir stays in [0, max].
struct Interval {
  double lo;
  double hi;
  bool empty() const { return lo > hi; }
};

Interval feasible_collective(const Eigen::Vector4d& base,
                             const Eigen::Vector4d& dir, double max_thrust) {
  Interval iv{-std::numeric_limits<double>::infinity(),
              std::numeric_limits<double>::infinity()};
  for (int i = 0; i < 4; ++i) {
    const double lo_bound = 0.0 - base[i];
    const double hi_bound = max_thrust - base[i];
    if (std::abs(dir[i]) < 1e-12) {
      if (lo_bound > 1e-12 || hi_bound < -1e-12) return {1.0, 0.0};
      continue;
    }
    double a = lo_bound / dir[i];
    double b = hi_bound / dir[i];
    if (a > b) std::swap(a, b);
    iv.lo = std::max(iv.lo, a);
    iv.hi = std::min(iv.hi, b);
  }
  return iv;
}

// Largest k in [0, 1] such that fixed + k * part can be made feasible by some
// collective. Feasible set is convex in k, so bisection suffices.
double max_feasible_scale(const Eigen::Vector4d& fixed,
                          const Eigen::Vector4d& part,
                          const Eigen::Vector4d& collective,
                          double max_thrust) {
  if (!feasible_collective(fixed + part, collective, max_thrust).empty()) {
    return 1.0;
  }
  if (feasible_collective(fixed, collective, max_thrust).empty()) return 0.0;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (feasible_collective(fixed + mid * part, collective, max_thrust)
            .empty()) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return lo;
}

Eigen::Vector4d clamp_thrusts(const Eigen::Vector4d& t, double max_thrust) {
  return t.cwiseMax(0.0).cwiseMin(max_thrust);
}

}  // namespace

MotorLayout motor_layout(const ParamSet& p, double alpha, bool flip_spins) {
  const double a = arm_angle(alpha);
  const double l = p.arm_length_m;
  const double half_h = 0.5 * p.vertical_arm_offset_m;
  const double sd = std::sin(p.tilt_delta_rad);
  const double cd = std::cos(p.tilt_delta_rad);
  const Spin upper = flip_spins ? Spin::kCCW : Spin::kCW;
  const Spin lower = flip_spins ? Spin::kCW : Spin::kCCW;

  auto make = [&](Arm arm, double az) {
    const double z = arm == Arm::kUpper ? -half_h : half_h;
    Motor m;
    m.arm = arm;
    m.azimuth = az;
    m.position = Eigen::Vector3d(l * std::cos(az), l * std::sin(az), z);
    m.axis = Eigen::Vector3d(-sd * std::cos(az), -sd * std::sin(az), -cd);
    m.spin = arm == Arm::kUpper ? upper : lower;
    return m;
  };
  return {make(Arm::kUpper, a), make(Arm::kUpper, a + kPi),
          make(Arm::kLower, -a), make(Arm::kLower, kPi - a)};
}

UnitWrench unit_wrench(const Motor& m, double km) {
  return {m.axis, m.position.cross(m.axis) + m.spin_sign() * km * m.axis};
}

int numerical_rank(const Eigen::Vector4d& sv, double rel_tol) {
  const double tol = rel_tol * sv.maxCoeff();
  int r = 0;
  for (int i = 0; i < 4; ++i) r += sv[i] > tol ? 1 : 0;
  return r;
}

AllocationMatrix build_allocation(const ParamSet& p, double alpha,
                                  bool flip_spins) {
  const MotorLayout layout = motor_layout(p, alpha, flip_spins);
  AllocationMatrix out;
  out.alpha = alpha;
  out.max_motor_thrust = p.max_motor_thrust_n;
  for (int i = 0; i < 4; ++i) {
    const UnitWrench w = unit_wrench(layout[i], p.moment_coeff_km);
    out.b(0, i) = -w.force.z();  // upward component
    out.b.block<3, 1>(1, i) = w.torque;
  }
  Eigen::JacobiSVD<Eigen::Matrix4d> svd(out.b);
  out.singular_values = svd.singularValues();
  out.rank = numerical_rank(out.singular_values);
  const double smin = out.singular_values[3];
  out.condition_number = smin > 0.0 ? out.singular_values[0] / smin
                                    : std::numeric_limits<double>::infinity();
  return out;
}

AllocationResult allocate(const AllocationMatrix& alloc, double total_thrust,
                          const Eigen::Vector3d& tau) {
  if (alloc.rank < 4) {
    Eigen::JacobiSVD<Eigen::Matrix4d> svd(alloc.b, Eigen::ComputeFullU);
    const Eigen::Vector4d lost = svd.matrixU().col(3).cwiseAbs();
    int axis = 0;
    lost.maxCoeff(&axis);
    throw AllocationError(std::string("allocation matrix is rank deficient; "
                                      "lost axis: ") +
                              kAxisNames[axis],
                          kAxisNames[axis]);
  }
  const auto lu = alloc.b.partialPivLu();
  const double tmax = alloc.max_motor_thrust;
  Eigen::Vector4d request;
  request << total_thrust, tau;
  const Eigen::Vector4d direct = lu.solve(request);
  if ((direct.array() >= 0.0).all() && (direct.array() <= tmax).all()) {
    return {direct, false};
  }

  const Eigen::Vector4d per_collective = lu.solve(Eigen::Vector4d(1, 0, 0, 0));
  const Eigen::Vector4d roll_pitch =
      lu.solve(Eigen::Vector4d(0, tau.x(), tau.y(), 0));
  const Eigen::Vector4d yaw = lu.solve(Eigen::Vector4d(0, 0, 0, tau.z()));
  const Eigen::Vector4d zero = Eigen::Vector4d::Zero();

  const double k_rp = max_feasible_scale(zero, roll_pitch, per_collective, tmax);
  const Eigen::Vector4d base = k_rp * roll_pitch;
  const double k_yaw = max_feasible_scale(base, yaw, per_collective, tmax);
  const Eigen::Vector4d with_yaw = base + k_yaw * yaw;

  const Interval iv = feasible_collective(with_yaw, per_collective, tmax);
  double collective = total_thrust;
  if (!iv.empty()) collective = std::clamp(total_thrust, iv.lo, iv.hi);
  return {clamp_thrusts(with_yaw + collective * per_collective, tmax), true};
}

AllocationResult allocate_least_squares(const AllocationMatrix& alloc,
                                        double total_thrust,
                                        const Eigen::Vector3d& tau) {
  Eigen::Vector4d request;
  request << total_thrust, tau;
  const Eigen::Vector4d t =
      alloc.b.completeOrthogonalDecomposition().solve(request);
  const Eigen::Vector4d clamped = clamp_thrusts(t, alloc.max_motor_thrust);
  return {clamped, !clamped.isApprox(t)};
}

}  // namespace foldquad
