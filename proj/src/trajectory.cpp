#include "foldquad/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "foldquad/errors.hpp"
#include "foldquad/morphology.hpp"

namespace foldquad {

Quintic solve_quintic(double p0, double v0, double a0, double p1, double v1,
                      double a1, double duration) {
  const double t = duration;
  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
  const double dp = p1 - p0;
  return {
      p0,
      v0,
      0.5 * a0,
      (20.0 * dp - (8.0 * v1 + 12.0 * v0) * t - (3.0 * a0 - a1) * t2) /
          (2.0 * t3),
      (-30.0 * dp + (14.0 * v1 + 16.0 * v0) * t + (3.0 * a0 - 2.0 * a1) * t2) /
          (2.0 * t4),
      (12.0 * dp - 6.0 * (v1 + v0) * t - (a0 - a1) * t2) / (2.0 * t5),
  };
}

Eigen::Vector3d eval_quintic(const Quintic& q, double s) {
  double p = q[5], v = 5.0 * q[5], a = 20.0 * q[5];
  for (int k = 4; k >= 0; --k) p = p * s + q[k];
  for (int k = 4; k >= 1; --k) v = v * s + k * q[k];
  for (int k = 4; k >= 2; --k) a = a * s + k * (k - 1) * q[k];
  return {p, v, a};
}

namespace {

double ramp_value(const AlphaRamp& r, double rate, double t) {
  const double reach = rate * std::max(0.0, t - r.t0);
  const double diff = r.target - r.start;
  return r.start + std::clamp(diff, -reach, reach);
}

void validate_waypoints(const std::vector<Waypoint>& wps) {
  if (wps.size() < 2) throw DomainError("a plan needs at least two waypoints");
  for (std::size_t i = 0; i < wps.size(); ++i) {
    const Waypoint& w = wps[i];
    if (!(w.alpha_command >= 0.0 && w.alpha_command <= kHalfPi)) {
      throw DomainError("waypoint " + std::to_string(i) +
                        ": alpha command outside [0, pi/2]");
    }
    if (!w.position.allFinite() || !std::isfinite(w.t) ||
        !std::isfinite(w.yaw)) {
      throw DomainError("waypoint " + std::to_string(i) + " is not finite");
    }
    if (i > 0 && !(w.t > wps[i - 1].t)) {
      throw DomainError("waypoint times must be strictly increasing (index " +
                        std::to_string(i) + ")");
    }
  }
}

}  // namespace

TrajectoryPlan plan(const std::vector<Waypoint>& waypoints,
                    double alpha_rate_limit) {
  validate_waypoints(waypoints);
  if (!(alpha_rate_limit > 0.0)) {
    throw DomainError("alpha rate limit must be positive");
  }
  TrajectoryPlan out;
  out.alpha_rate_limit = alpha_rate_limit;
  out.first = waypoints.front();
  out.last = waypoints.back();

  const Eigen::Vector3d zero = Eigen::Vector3d::Zero();
  double alpha = waypoints.front().alpha_command;
  for (std::size_t i = 0; i + 1 < waypoints.size(); ++i) {
    const Waypoint& w0 = waypoints[i];
    const Waypoint& w1 = waypoints[i + 1];
    const double dur = w1.t - w0.t;
    const Eigen::Vector3d v0 = w0.velocity.value_or(zero);
    const Eigen::Vector3d a0 = w0.acceleration.value_or(zero);
    const Eigen::Vector3d v1 = w1.velocity.value_or(zero);
    const Eigen::Vector3d a1 = w1.acceleration.value_or(zero);

    PolySegment seg;
    seg.t0 = w0.t;
    seg.t1 = w1.t;
    for (int k = 0; k < 3; ++k) {
      seg.axes[k] = solve_quintic(w0.position[k], v0[k], a0[k],
                                  w1.position[k], v1[k], a1[k], dur);
    }
    seg.axes[3] = solve_quintic(w0.yaw, 0.0, 0.0, w1.yaw, 0.0, 0.0, dur);
    out.segments.push_back(seg);

    AlphaRamp ramp{w0.t, w1.t, alpha, w1.alpha_command};
    out.alpha_schedule.push_back(ramp);
    alpha = ramp_value(ramp, alpha_rate_limit, w1.t);
  }
  return out;
}

TrajectorySample sample(const TrajectoryPlan& plan, double t) {
  TrajectorySample s;
  if (t <= plan.start_time()) {
    s.p = plan.first.position;
    s.v = plan.first.velocity.value_or(Eigen::Vector3d::Zero());
    s.a = plan.first.acceleration.value_or(Eigen::Vector3d::Zero());
    s.yaw = plan.first.yaw;
    s.alpha_cmd = plan.first.alpha_command;
    if (t < plan.start_time()) {
      s.v.setZero();
      s.a.setZero();
    }
    return s;
  }
  if (t >= plan.end_time()) {
    s.p = plan.last.position;
    s.yaw = plan.last.yaw;
    const AlphaRamp& r = plan.alpha_schedule.back();
    // keep ramping toward the final command after the last waypoint
    s.alpha_cmd = ramp_value(r, plan.alpha_rate_limit, t);
    return s;
  }
  // segments are sorted; find the first with t1 > t
  const auto it = std::upper_bound(
      plan.segments.begin(), plan.segments.end(), t,
      [](double value, const PolySegment& seg) { return value < seg.t1; });
  const std::size_t idx = static_cast<std::size_t>(it - plan.segments.begin());
  const PolySegment& seg = plan.segments[idx];
  const double local = t - seg.t0;
  for (int k = 0; k < 3; ++k) {
    const Eigen::Vector3d e = eval_quintic(seg.axes[k], local);
    s.p[k] = e[0];
    s.v[k] = e[1];
    s.a[k] = e[2];
  }
  const Eigen::Vector3d yaw = eval_quintic(seg.axes[3], local);
  s.yaw = yaw[0];
  s.yaw_rate = yaw[1];
  s.alpha_cmd = ramp_value(plan.alpha_schedule[idx], plan.alpha_rate_limit, t);
  return s;
}

std::vector<Waypoint> figure_eight_waypoints(const Eigen::Vector3d& center,
                                             double half_length_x,
                                             double half_width_y,
                                             double period, int laps,
                                             int points_per_lap, double alpha,
                                             double t_start) {
  if (!(period > 0.0) || laps < 1 || points_per_lap < 4) {
    throw DomainError("invalid figure-eight parameters");
  }
  // x = cx + Ax sin(w s), y = cy + Ay sin(2 w s): crosses the centre twice
  // per lap. The path starts and ends at rest at the centre; the lemniscate
  // points next to the centre are dropped so the entry and exit segments
  // blend from rest into the pinned velocity.
  const double w = 2.0 * kPi / period;
  std::vector<Waypoint> out;
  Waypoint start;
  start.t = 0.0;
  start.position = center;
  start.alpha_command = alpha;
  out.push_back(start);

  const int n = laps * points_per_lap;
  for (int i = 1; i < n; ++i) {
    const double s = period * i / points_per_lap;
    Waypoint wp;
    wp.t = t_start + s;
    wp.alpha_command = alpha;
    wp.position = center + Eigen::Vector3d(half_length_x * std::sin(w * s),
                                           half_width_y * std::sin(2 * w * s),
                                           0.0);
    wp.velocity = Eigen::Vector3d(half_length_x * w * std::cos(w * s),
                                  half_width_y * 2 * w * std::cos(2 * w * s),
                                  0.0);
    wp.acceleration =
        Eigen::Vector3d(-half_length_x * w * w * std::sin(w * s),
                        -half_width_y * 4 * w * w * std::sin(2 * w * s), 0.0);
    out.push_back(wp);
  }
  Waypoint end = start;
  end.t = 2.0 * t_start + period * laps;
  out.push_back(end);
  return out;
}

std::vector<Waypoint> diamond_waypoints(const Eigen::Vector3d& center,
                                        double half_diagonal, double leg_time,
                                        double alpha, double t_start) {
  if (!(half_diagonal > 0.0 && leg_time > 0.0)) {
    throw DomainError("invalid diamond parameters");
  }
  const double h = half_diagonal;
  const Eigen::Vector3d corners[] = {
      center,
      center + Eigen::Vector3d(h, 0.0, 0.0),
      center + Eigen::Vector3d(0.0, h, 0.0),
      center + Eigen::Vector3d(-h, 0.0, 0.0),
      center + Eigen::Vector3d(0.0, -h, 0.0),
      center + Eigen::Vector3d(h, 0.0, 0.0),
      center,
  };
  std::vector<Waypoint> out;
  Waypoint wp;
  wp.t = 0.0;
  wp.position = corners[0];
  wp.alpha_command = alpha;
  out.push_back(wp);
  double t = t_start;
  for (std::size_t i = 1; i < std::size(corners); ++i) {
    // the centre-to-corner legs are half a side, give them proportionally
    // less time
    const bool half_leg = (i == 1 || i == std::size(corners) - 1);
    t += half_leg ? 0.75 * leg_time : leg_time;
    wp.t = t;
    wp.position = corners[i];
    out.push_back(wp);
  }
  return out;
}

}  // namespace foldquad
