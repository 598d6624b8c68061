#pragma once

// Waypoint-to-trajectory generation: one quintic per segment and axis
// (x, y, z, yaw) with position/velocity/acceleration pinned at both ends,
// plus a rate-limited joint-angle schedule.

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <vector>

namespace foldquad {

struct Waypoint {
  double t = 0.0;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  double yaw = 0.0;
  double alpha_command = 0.0;
  std::optional<Eigen::Vector3d> velocity;
  std::optional<Eigen::Vector3d> acceleration;

  bool operator==(const Waypoint&) const = default;
};

/// Coefficients c0..c5 of c0 + c1 s + ... + c5 s^5 in local time s.
using Quintic = std::array<double, 6>;

/// Unique quintic over duration `T` matching (p, v, a) at both ends.
Quintic solve_quintic(double p0, double v0, double a0, double p1, double v1,
                      double a1, double duration);

/// Value and first two derivatives at local time s.
Eigen::Vector3d eval_quintic(const Quintic& q, double s);

struct PolySegment {
  double t0 = 0.0;
  double t1 = 0.0;
  std::array<Quintic, 4> axes;  // x, y, z, yaw
};

struct AlphaRamp {
  double t0;
  double t1;
  double start;
  double target;
};

struct TrajectoryPlan {
  std::vector<PolySegment> segments;
  std::vector<AlphaRamp> alpha_schedule;
  double alpha_rate_limit = 0.0;
  Waypoint first;
  Waypoint last;

  double start_time() const { return segments.front().t0; }
  double end_time() const { return segments.back().t1; }
};

struct TrajectorySample {
  Eigen::Vector3d p = Eigen::Vector3d::Zero();
  Eigen::Vector3d v = Eigen::Vector3d::Zero();
  Eigen::Vector3d a = Eigen::Vector3d::Zero();
  double yaw = 0.0;
  double yaw_rate = 0.0;
  double alpha_cmd = 0.0;
};

/// Builds the plan. Interior velocity/acceleration default to zero unless
/// pinned on the waypoint; the alpha command ramps toward each waypoint's
/// alpha_command over the segment that ends at it. Throws DomainError for
/// fewer than two waypoints, non-increasing times or alpha outside
/// [0, pi/2].
TrajectoryPlan plan(const std::vector<Waypoint>& waypoints,
                    double alpha_rate_limit);

/// Evaluates the plan. Before the start it returns the first waypoint, after
/// the end it holds the last one at rest.
TrajectorySample sample(const TrajectoryPlan& plan, double t);

// Waypoint sets for the standard test shapes, all at constant altitude.

/// Figure-eight x = cx + hx sin(w s), y = cy + hy sin(2 w s) sampled with
/// analytic velocity/acceleration pins, entered and left at rest.
std::vector<Waypoint> figure_eight_waypoints(const Eigen::Vector3d& center,
                                             double half_length_x,
                                             double half_width_y,
                                             double period, int laps,
                                             int points_per_lap, double alpha,
                                             double t_start);

/// Diamond with stop-and-go corners, starting and ending at `center`.
std::vector<Waypoint> diamond_waypoints(const Eigen::Vector3d& center,
                                        double half_diagonal, double leg_time,
                                        double alpha, double t_start);

}  // namespace foldquad
