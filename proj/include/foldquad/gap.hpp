#pragma once

// Configuration-space clearance against axis-aligned obstacles in the
// horizontal plane. The vehicle footprint is a w(alpha) x l(alpha)
// rectangle (body y x body x); obstacles are inflated by the half extents of
// the yawed footprint's bounding box so the vehicle reduces to a point.

#include <cstddef>
#include <utility>
#include <vector>

#include "foldquad/morphology.hpp"

namespace foldquad {

struct Rect {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;

  bool operator==(const Rect&) const = default;
};

struct ObstacleMap {
  std::vector<Rect> rects;

  bool empty() const { return rects.empty(); }
  void validate() const;
  bool operator==(const ObstacleMap&) const = default;
};

/// Opening between two obstacles that face each other.
struct Gap {
  std::size_t first;
  std::size_t second;
  int across_axis;  // 0: opening measured along x, 1: along y
  double width;
  double center_x;
  double center_y;
};

/// Openings no wider than `max_width` with no other obstacle inside.
std::vector<Gap> find_gaps(const ObstacleMap& map, double max_width = 1.0);

struct Footprint {
  double half_x;
  double half_y;
};

/// World-aligned half extents of the vehicle at joint angle alpha and yaw.
/// alpha is clamped into [0, pi/2] to absorb rounding in logged traces.
Footprint footprint(const ParamSet& p, double alpha, double yaw);

/// Signed distance from the vehicle centre to the nearest inflated obstacle;
/// negative inside. +infinity for an empty map.
double point_clearance(const ObstacleMap& map, const Footprint& fp, double x,
                       double y);

struct PoseSample {
  double t;
  double x;
  double y;
  double yaw;
  double alpha;
};

struct ClearanceReport {
  std::vector<double> clearance;  // per sample
  double min_clearance = 0.0;
  double time_of_min = 0.0;
  std::vector<std::pair<double, double>> violations;  // [t_begin, t_end]
  std::size_t violating_samples = 0;

  bool collided() const { return violating_samples > 0; }
};

/// Clearance along a sampled path (OpenMP over samples).
ClearanceReport check_gap_clearance(const ObstacleMap& map,
                                    const std::vector<PoseSample>& path,
                                    const ParamSet& p);
/// Serial reference implementation of check_gap_clearance.
ClearanceReport check_gap_clearance_serial(const ObstacleMap& map,
                                           const std::vector<PoseSample>& path,
                                           const ParamSet& p);

struct GapPassability {
  Gap gap;
  double vehicle_extent;  // footprint size across the opening
  double clearance;       // on the centred path; <= 0 means blocked
  bool blocked;
};

/// Static check of every gap at a fixed joint angle and yaw.
std::vector<GapPassability> gap_passability(const ObstacleMap& map,
                                            const ParamSet& p, double alpha,
                                            double yaw = 0.0);

}  // namespace foldquad
