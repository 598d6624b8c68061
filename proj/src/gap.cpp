#include "foldquad/gap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "foldquad/errors.hpp"

namespace foldquad {
namespace {

bool overlaps(double a0, double a1, double b0, double b1) {
  return std::min(a1, b1) - std::max(a0, b0) > 0.0;
}

bool intersects_open(const Rect& r, double x0, double x1, double y0,
                     double y1) {
  return overlaps(r.x_min, r.x_max, x0, x1) &&
         overlaps(r.y_min, r.y_max, y0, y1);
}

double rect_signed_distance(const Rect& r, const Footprint& fp, double x,
                            double y) {
  const double x0 = r.x_min - fp.half_x, x1 = r.x_max + fp.half_x;
  const double y0 = r.y_min - fp.half_y, y1 = r.y_max + fp.half_y;
  const double dx = std::max({x0 - x, 0.0, x - x1});
  const double dy = std::max({y0 - y, 0.0, y - y1});
  if (dx > 0.0 || dy > 0.0) return std::hypot(dx, dy);
  return -std::min({x - x0, x1 - x, y - y0, y1 - y});
}

void require_finite(const std::vector<PoseSample>& path) {
  for (const PoseSample& s : path) {
    if (!(std::isfinite(s.x) && std::isfinite(s.y) && std::isfinite(s.yaw) &&
          std::isfinite(s.alpha))) {
      throw DomainError("path sample at t=" + std::to_string(s.t) +
                        " is not finite");
    }
  }
}

void summarize(ClearanceReport& rep, const std::vector<PoseSample>& path) {
  rep.min_clearance = std::numeric_limits<double>::infinity();
  bool inside = false;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const double c = rep.clearance[i];
    if (c < rep.min_clearance) {
      rep.min_clearance = c;
      rep.time_of_min = path[i].t;
    }
    if (c < 0.0) {
      ++rep.violating_samples;
      if (!inside) rep.violations.emplace_back(path[i].t, path[i].t);
      rep.violations.back().second = path[i].t;
      inside = true;
    } else {
      inside = false;
    }
  }
}

}  // namespace

void ObstacleMap::validate() const {
  for (const Rect& r : rects) {
    if (!(r.x_max > r.x_min && r.y_max > r.y_min)) {
      throw DomainError("obstacle rectangles need positive extent");
    }
  }
}

std::vector<Gap> find_gaps(const ObstacleMap& map, double max_width) {
  std::vector<Gap> gaps;
  const auto& rs = map.rects;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    for (std::size_t j = i + 1; j < rs.size(); ++j) {
      const Rect& a = rs[i];
      const Rect& b = rs[j];
      for (int axis = 0; axis < 2; ++axis) {
        // axis 1: facing across y, so x ranges must overlap
        const bool facing = axis == 1
                                ? overlaps(a.x_min, a.x_max, b.x_min, b.x_max)
                                : overlaps(a.y_min, a.y_max, b.y_min, b.y_max);
        if (!facing) continue;
        const double a_lo = axis == 1 ? a.y_min : a.x_min;
        const double a_hi = axis == 1 ? a.y_max : a.x_max;
        const double b_lo = axis == 1 ? b.y_min : b.x_min;
        const double b_hi = axis == 1 ? b.y_max : b.x_max;
        double lo, hi;
        if (a_hi <= b_lo) {
          lo = a_hi, hi = b_lo;
        } else if (b_hi <= a_lo) {
          lo = b_hi, hi = a_lo;
        } else {
          continue;
        }
        const double width = hi - lo;
        if (!(width > 0.0) || width > max_width) continue;

        double s0, s1;  // shared range along the other axis
        if (axis == 1) {
          s0 = std::max(a.x_min, b.x_min), s1 = std::min(a.x_max, b.x_max);
        } else {
          s0 = std::max(a.y_min, b.y_min), s1 = std::min(a.y_max, b.y_max);
        }
        const double gx0 = axis == 1 ? s0 : lo, gx1 = axis == 1 ? s1 : hi;
        const double gy0 = axis == 1 ? lo : s0, gy1 = axis == 1 ? hi : s1;
        bool blocked = false;
        for (std::size_t k = 0; k < rs.size() && !blocked; ++k) {
          if (k != i && k != j) blocked = intersects_open(rs[k], gx0, gx1, gy0, gy1);
        }
        if (blocked) continue;
        gaps.push_back({i, j, axis, width, 0.5 * (gx0 + gx1),
                        0.5 * (gy0 + gy1)});
      }
    }
  }
  return gaps;
}

Footprint footprint(const ParamSet& p, double alpha, double yaw) {
  // Logged joint angles are rounded and may sit a hair outside the range.
  if (!std::isfinite(alpha) || !std::isfinite(yaw)) {
    throw DomainError("footprint needs finite alpha and yaw");
  }
  alpha = std::clamp(alpha, 0.0, kHalfPi);
  const double half_w = 0.5 * body_width(p, alpha);
  const double half_l = 0.5 * body_length(p, alpha);
  const double c = std::abs(std::cos(yaw));
  const double s = std::abs(std::sin(yaw));
  return {half_l * c + half_w * s, half_l * s + half_w * c};
}

double point_clearance(const ObstacleMap& map, const Footprint& fp, double x,
                       double y) {
  double best = std::numeric_limits<double>::infinity();
  for (const Rect& r : map.rects) {
    best = std::min(best, rect_signed_distance(r, fp, x, y));
  }
  return best;
}

ClearanceReport check_gap_clearance(const ObstacleMap& map,
                                    const std::vector<PoseSample>& path,
                                    const ParamSet& p) {
  require_finite(path);
  ClearanceReport rep;
  rep.clearance.resize(path.size());
  const long n = static_cast<long>(path.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    const PoseSample& s = path[i];
    rep.clearance[i] =
        point_clearance(map, footprint(p, s.alpha, s.yaw), s.x, s.y);
  }
  summarize(rep, path);
  return rep;
}

ClearanceReport check_gap_clearance_serial(const ObstacleMap& map,
                                           const std::vector<PoseSample>& path,
                                           const ParamSet& p) {
  require_finite(path);
  ClearanceReport rep;
  rep.clearance.resize(path.size());
  for (std::size_t i = 0; i < path.size(); ++i) {
    const PoseSample& s = path[i];
    rep.clearance[i] =
        point_clearance(map, footprint(p, s.alpha, s.yaw), s.x, s.y);
  }
  summarize(rep, path);
  return rep;
}

std::vector<GapPassability> gap_passability(const ObstacleMap& map,
                                            const ParamSet& p, double alpha,
                                            double yaw) {
  std::vector<GapPassability> out;
  const Footprint fp = footprint(p, alpha, yaw);
  for (const Gap& g : find_gaps(map)) {
    GapPassability gp;
    gp.gap = g;
    gp.vehicle_extent = 2.0 * (g.across_axis == 1 ? fp.half_y : fp.half_x);
    gp.clearance = point_clearance(map, fp, g.center_x, g.center_y);
    gp.blocked = !(gp.clearance > 0.0);
    out.push_back(gp);
  }
  return out;
}

}  // namespace foldquad
