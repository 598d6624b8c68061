#include <functional>
#include <map>

#include "foldquad/errors.hpp"
#include "foldquad/scenario.hpp"

namespace foldquad {
namespace {

const Eigen::Vector3d kHoverPoint(0.0, 0.0, -1.2);

Waypoint waypoint(double t, const Eigen::Vector3d& p, double alpha) {
  Waypoint w;
  w.t = t;
  w.position = p;
  w.alpha_command = alpha;
  return w;
}

Scenario hover(const std::string& name, double alpha) {
  Scenario s;
  s.name = name;
  s.duration_s = 20.0;
  s.waypoints = {waypoint(0.0, kHoverPoint, alpha),
                 waypoint(s.duration_s, kHoverPoint, alpha)};
  return s;
}

Scenario figure_eight(const std::string& name, double alpha) {
  Scenario s;
  s.name = name;
  s.waypoints =
      figure_eight_waypoints(kHoverPoint, 1.5, 0.75, 12.0, 2, 16, alpha, 3.0);
  s.duration_s = s.waypoints.back().t + 3.0;
  s.metrics.settle_s = 0.0;
  return s;
}

Scenario diamond(const std::string& name, double alpha) {
  Scenario s;
  s.name = name;
  s.waypoints = diamond_waypoints(kHoverPoint, 1.0, 4.0, alpha, 2.0);
  s.duration_s = s.waypoints.back().t + 3.0;
  s.metrics.settle_s = 0.0;
  return s;
}

// Hover folded while a fan blows sideways with a swinging, pulsing stream,
// then a rod poke.
Scenario fan_disturbance() {
  Scenario s = hover("disturbance_alpha90", kHalfPi);
  s.duration_s = 35.0;
  s.waypoints.back().t = s.duration_s;
  Disturbance fan;
  fan.kind = DisturbanceKind::kOscillatingForce;
  fan.direction = Eigen::Vector3d::UnitY();
  fan.magnitude_n = 2.0;
  fan.amplitude_n = 1.0;
  fan.frequency_hz = 0.25;
  fan.sweep_rad = 0.5;
  fan.start_s = 5.0;
  fan.duration_s = 20.0;
  Disturbance poke;
  poke.kind = DisturbanceKind::kImpulse;
  poke.direction = Eigen::Vector3d::UnitX();
  poke.magnitude_n = 3.0;
  poke.start_s = 28.0;
  poke.duration_s = 0.1;
  s.disturbances = {fan, poke};
  return s;
}

Scenario roll_impulse() {
  Scenario s = hover("roll_impulse_alpha90", kHalfPi);
  s.duration_s = 10.0;
  s.waypoints.back().t = s.duration_s;
  Disturbance hit;
  hit.kind = DisturbanceKind::kImpulse;
  hit.direction = Eigen::Vector3d::UnitX();
  hit.start_s = 5.0;
  hit.duration_s = 0.1;
  hit.torque_nm = Eigen::Vector3d(0.05, 0.0, 0.0);
  s.disturbances = {hit};
  return s;
}

Scenario morph_hover() {
  Scenario s = hover("morph_hover", 0.0);
  s.duration_s = 15.0;
  s.waypoints = {waypoint(0.0, kHoverPoint, 0.0),
                 waypoint(5.0, kHoverPoint, 0.0),
                 waypoint(s.duration_s, kHoverPoint, kHalfPi)};
  s.metrics.settle_s = 0.0;
  return s;
}

// Two walls: a 330 mm slot centred on y = 0 and a 468 mm slot centred on
// y = 1, with a turn in between.
Scenario narrow_gap() {
  Scenario s;
  s.name = "narrow_gap";
  const double z = kHoverPoint.z();
  s.waypoints = {
      waypoint(0.0, {0.0, 0.0, z}, 0.0),
      waypoint(4.0, {1.2, 0.0, z}, kHalfPi),
      waypoint(8.0, {3.0, 0.0, z}, kHalfPi),
      waypoint(11.0, {3.0, 1.0, z}, 0.9),
      waypoint(15.0, {5.2, 1.0, z}, 0.9),
      waypoint(18.0, {6.0, 1.0, z}, 0.0),
  };
  s.duration_s = 22.0;
  s.metrics.settle_s = 0.0;
  s.obstacles.rects = {
      {2.0, 2.2, -1.5, -0.165},
      {2.0, 2.2, 0.165, 1.5},
      {4.0, 4.2, -1.5, 0.766},
      {4.0, 4.2, 1.234, 2.5},
  };
  return s;
}

const std::map<std::string, std::function<Scenario()>>& registry() {
  static const std::map<std::string, std::function<Scenario()>> r = {
      {"hover_alpha0", [] { return hover("hover_alpha0", 0.0); }},
      {"hover_alpha90", [] { return hover("hover_alpha90", kHalfPi); }},
      {"disturbance_alpha90", fan_disturbance},
      {"roll_impulse_alpha90", roll_impulse},
      {"morph_hover", morph_hover},
      {"fig8_alpha0", [] { return figure_eight("fig8_alpha0", 0.0); }},
      {"fig8_alpha45", [] { return figure_eight("fig8_alpha45", kQuarterPi); }},
      {"fig8_alpha90", [] { return figure_eight("fig8_alpha90", kHalfPi); }},
      {"diamond_alpha0", [] { return diamond("diamond_alpha0", 0.0); }},
      {"diamond_alpha1", [] { return diamond("diamond_alpha1", 1.0); }},
      {"diamond_alpha90", [] { return diamond("diamond_alpha90", kHalfPi); }},
      {"narrow_gap", narrow_gap},
  };
  return r;
}

}  // namespace

std::vector<std::string> builtin_scenario_names() {
  std::vector<std::string> names;
  for (const auto& kv : registry()) names.push_back(kv.first);
  return names;
}

Scenario builtin_scenario(const std::string& name) {
  const auto it = registry().find(name);
  if (it == registry().end()) {
    throw ScenarioError("<name>", 0, "unknown scenario '" + name + "'");
  }
  return it->second();
}

}  // namespace foldquad
