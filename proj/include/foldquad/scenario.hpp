#pragma once

// Declarative experiment description and its YAML form. Every physical
// quantity carries its unit in the key name; unknown keys are rejected.

#include <cstdint>
#include <string>
#include <vector>

#include "foldquad/controller.hpp"
#include "foldquad/gap.hpp"
#include "foldquad/morphology.hpp"
#include "foldquad/simulator.hpp"
#include "foldquad/trajectory.hpp"

namespace foldquad {

/// Standard deviations of the zero-mean Gaussian sensor noise.
struct NoiseConfig {
  double position_m = 0.0;
  double velocity_mps = 0.0;
  double attitude_rad = 0.0;  // small-angle perturbation of the IMU attitude
  double rate_radps = 0.0;

  bool any() const {
    return position_m > 0.0 || velocity_mps > 0.0 || attitude_rad > 0.0 ||
           rate_radps > 0.0;
  }
  bool operator==(const NoiseConfig&) const = default;
};

struct MetricsConfig {
  double settle_s = 2.0;   // samples before this are ignored
  double window_s = 1.0;   // sliding RMSE window
  double stride_s = 0.1;
  int histogram_bins = 20;

  bool operator==(const MetricsConfig&) const = default;
};

struct Scenario {
  std::string name = "unnamed";
  double duration_s = 10.0;
  std::uint64_t seed = 1;
  double physics_dt_s = 0.001;
  double outer_rate_hz = 100.0;
  double inner_rate_hz = 500.0;
  bool adaptation = true;
  // Abort when the position error exceeds this bound.
  double divergence_bound_m = 50.0;
  ParamSet params;
  GainSet gains;
  NoiseConfig noise;
  std::vector<Waypoint> waypoints;
  std::vector<Disturbance> disturbances;
  ObstacleMap obstacles;
  MetricsConfig metrics;
  std::string trace_file = "trace.csv";
  std::string metrics_file = "metrics.json";

  /// Throws ScenarioError for any invalid field.
  void validate() const;
  bool operator==(const Scenario&) const = default;
};

Scenario parse_scenario_string(const std::string& text);
Scenario parse_scenario_file(const std::string& path);

/// Canonical YAML dump; parsing it reproduces an equal Scenario.
std::string dump_scenario(const Scenario& s);

/// Names of the compiled-in scenarios.
std::vector<std::string> builtin_scenario_names();
/// Throws ScenarioError for an unknown name.
Scenario builtin_scenario(const std::string& name);

/// Accepts a file path, a name under the shipped scenario directory, or a
/// built-in name, in that order.
Scenario resolve_scenario(const std::string& name_or_path);

/// Directory holding the shipped scenario files.
std::string scenario_directory();

}  // namespace foldquad
