#pragma once

// Evaluation metrics over a trace: tracking RMSE, sliding-window XY RMSE with
// its histogram and cumulative probability curve, altitude error histogram
// and gap clearance.

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "foldquad/scenario.hpp"
#include "foldquad/trace.hpp"

namespace foldquad {

struct Histogram {
  std::vector<double> edges;  // bins + 1 entries
  std::vector<long> counts;
};

struct CumulativePoint {
  double radius_m;
  double probability;
};

struct MetricsReport {
  std::size_t samples = 0;          // post-settle samples used
  double xy_rmse_m = 0.0;
  Eigen::Vector3d axis_rmse_m = Eigen::Vector3d::Zero();
  double mean_position_error_m = 0.0;
  double max_position_error_m = 0.0;
  std::vector<double> windowed_xy_rmse_m;
  Histogram xy_rmse_histogram;
  std::vector<CumulativePoint> cumulative;
  Histogram z_error_histogram;
  bool has_obstacles = false;
  double min_gap_clearance_m = 0.0;
  double time_of_min_clearance_s = 0.0;
  std::size_t collision_samples = 0;
  int saturated_samples = 0;
  int degraded_samples = 0;

  /// Fraction of windows whose XY RMSE is <= r; 0 without windows.
  double probability_within(double r) const;
};

/// Step of the radius grid used by the cumulative curve.
inline constexpr double kCumulativeStep = 0.005;

/// Sliding-window XY RMSE over samples with t >= settle. Windows start at
/// settle + k * stride and are kept while they fit inside the trace.
std::vector<double> windowed_xy_rmse(const Trace& trace,
                                     const MetricsConfig& cfg);
/// Serial reference for windowed_xy_rmse.
std::vector<double> windowed_xy_rmse_serial(const Trace& trace,
                                            const MetricsConfig& cfg);

Histogram make_histogram(const std::vector<double>& values, double lo,
                         double hi, int bins);

MetricsReport compute_metrics(const Trace& trace, const Scenario& scenario);

/// JSON text of the report; identical reports give identical text.
std::string metrics_to_json(const MetricsReport& report,
                            const std::string& scenario_name);

}  // namespace foldquad
