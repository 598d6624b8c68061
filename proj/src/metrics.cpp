#include "foldquad/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "foldquad/gap.hpp"

namespace foldquad {
namespace {

constexpr double kTimeSlack = 1e-9;

double xy_error_sq(const TraceRow& r) {
  const double dx = r.p.x() - r.p_des.x();
  const double dy = r.p.y() - r.p_des.y();
  return dx * dx + dy * dy;
}

struct Window {
  std::size_t begin;
  std::size_t end;
};

std::vector<Window> windows(const Trace& trace, const MetricsConfig& cfg) {
  std::vector<Window> out;
  if (trace.empty()) return out;
  const double t_end = trace.back().t;
  auto lower = [&](double t) {
    return static_cast<std::size_t>(
        std::lower_bound(trace.begin(), trace.end(), t - kTimeSlack,
                         [](const TraceRow& r, double v) { return r.t < v; }) -
        trace.begin());
  };
  for (long k = 0;; ++k) {
    const double t0 = cfg.settle_s + static_cast<double>(k) * cfg.stride_s;
    const double t1 = t0 + cfg.window_s;
    if (t1 > t_end + kTimeSlack) break;
    const Window w{lower(t0), lower(t1)};
    if (w.end > w.begin) out.push_back(w);
  }
  return out;
}

double window_rmse(const Trace& trace, const Window& w) {
  double sum = 0.0;
  for (std::size_t i = w.begin; i < w.end; ++i) sum += xy_error_sq(trace[i]);
  return std::sqrt(sum / static_cast<double>(w.end - w.begin));
}

nlohmann::json histogram_json(const Histogram& h) {
  return {{"edges", h.edges}, {"counts", h.counts}};
}

}  // namespace

double MetricsReport::probability_within(double r) const {
  if (windowed_xy_rmse_m.empty()) return 0.0;
  const auto n = std::count_if(windowed_xy_rmse_m.begin(),
                               windowed_xy_rmse_m.end(),
                               [r](double v) { return v <= r; });
  return static_cast<double>(n) / static_cast<double>(windowed_xy_rmse_m.size());
}

std::vector<double> windowed_xy_rmse(const Trace& trace,
                                     const MetricsConfig& cfg) {
  const std::vector<Window> ws = windows(trace, cfg);
  std::vector<double> out(ws.size());
  const long n = static_cast<long>(ws.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[i] = window_rmse(trace, ws[i]);
  return out;
}

std::vector<double> windowed_xy_rmse_serial(const Trace& trace,
                                            const MetricsConfig& cfg) {
  std::vector<double> out;
  for (const Window& w : windows(trace, cfg)) out.push_back(window_rmse(trace, w));
  return out;
}

Histogram make_histogram(const std::vector<double>& values, double lo,
                         double hi, int bins) {
  Histogram h;
  h.edges.resize(bins + 1);
  h.counts.assign(bins, 0);
  const double width = (hi - lo) / bins;
  for (int i = 0; i <= bins; ++i) h.edges[i] = lo + i * width;
  h.edges[bins] = hi;
  for (double v : values) {
    if (v < lo || v > hi) continue;
    int k = static_cast<int>((v - lo) / width);
    h.counts[std::clamp(k, 0, bins - 1)]++;
  }
  return h;
}

MetricsReport compute_metrics(const Trace& trace, const Scenario& scenario) {
  const MetricsConfig& cfg = scenario.metrics;
  MetricsReport rep;

  Eigen::Vector3d sq = Eigen::Vector3d::Zero();
  double err_sum = 0.0;
  std::vector<double> z_errors;
  for (const TraceRow& r : trace) {
    rep.saturated_samples += r.saturated;
    rep.degraded_samples += r.degraded;
    if (r.t < cfg.settle_s - kTimeSlack) continue;
    const Eigen::Vector3d e = r.p - r.p_des;
    sq += e.cwiseAbs2();
    err_sum += e.norm();
    rep.max_position_error_m = std::max(rep.max_position_error_m, e.norm());
    z_errors.push_back(e.z());
    ++rep.samples;
  }
  if (rep.samples > 0) {
    const double n = static_cast<double>(rep.samples);
    rep.axis_rmse_m = (sq / n).cwiseSqrt();
    rep.xy_rmse_m = std::sqrt((sq.x() + sq.y()) / n);
    rep.mean_position_error_m = err_sum / n;
  }

  rep.windowed_xy_rmse_m = windowed_xy_rmse(trace, cfg);
  if (!rep.windowed_xy_rmse_m.empty()) {
    const double worst = *std::max_element(rep.windowed_xy_rmse_m.begin(),
                                           rep.windowed_xy_rmse_m.end());
    long steps = std::max(100L, static_cast<long>(worst / kCumulativeStep));
    while (steps * kCumulativeStep < worst) ++steps;
    const double r_max = steps * kCumulativeStep;
    rep.xy_rmse_histogram =
        make_histogram(rep.windowed_xy_rmse_m, 0.0, r_max, cfg.histogram_bins);
    for (long k = 0; k <= steps; ++k) {
      const double r = k * kCumulativeStep;
      rep.cumulative.push_back({r, rep.probability_within(r)});
    }
  }

  if (!z_errors.empty()) {
    double span = 0.01;
    for (double z : z_errors) span = std::max(span, std::abs(z));
    rep.z_error_histogram =
        make_histogram(z_errors, -span, span, cfg.histogram_bins);
  }

  if (!scenario.obstacles.empty() && !trace.empty()) {
    std::vector<PoseSample> path;
    path.reserve(trace.size());
    for (const TraceRow& r : trace) {
      path.push_back({r.t, r.p.x(), r.p.y(), r.rpy.z(), r.alpha});
    }
    const ClearanceReport c =
        check_gap_clearance(scenario.obstacles, path, scenario.params);
    rep.has_obstacles = true;
    rep.min_gap_clearance_m = c.min_clearance;
    rep.time_of_min_clearance_s = c.time_of_min;
    rep.collision_samples = c.violating_samples;
  }
  return rep;
}

std::string metrics_to_json(const MetricsReport& rep,
                            const std::string& scenario_name) {
  nlohmann::json j;
  j["scenario"] = scenario_name;
  j["samples"] = rep.samples;
  j["xy_rmse_m"] = rep.xy_rmse_m;
  j["axis_rmse_m"] = {rep.axis_rmse_m.x(), rep.axis_rmse_m.y(),
                      rep.axis_rmse_m.z()};
  j["mean_position_error_m"] = rep.mean_position_error_m;
  j["max_position_error_m"] = rep.max_position_error_m;
  j["probability_within_0.1m"] = rep.probability_within(0.1);
  j["windowed_xy_rmse_m"] = rep.windowed_xy_rmse_m;
  j["xy_rmse_histogram"] = histogram_json(rep.xy_rmse_histogram);
  nlohmann::json cum = nlohmann::json::array();
  for (const auto& c : rep.cumulative) cum.push_back({c.radius_m, c.probability});
  j["cumulative_probability"] = cum;
  j["z_error_histogram"] = histogram_json(rep.z_error_histogram);
  if (rep.has_obstacles) {
    j["gap"] = {{"min_clearance_m", rep.min_gap_clearance_m},
                {"time_of_min_clearance_s", rep.time_of_min_clearance_s},
                {"collision_samples", rep.collision_samples}};
  } else {
    j["gap"] = nullptr;
  }
  j["saturated_samples"] = rep.saturated_samples;
  j["degraded_samples"] = rep.degraded_samples;
  return j.dump(2) + "\n";
}

}  // namespace foldquad
