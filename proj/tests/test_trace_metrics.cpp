#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "foldquad/metrics.hpp"
#include "foldquad/trace.hpp"

using namespace foldquad;

namespace {

Trace synthetic(double seconds, double dt,
                const std::function<Eigen::Vector3d(double)>& error) {
  Trace tr;
  const long n = std::lround(seconds / dt);
  for (long k = 0; k <= n; ++k) {
    TraceRow r;
    r.t = k * dt;
    r.p_des = Eigen::Vector3d(std::sin(r.t), 0.5 * r.t, -1.2);
    r.p = r.p_des + error(r.t);
    tr.push_back(r);
  }
  return tr;
}

Scenario plain() {
  Scenario s;
  s.waypoints.resize(2);
  s.waypoints[1].t = 1.0;
  return s;
}

}  // namespace

TEST(Trace, HeaderAndRoundTrip) {
  EXPECT_EQ(trace_column_count(), 39u);
  Trace tr;
  std::mt19937 rng(1);
  std::normal_distribution<double> n(0, 1);
  for (int k = 0; k < 20; ++k) {
    TraceRow r;
    r.t = 0.001 * k;
    r.p = Eigen::Vector3d(n(rng), n(rng), n(rng));
    r.q = quaternion_wxyz(Eigen::Matrix3d::Identity());
    r.thrust = Eigen::Vector4d(n(rng), n(rng), n(rng), n(rng));
    r.saturated = k % 2;
    tr.push_back(r);
  }
  std::stringstream a;
  write_trace_csv(a, tr);
  const std::string text = a.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), trace_header());
  const Trace back = read_trace_csv(a);
  ASSERT_EQ(back.size(), tr.size());
  for (std::size_t i = 0; i < tr.size(); ++i) {
    EXPECT_LT((back[i].p - tr[i].p).norm(), 1e-8 * (1 + tr[i].p.norm()));
    EXPECT_EQ(back[i].saturated, tr[i].saturated);
  }
  std::stringstream b;
  write_trace_csv(b, back);
  EXPECT_EQ(b.str(), text);  // printing is idempotent at 9 digits
}

TEST(Trace, RejectsMalformedInput) {
  std::stringstream bad_header("t,x\n1,2\n");
  EXPECT_THROW(read_trace_csv(bad_header), std::runtime_error);
  std::stringstream short_row(trace_header() + "\n1,2,3\n");
  EXPECT_THROW(read_trace_csv(short_row), std::runtime_error);
}

TEST(Trace, QuaternionSign) {
  const Eigen::Vector4d q = quaternion_wxyz(
      Eigen::AngleAxisd(3.0, Eigen::Vector3d::UnitZ()).toRotationMatrix());
  EXPECT_GE(q[0], 0.0);
  EXPECT_NEAR(q.norm(), 1.0, 1e-15);
}

TEST(Metrics, PerfectTrace) {
  const Trace tr = synthetic(10, 0.001, [](double) { return Eigen::Vector3d::Zero(); });
  const MetricsReport m = compute_metrics(tr, plain());
  EXPECT_EQ(m.xy_rmse_m, 0.0);
  EXPECT_EQ(m.axis_rmse_m, Eigen::Vector3d::Zero());
  ASSERT_FALSE(m.cumulative.empty());
  for (const auto& c : m.cumulative) {
    if (c.radius_m > 0) {
      EXPECT_EQ(c.probability, 1.0);
    }
  }
  EXPECT_EQ(m.probability_within(1e-9), 1.0);
}

TEST(Metrics, ConstantOffset) {
  const Trace tr =
      synthetic(10, 0.001, [](double) { return Eigen::Vector3d(0.05, 0, 0); });
  const MetricsReport m = compute_metrics(tr, plain());
  EXPECT_NEAR(m.xy_rmse_m, 0.05, 1e-12);
  EXPECT_NEAR(m.axis_rmse_m.x(), 0.05, 1e-12);
  EXPECT_NEAR(m.mean_position_error_m, 0.05, 1e-12);
  for (double w : m.windowed_xy_rmse_m) EXPECT_NEAR(w, 0.05, 1e-12);
  EXPECT_EQ(m.probability_within(0.049), 0.0);
  EXPECT_EQ(m.probability_within(0.051), 1.0);
}

TEST(Metrics, WindowCountAndCumulativeShape) {
  std::mt19937 rng(2);
  std::normal_distribution<double> n(0.0, 0.03);
  const Trace tr = synthetic(12, 0.001, [&](double t) {
    return Eigen::Vector3d(n(rng), n(rng), 0.1 * std::sin(t));
  });
  const Scenario sc = plain();
  const MetricsReport m = compute_metrics(tr, sc);
  // windows start at 2.0, 2.1, ..., 11.0
  EXPECT_EQ(m.windowed_xy_rmse_m.size(), 91u);
  long total = 0;
  for (long c : m.xy_rmse_histogram.counts) total += c;
  EXPECT_EQ(total, 91);
  double prev = 0.0;
  for (const auto& c : m.cumulative) {
    EXPECT_GE(c.probability, prev);
    prev = c.probability;
  }
  EXPECT_EQ(m.cumulative.back().probability, 1.0);
  EXPECT_GE(m.cumulative.back().radius_m, 0.5);
  long z_total = 0;
  for (long c : m.z_error_histogram.counts) z_total += c;
  EXPECT_EQ(static_cast<std::size_t>(z_total), m.samples);
  // sigma = 0.03 per axis: window RMSE ~ 0.042, far below 0.1
  EXPECT_GT(m.probability_within(0.1), 0.95);
}

TEST(Metrics, ParallelWindowsMatchSerial) {
  std::mt19937 rng(3);
  std::normal_distribution<double> n(0.0, 0.05);
  const Trace tr = synthetic(30, 0.001, [&](double) {
    return Eigen::Vector3d(n(rng), n(rng), n(rng));
  });
  MetricsConfig cfg;
  EXPECT_EQ(windowed_xy_rmse(tr, cfg), windowed_xy_rmse_serial(tr, cfg));
}

TEST(Metrics, JsonIsPureFunctionOfTrace) {
  const Trace tr = synthetic(5, 0.001, [](double t) {
    return Eigen::Vector3d(0.01 * t, -0.02, 0.003);
  });
  const Scenario sc = plain();
  EXPECT_EQ(metrics_to_json(compute_metrics(tr, sc), "x"),
            metrics_to_json(compute_metrics(tr, sc), "x"));
}

TEST(Histogram, EdgesAndCounts) {
  const Histogram h = make_histogram({0.0, 0.1, 0.25, 0.99, 1.0, 1.5}, 0.0, 1.0, 4);
  ASSERT_EQ(h.edges.size(), 5u);
  EXPECT_EQ(h.counts, (std::vector<long>{2, 1, 0, 2}));
}
