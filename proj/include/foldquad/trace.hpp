#pragma once

// Per-step simulation log and its CSV form. Column order is fixed and the
// header row is always written; values use 9 significant digits.

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

namespace foldquad {

struct TraceRow {
  double t = 0.0;
  Eigen::Vector3d p = Eigen::Vector3d::Zero();
  Eigen::Vector3d v = Eigen::Vector3d::Zero();
  Eigen::Vector4d q = Eigen::Vector4d(1, 0, 0, 0);  // w, x, y, z
  Eigen::Vector3d rpy = Eigen::Vector3d::Zero();
  Eigen::Vector3d omega = Eigen::Vector3d::Zero();
  double alpha = 0.0;
  double alpha_cmd = 0.0;
  Eigen::Vector4d thrust = Eigen::Vector4d::Zero();
  Eigen::Vector3d p_des = Eigen::Vector3d::Zero();
  Eigen::Vector3d v_des = Eigen::Vector3d::Zero();
  double yaw_des = 0.0;
  double thrust_cmd = 0.0;
  Eigen::Vector3d tau_cmd = Eigen::Vector3d::Zero();
  Eigen::Vector3d att_err = Eigen::Vector3d::Zero();
  int saturated = 0;
  int degraded = 0;  // least-squares allocation fallback in use
};

using Trace = std::vector<TraceRow>;

/// Comma-separated column names, without trailing newline.
const std::string& trace_header();
std::size_t trace_column_count();

void write_trace_csv(std::ostream& os, const Trace& trace);
void write_trace_csv(const std::string& path, const Trace& trace);

/// Parses a trace written by write_trace_csv. Throws std::runtime_error on
/// header mismatch or malformed rows.
Trace read_trace_csv(std::istream& is);
Trace read_trace_csv(const std::string& path);

/// Unit quaternion (w, x, y, z) with w >= 0.
Eigen::Vector4d quaternion_wxyz(const Eigen::Matrix3d& r);

}  // namespace foldquad
