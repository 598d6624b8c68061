#include "foldquad/trace.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace foldquad {
namespace {

constexpr const char* kColumns[] = {
    "t_s",        "x_m",        "y_m",          "z_m",         "vx_mps",
    "vy_mps",     "vz_mps",     "qw",           "qx",          "qy",
    "qz",         "roll_rad",   "pitch_rad",    "yaw_rad",     "wx_radps",
    "wy_radps",   "wz_radps",   "alpha_rad",    "alpha_cmd_rad", "thrust1_n",
    "thrust2_n",  "thrust3_n",  "thrust4_n",    "x_des_m",     "y_des_m",
    "z_des_m",    "vx_des_mps", "vy_des_mps",   "vz_des_mps",  "yaw_des_rad",
    "thrust_cmd_n", "tau_x_nm", "tau_y_nm",     "tau_z_nm",    "att_err_x",
    "att_err_y",  "att_err_z",  "saturated",    "degraded"};

constexpr std::size_t kNumColumns = sizeof(kColumns) / sizeof(kColumns[0]);

std::vector<double> flatten(const TraceRow& r) {
  std::vector<double> v;
  v.reserve(kNumColumns);
  v.push_back(r.t);
  for (int i = 0; i < 3; ++i) v.push_back(r.p[i]);
  for (int i = 0; i < 3; ++i) v.push_back(r.v[i]);
  for (int i = 0; i < 4; ++i) v.push_back(r.q[i]);
  for (int i = 0; i < 3; ++i) v.push_back(r.rpy[i]);
  for (int i = 0; i < 3; ++i) v.push_back(r.omega[i]);
  v.push_back(r.alpha);
  v.push_back(r.alpha_cmd);
  for (int i = 0; i < 4; ++i) v.push_back(r.thrust[i]);
  for (int i = 0; i < 3; ++i) v.push_back(r.p_des[i]);
  for (int i = 0; i < 3; ++i) v.push_back(r.v_des[i]);
  v.push_back(r.yaw_des);
  v.push_back(r.thrust_cmd);
  for (int i = 0; i < 3; ++i) v.push_back(r.tau_cmd[i]);
  for (int i = 0; i < 3; ++i) v.push_back(r.att_err[i]);
  v.push_back(r.saturated);
  v.push_back(r.degraded);
  return v;
}

TraceRow unflatten(const std::vector<double>& v) {
  TraceRow r;
  std::size_t k = 0;
  auto next = [&] { return v[k++]; };
  r.t = next();
  for (int i = 0; i < 3; ++i) r.p[i] = next();
  for (int i = 0; i < 3; ++i) r.v[i] = next();
  for (int i = 0; i < 4; ++i) r.q[i] = next();
  for (int i = 0; i < 3; ++i) r.rpy[i] = next();
  for (int i = 0; i < 3; ++i) r.omega[i] = next();
  r.alpha = next();
  r.alpha_cmd = next();
  for (int i = 0; i < 4; ++i) r.thrust[i] = next();
  for (int i = 0; i < 3; ++i) r.p_des[i] = next();
  for (int i = 0; i < 3; ++i) r.v_des[i] = next();
  r.yaw_des = next();
  r.thrust_cmd = next();
  for (int i = 0; i < 3; ++i) r.tau_cmd[i] = next();
  for (int i = 0; i < 3; ++i) r.att_err[i] = next();
  r.saturated = static_cast<int>(next());
  r.degraded = static_cast<int>(next());
  return r;
}

}  // namespace

const std::string& trace_header() {
  static const std::string header = [] {
    std::string h;
    for (std::size_t i = 0; i < kNumColumns; ++i) {
      if (i) h += ',';
      h += kColumns[i];
    }
    return h;
  }();
  return header;
}

std::size_t trace_column_count() { return kNumColumns; }

void write_trace_csv(std::ostream& os, const Trace& trace) {
  os << trace_header() << '\n';
  char buf[32];
  std::string line;
  for (const TraceRow& row : trace) {
    line.clear();
    const auto values = flatten(row);
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) line += ',';
      std::snprintf(buf, sizeof(buf), "%.9g", values[i]);
      line += buf;
    }
    line += '\n';
    os << line;
  }
}

void write_trace_csv(const std::string& path, const Trace& trace) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  write_trace_csv(os, trace);
}

Trace read_trace_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != trace_header()) {
    throw std::runtime_error("trace header does not match the expected columns");
  }
  Trace trace;
  std::vector<double> values;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    values.clear();
    std::istringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(cell, &used));
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw std::runtime_error("trace line " + std::to_string(line_no) +
                                 ": bad number '" + cell + "'");
      }
    }
    if (values.size() != kNumColumns) {
      throw std::runtime_error("trace line " + std::to_string(line_no) +
                               ": expected " + std::to_string(kNumColumns) +
                               " columns");
    }
    trace.push_back(unflatten(values));
  }
  return trace;
}

Trace read_trace_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  return read_trace_csv(is);
}

Eigen::Vector4d quaternion_wxyz(const Eigen::Matrix3d& r) {
  Eigen::Quaterniond q(r);
  q.normalize();
  if (q.w() < 0.0) q.coeffs() *= -1.0;
  return {q.w(), q.x(), q.y(), q.z()};
}

}  // namespace foldquad
