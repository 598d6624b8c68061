#include "foldquad/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "foldquad/errors.hpp"

namespace foldquad {
namespace {

int line_of(const YAML::Node& n) {
  const int line = n.Mark().line;
  return line >= 0 ? line + 1 : 0;
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string indexed(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

double as_double(const YAML::Node& n, const std::string& path) {
  if (!n.IsScalar()) throw ScenarioError(path, line_of(n), "expected a number");
  double v = 0.0;
  if (!YAML::convert<double>::decode(n, v) || !std::isfinite(v)) {
    throw ScenarioError(path, line_of(n), "expected a finite number");
  }
  return v;
}

Eigen::Vector3d as_vec3(const YAML::Node& n, const std::string& path) {
  if (!n.IsSequence() || n.size() != 3) {
    throw ScenarioError(path, line_of(n), "expected a list of 3 numbers");
  }
  Eigen::Vector3d v;
  for (std::size_t i = 0; i < 3; ++i) v[i] = as_double(n[i], indexed(path, i));
  return v;
}

/// Reads keys from one mapping and rejects any it was not asked for.
class MapReader {
 public:
  MapReader(const YAML::Node& node, std::string path)
      : node_(node), path_(std::move(path)) {
    if (!node_.IsMap()) {
      throw ScenarioError(path_.empty() ? "<root>" : path_, line_of(node_),
                          "expected a mapping");
    }
  }

  bool has(const char* key) {
    seen_.insert(key);
    return static_cast<bool>(node_[key]);
  }

  YAML::Node node(const char* key) { return node_[key]; }
  std::string path(const char* key) const { return join(path_, key); }

  void number(const char* key, double& out) {
    if (has(key)) out = as_double(node_[key], path(key));
  }
  void vec3(const char* key, Eigen::Vector3d& out) {
    if (has(key)) out = as_vec3(node_[key], path(key));
  }
  void integer(const char* key, int& out) {
    if (!has(key)) return;
    const YAML::Node n = node_[key];
    if (!n.IsScalar() || !YAML::convert<int>::decode(n, out)) {
      throw ScenarioError(path(key), line_of(n), "expected an integer");
    }
  }
  void unsigned64(const char* key, std::uint64_t& out) {
    if (!has(key)) return;
    const YAML::Node n = node_[key];
    unsigned long long v = 0;
    if (!n.IsScalar() || !YAML::convert<unsigned long long>::decode(n, v)) {
      throw ScenarioError(path(key), line_of(n),
                          "expected a non-negative integer");
    }
    out = v;
  }
  void boolean(const char* key, bool& out) {
    if (!has(key)) return;
    const YAML::Node n = node_[key];
    if (!n.IsScalar() || !YAML::convert<bool>::decode(n, out)) {
      throw ScenarioError(path(key), line_of(n), "expected true or false");
    }
  }
  void text(const char* key, std::string& out) {
    if (!has(key)) return;
    const YAML::Node n = node_[key];
    if (!n.IsScalar()) throw ScenarioError(path(key), line_of(n), "expected a string");
    out = n.Scalar();
  }

  void finish() const {
    for (const auto& kv : node_) {
      const std::string key = kv.first.Scalar();
      if (!seen_.count(key)) {
        throw ScenarioError(join(path_, key), line_of(kv.first), "unknown key");
      }
    }
  }

 private:
  YAML::Node node_;
  std::string path_;
  std::set<std::string> seen_;
};

void read_params(MapReader r, ParamSet& p) {
  r.number("mass_kg", p.mass_kg);
  r.number("arm_length_m", p.arm_length_m);
  r.number("tilt_delta_rad", p.tilt_delta_rad);
  r.number("inertia_upper_x_kgm2", p.inertia_upper_x);
  r.number("inertia_upper_y_kgm2", p.inertia_upper_y);
  r.number("inertia_lower_x_kgm2", p.inertia_lower_x);
  r.number("inertia_lower_y_kgm2", p.inertia_lower_y);
  r.number("moment_coeff_km_m", p.moment_coeff_km);
  r.number("gravity_mps2", p.gravity_mps2);
  r.number("width_at_alpha0_m", p.width_at_alpha0_m);
  r.number("width_at_alpha90_m", p.width_at_alpha90_m);
  r.number("max_motor_thrust_n", p.max_motor_thrust_n);
  r.number("motor_time_constant_s", p.motor_time_constant_s);
  r.number("alpha_rate_limit_radps", p.alpha_rate_limit_radps);
  r.number("vertical_arm_offset_m", p.vertical_arm_offset_m);
  r.number("yaw_inertia_factor", p.yaw_inertia_factor);
  r.number("linear_drag_nspm", p.linear_drag_nspm);
  r.finish();
}

void read_gains(MapReader r, GainSet& g) {
  r.vec3("kp_pos", g.kp);
  r.vec3("kv_pos", g.kv);
  r.vec3("ki_pos", g.ki);
  r.vec3("kp_att", g.kp_inner);
  r.vec3("kv_att", g.kv_inner);
  r.vec3("ki_att", g.ki_inner);
  r.number("position_integral_clamp_ms", g.position_integral_clamp);
  r.number("attitude_integral_clamp_rads", g.attitude_integral_clamp);
  r.finish();
}

void read_noise(MapReader r, NoiseConfig& n) {
  r.number("position_m", n.position_m);
  r.number("velocity_mps", n.velocity_mps);
  r.number("attitude_rad", n.attitude_rad);
  r.number("rate_radps", n.rate_radps);
  r.finish();
}

void read_metrics(MapReader r, MetricsConfig& m) {
  r.number("settle_s", m.settle_s);
  r.number("window_s", m.window_s);
  r.number("stride_s", m.stride_s);
  r.integer("histogram_bins", m.histogram_bins);
  r.finish();
}

void read_sim(MapReader r, Scenario& s) {
  r.number("physics_dt_s", s.physics_dt_s);
  r.number("outer_rate_hz", s.outer_rate_hz);
  r.number("inner_rate_hz", s.inner_rate_hz);
  r.boolean("adaptation", s.adaptation);
  r.number("divergence_bound_m", s.divergence_bound_m);
  r.finish();
}

void read_output(MapReader r, Scenario& s) {
  r.text("trace_file", s.trace_file);
  r.text("metrics_file", s.metrics_file);
  r.finish();
}

Waypoint read_waypoint(MapReader r) {
  Waypoint w;
  if (!r.has("t_s")) throw ScenarioError(r.path("t_s"), 0, "missing key");
  if (!r.has("position_m")) throw ScenarioError(r.path("position_m"), 0, "missing key");
  r.number("t_s", w.t);
  r.vec3("position_m", w.position);
  r.number("yaw_rad", w.yaw);
  r.number("alpha_rad", w.alpha_command);
  if (r.has("alpha_rad") &&
      (w.alpha_command < 0.0 || w.alpha_command > kHalfPi)) {
    throw ScenarioError(r.path("alpha_rad"), line_of(r.node("alpha_rad")),
                        "joint angle must lie in [0, pi/2]");
  }
  if (r.has("velocity_mps")) {
    w.velocity = as_vec3(r.node("velocity_mps"), r.path("velocity_mps"));
  }
  if (r.has("acceleration_mps2")) {
    w.acceleration =
        as_vec3(r.node("acceleration_mps2"), r.path("acceleration_mps2"));
  }
  r.finish();
  return w;
}

const char* kind_name(DisturbanceKind k) {
  switch (k) {
    case DisturbanceKind::kConstantForce:
      return "constant_force";
    case DisturbanceKind::kOscillatingForce:
      return "oscillating_force";
    case DisturbanceKind::kImpulse:
      return "impulse";
  }
  return "constant_force";
}

Disturbance read_disturbance(MapReader r) {
  Disturbance d;
  std::string kind = kind_name(d.kind);
  r.text("kind", kind);
  if (kind == "constant_force") {
    d.kind = DisturbanceKind::kConstantForce;
  } else if (kind == "oscillating_force") {
    d.kind = DisturbanceKind::kOscillatingForce;
  } else if (kind == "impulse") {
    d.kind = DisturbanceKind::kImpulse;
  } else {
    throw ScenarioError(r.path("kind"), line_of(r.node("kind")),
                        "kind must be constant_force, oscillating_force or impulse");
  }
  r.vec3("direction", d.direction);
  r.number("magnitude_n", d.magnitude_n);
  r.number("amplitude_n", d.amplitude_n);
  r.number("frequency_hz", d.frequency_hz);
  r.number("sweep_rad", d.sweep_rad);
  r.number("start_s", d.start_s);
  r.number("duration_s", d.duration_s);
  r.vec3("torque_nm", d.torque_nm);
  r.finish();
  return d;
}

Rect read_rect(MapReader r) {
  Rect rect;
  for (const char* key : {"x_min_m", "x_max_m", "y_min_m", "y_max_m"}) {
    if (!r.has(key)) throw ScenarioError(r.path(key), 0, "missing key");
  }
  r.number("x_min_m", rect.x_min);
  r.number("x_max_m", rect.x_max);
  r.number("y_min_m", rect.y_min);
  r.number("y_max_m", rect.y_max);
  if (!(rect.x_max > rect.x_min && rect.y_max > rect.y_min)) {
    throw ScenarioError(r.path("x_max_m"), line_of(r.node("x_max_m")),
                        "obstacle needs max > min on both axes");
  }
  r.finish();
  return rect;
}

template <typename T, typename Fn>
std::vector<T> read_list(MapReader& parent, const char* key, Fn read_item) {
  std::vector<T> out;
  if (!parent.has(key)) return out;
  const YAML::Node n = parent.node(key);
  const std::string path = parent.path(key);
  if (n.IsNull()) return out;
  if (!n.IsSequence()) throw ScenarioError(path, line_of(n), "expected a list");
  for (std::size_t i = 0; i < n.size(); ++i) {
    out.push_back(read_item(MapReader(n[i], indexed(path, i))));
  }
  return out;
}

Scenario parse_node(const YAML::Node& root) {
  Scenario s;
  MapReader r(root, "");
  r.text("name", s.name);
  r.number("duration_s", s.duration_s);
  r.unsigned64("seed", s.seed);
  if (r.has("sim")) read_sim(MapReader(r.node("sim"), "sim"), s);
  if (r.has("params")) read_params(MapReader(r.node("params"), "params"), s.params);
  if (r.has("gains")) read_gains(MapReader(r.node("gains"), "gains"), s.gains);
  if (r.has("noise")) read_noise(MapReader(r.node("noise"), "noise"), s.noise);
  if (r.has("metrics")) read_metrics(MapReader(r.node("metrics"), "metrics"), s.metrics);
  if (r.has("output")) read_output(MapReader(r.node("output"), "output"), s);

  if (!r.has("waypoints")) {
    throw ScenarioError("waypoints", line_of(root), "missing key");
  }
  s.waypoints = read_list<Waypoint>(r, "waypoints", read_waypoint);
  const YAML::Node wps = r.node("waypoints");
  if (s.waypoints.size() < 2) {
    throw ScenarioError("waypoints", line_of(wps), "at least two waypoints required");
  }
  for (std::size_t i = 1; i < s.waypoints.size(); ++i) {
    if (!(s.waypoints[i].t > s.waypoints[i - 1].t)) {
      throw ScenarioError(indexed("waypoints", i) + ".t_s",
                          line_of(wps[i]["t_s"]),
                          "waypoint times must be strictly increasing");
    }
  }
  s.disturbances = read_list<Disturbance>(r, "disturbances", read_disturbance);
  s.obstacles.rects = read_list<Rect>(r, "obstacles", read_rect);
  r.finish();
  s.validate();
  return s;
}

// Shortest text that parses back to the same double.
std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void emit_vec3(YAML::Emitter& e, const char* key, const Eigen::Vector3d& v) {
  e << YAML::Key << key << YAML::Value << YAML::Flow << YAML::BeginSeq
    << num(v.x()) << num(v.y()) << num(v.z()) << YAML::EndSeq;
}

void emit_num(YAML::Emitter& e, const char* key, double v) {
  e << YAML::Key << key << YAML::Value << num(v);
}

void require(bool ok, const std::string& path, const std::string& msg) {
  if (!ok) throw ScenarioError(path, 0, msg);
}

}  // namespace

void Scenario::validate() const {
  require(!name.empty(), "name", "must not be empty");
  require(duration_s > 0.0, "duration_s", "must be positive");
  require(physics_dt_s > 0.0 && physics_dt_s <= 0.01, "sim.physics_dt_s",
          "must lie in (0, 0.01]");
  require(outer_rate_hz > 0.0, "sim.outer_rate_hz", "must be positive");
  require(inner_rate_hz >= outer_rate_hz, "sim.inner_rate_hz",
          "must be at least the outer rate");
  require(1.0 / inner_rate_hz >= physics_dt_s - 1e-15, "sim.inner_rate_hz",
          "controller period shorter than the physics step");
  require(divergence_bound_m > 0.0, "sim.divergence_bound_m", "must be positive");
  try {
    params.validate();
  } catch (const DomainError& e) {
    throw ScenarioError("params", 0, e.what());
  }
  try {
    gains.validate();
  } catch (const DomainError& e) {
    throw ScenarioError("gains", 0, e.what());
  }
  require(noise.position_m >= 0.0 && noise.velocity_mps >= 0.0 &&
              noise.attitude_rad >= 0.0 && noise.rate_radps >= 0.0,
          "noise", "standard deviations must be non-negative");
  require(metrics.settle_s >= 0.0, "metrics.settle_s", "must be non-negative");
  require(metrics.window_s > 0.0, "metrics.window_s", "must be positive");
  require(metrics.stride_s > 0.0, "metrics.stride_s", "must be positive");
  require(metrics.histogram_bins > 0, "metrics.histogram_bins", "must be positive");
  require(waypoints.size() >= 2, "waypoints", "at least two waypoints required");
  for (std::size_t i = 0; i < waypoints.size(); ++i) {
    const Waypoint& w = waypoints[i];
    require(w.alpha_command >= 0.0 && w.alpha_command <= kHalfPi,
            indexed("waypoints", i) + ".alpha_rad",
            "joint angle must lie in [0, pi/2]");
    require(i == 0 || w.t > waypoints[i - 1].t, indexed("waypoints", i) + ".t_s",
            "waypoint times must be strictly increasing");
  }
  for (std::size_t i = 0; i < disturbances.size(); ++i) {
    const Disturbance& d = disturbances[i];
    const std::string path = indexed("disturbances", i);
    require(d.direction.norm() > 0.0 || (d.magnitude_n == 0.0 && d.amplitude_n == 0.0),
            path + ".direction", "must be non-zero");
    require(d.duration_s >= 0.0, path + ".duration_s", "must be non-negative");
    require(d.frequency_hz >= 0.0, path + ".frequency_hz", "must be non-negative");
  }
  for (std::size_t i = 0; i < obstacles.rects.size(); ++i) {
    const Rect& r = obstacles.rects[i];
    require(r.x_max > r.x_min && r.y_max > r.y_min, indexed("obstacles", i),
            "obstacle needs max > min on both axes");
  }
  require(!trace_file.empty(), "output.trace_file", "must not be empty");
  require(!metrics_file.empty(), "output.metrics_file", "must not be empty");
}

Scenario parse_scenario_string(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ScenarioError("<root>", e.mark.line + 1, e.msg);
  }
  return parse_node(root);
}

Scenario parse_scenario_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ScenarioError("<file>", 0, "cannot open " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_scenario_string(ss.str());
}

std::string dump_scenario(const Scenario& s) {
  YAML::Emitter e;
  e << YAML::BeginMap;
  e << YAML::Key << "name" << YAML::Value << s.name;
  emit_num(e, "duration_s", s.duration_s);
  e << YAML::Key << "seed" << YAML::Value << std::to_string(s.seed);

  e << YAML::Key << "sim" << YAML::Value << YAML::BeginMap;
  emit_num(e, "physics_dt_s", s.physics_dt_s);
  emit_num(e, "outer_rate_hz", s.outer_rate_hz);
  emit_num(e, "inner_rate_hz", s.inner_rate_hz);
  e << YAML::Key << "adaptation" << YAML::Value << s.adaptation;
  emit_num(e, "divergence_bound_m", s.divergence_bound_m);
  e << YAML::EndMap;

  const ParamSet& p = s.params;
  e << YAML::Key << "params" << YAML::Value << YAML::BeginMap;
  emit_num(e, "mass_kg", p.mass_kg);
  emit_num(e, "arm_length_m", p.arm_length_m);
  emit_num(e, "tilt_delta_rad", p.tilt_delta_rad);
  emit_num(e, "inertia_upper_x_kgm2", p.inertia_upper_x);
  emit_num(e, "inertia_upper_y_kgm2", p.inertia_upper_y);
  emit_num(e, "inertia_lower_x_kgm2", p.inertia_lower_x);
  emit_num(e, "inertia_lower_y_kgm2", p.inertia_lower_y);
  emit_num(e, "moment_coeff_km_m", p.moment_coeff_km);
  emit_num(e, "gravity_mps2", p.gravity_mps2);
  emit_num(e, "width_at_alpha0_m", p.width_at_alpha0_m);
  emit_num(e, "width_at_alpha90_m", p.width_at_alpha90_m);
  emit_num(e, "max_motor_thrust_n", p.max_motor_thrust_n);
  emit_num(e, "motor_time_constant_s", p.motor_time_constant_s);
  emit_num(e, "alpha_rate_limit_radps", p.alpha_rate_limit_radps);
  emit_num(e, "vertical_arm_offset_m", p.vertical_arm_offset_m);
  emit_num(e, "yaw_inertia_factor", p.yaw_inertia_factor);
  emit_num(e, "linear_drag_nspm", p.linear_drag_nspm);
  e << YAML::EndMap;

  const GainSet& g = s.gains;
  e << YAML::Key << "gains" << YAML::Value << YAML::BeginMap;
  emit_vec3(e, "kp_pos", g.kp);
  emit_vec3(e, "kv_pos", g.kv);
  emit_vec3(e, "ki_pos", g.ki);
  emit_vec3(e, "kp_att", g.kp_inner);
  emit_vec3(e, "kv_att", g.kv_inner);
  emit_vec3(e, "ki_att", g.ki_inner);
  emit_num(e, "position_integral_clamp_ms", g.position_integral_clamp);
  emit_num(e, "attitude_integral_clamp_rads", g.attitude_integral_clamp);
  e << YAML::EndMap;

  e << YAML::Key << "noise" << YAML::Value << YAML::BeginMap;
  emit_num(e, "position_m", s.noise.position_m);
  emit_num(e, "velocity_mps", s.noise.velocity_mps);
  emit_num(e, "attitude_rad", s.noise.attitude_rad);
  emit_num(e, "rate_radps", s.noise.rate_radps);
  e << YAML::EndMap;

  e << YAML::Key << "metrics" << YAML::Value << YAML::BeginMap;
  emit_num(e, "settle_s", s.metrics.settle_s);
  emit_num(e, "window_s", s.metrics.window_s);
  emit_num(e, "stride_s", s.metrics.stride_s);
  e << YAML::Key << "histogram_bins" << YAML::Value << s.metrics.histogram_bins;
  e << YAML::EndMap;

  e << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "trace_file" << YAML::Value << s.trace_file;
  e << YAML::Key << "metrics_file" << YAML::Value << s.metrics_file;
  e << YAML::EndMap;

  e << YAML::Key << "waypoints" << YAML::Value << YAML::BeginSeq;
  for (const Waypoint& w : s.waypoints) {
    e << YAML::Flow << YAML::BeginMap;
    emit_num(e, "t_s", w.t);
    emit_vec3(e, "position_m", w.position);
    emit_num(e, "yaw_rad", w.yaw);
    emit_num(e, "alpha_rad", w.alpha_command);
    if (w.velocity) emit_vec3(e, "velocity_mps", *w.velocity);
    if (w.acceleration) emit_vec3(e, "acceleration_mps2", *w.acceleration);
    e << YAML::EndMap;
  }
  e << YAML::EndSeq;

  e << YAML::Key << "disturbances" << YAML::Value << YAML::BeginSeq;
  for (const Disturbance& d : s.disturbances) {
    e << YAML::BeginMap;
    e << YAML::Key << "kind" << YAML::Value << kind_name(d.kind);
    emit_vec3(e, "direction", d.direction);
    emit_num(e, "magnitude_n", d.magnitude_n);
    emit_num(e, "amplitude_n", d.amplitude_n);
    emit_num(e, "frequency_hz", d.frequency_hz);
    emit_num(e, "sweep_rad", d.sweep_rad);
    emit_num(e, "start_s", d.start_s);
    emit_num(e, "duration_s", d.duration_s);
    emit_vec3(e, "torque_nm", d.torque_nm);
    e << YAML::EndMap;
  }
  e << YAML::EndSeq;

  e << YAML::Key << "obstacles" << YAML::Value << YAML::BeginSeq;
  for (const Rect& r : s.obstacles.rects) {
    e << YAML::Flow << YAML::BeginMap;
    emit_num(e, "x_min_m", r.x_min);
    emit_num(e, "x_max_m", r.x_max);
    emit_num(e, "y_min_m", r.y_min);
    emit_num(e, "y_max_m", r.y_max);
    e << YAML::EndMap;
  }
  e << YAML::EndSeq;
  e << YAML::EndMap;
  return std::string(e.c_str()) + "\n";
}

std::string scenario_directory() { return FOLDQUAD_SCENARIO_DIR; }

Scenario resolve_scenario(const std::string& name_or_path) {
  namespace fs = std::filesystem;
  if (fs::is_regular_file(name_or_path)) return parse_scenario_file(name_or_path);
  const fs::path shipped = fs::path(scenario_directory()) / (name_or_path + ".yaml");
  if (fs::is_regular_file(shipped)) return parse_scenario_file(shipped.string());
  return builtin_scenario(name_or_path);
}

}  // namespace foldquad
