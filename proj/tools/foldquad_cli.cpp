// Command-line front end. Reports go to the output root given by --out or the
// FOLDQUAD_OUT_DIR environment variable (default ./foldquad_out).

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "foldquad/allocation.hpp"
#include "foldquad/controller.hpp"
#include "foldquad/errors.hpp"
#include "foldquad/fourbar.hpp"
#include "foldquad/gap.hpp"
#include "foldquad/metrics.hpp"
#include "foldquad/morphology.hpp"
#include "foldquad/run.hpp"
#include "foldquad/scenario.hpp"
#include "foldquad/trace.hpp"
#include "foldquad/trajectory.hpp"

namespace fs = std::filesystem;
using namespace foldquad;

namespace {

fs::path output_root(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("FOLDQUAD_OUT_DIR"); env && *env) return env;
  return "foldquad_out";
}

fs::path ensure_dir(const fs::path& dir) {
  fs::create_directories(dir);
  return dir;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << text;
}

std::string fmt(double v, int digits = 9) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

int cmd_simulate(const std::vector<std::string>& names, bool batch,
                 std::optional<std::uint64_t> seed, const fs::path& root) {
  std::vector<Scenario> scenarios;
  for (const auto& n : names) {
    Scenario s = resolve_scenario(n);
    if (seed) s.seed = *seed;
    scenarios.push_back(std::move(s));
  }
  const std::vector<SimulationResult> results =
      batch ? run_batch(scenarios) : run_batch_serial(scenarios);

  int status = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const Scenario& sc = scenarios[i];
    const SimulationResult& r = results[i];
    const fs::path dir = ensure_dir(root / sc.name);
    const fs::path trace_path = dir / sc.trace_file;
    write_trace_csv(trace_path.string(), r.trace);
    write_text(dir / "scenario.yaml", dump_scenario(sc));
    // Metrics come from the file as written so a later `metrics` run on it
    // reproduces them exactly.
    const MetricsReport m =
        compute_metrics(read_trace_csv(trace_path.string()), sc);
    write_text(dir / sc.metrics_file, metrics_to_json(m, sc.name));

    std::cout << sc.name << ": " << (r.diverged ? "DIVERGED" : "ok")
              << " steps=" << r.trace.size() << " xy_rmse_m=" << fmt(m.xy_rmse_m, 4)
              << " mean_err_m=" << fmt(m.mean_position_error_m, 4)
              << " max_err_m=" << fmt(m.max_position_error_m, 4);
    if (m.has_obstacles) {
      std::cout << " min_clearance_m=" << fmt(m.min_gap_clearance_m, 4)
                << " collisions=" << m.collision_samples;
    }
    std::cout << " -> " << dir.string() << "\n";
    if (r.diverged) {
      std::cerr << sc.name << ": diverged at t=" << fmt(r.diverged_at_s, 6)
                << " s: " << r.message << "\n";
      status = 2;
    }
  }
  return status;
}

int cmd_synth_fourbar(double a, double c, double in_deg, double out_deg,
                      int table, const fs::path& root) {
  const SynthesisSolution sol =
      synthesize(a, c, deg2rad(in_deg), deg2rad(out_deg),
                 default_synthesis_guess(a));
  const FourBarDesign& d = sol.design;
  std::cout << "a_mm=" << fmt(d.a, 6) << "\n"
            << "b_mm=" << fmt(d.b, 6) << "\n"
            << "c_mm=" << fmt(d.c, 6) << "\n"
            << "d_mm=" << fmt(d.d, 6) << "\n"
            << "epsilon_deg=" << fmt(rad2deg(sol.epsilon), 6) << "\n"
            << "gamma_deg=" << fmt(rad2deg(sol.gamma), 6) << "\n"
            << "residual_norm=" << fmt(sol.residual_norm, 3) << "\n"
            << "iterations=" << sol.iterations << "\n";
  if (table > 1) {
    std::string csv = "servo_deg,alpha_rad,alpha_deg\n";
    for (const auto& row : servo_alpha_table(d, table)) {
      csv += fmt(rad2deg(row.servo_angle)) + "," + fmt(row.alpha) + "," +
             fmt(rad2deg(row.alpha)) + "\n";
    }
    const fs::path path = ensure_dir(root) / "fourbar_table.csv";
    write_text(path, csv);
    std::cout << "table=" << path.string() << "\n";
  }
  return 0;
}

int cmd_solve_tilt(double divisor) {
  const ParamSet p;
  const double delta = solve_tilt_angle(p, divisor);
  std::cout << "tilt_delta_deg=" << fmt(rad2deg(delta), 6) << "\n"
            << "tilt_delta_rad=" << fmt(delta) << "\n"
            << "thrust_efficiency=" << fmt(thrust_efficiency(delta), 6) << "\n"
            << "residual=" << fmt(tilt_design_residual(p, delta, divisor), 3)
            << "\n";
  char line[64];
  std::snprintf(line, sizeof(line), "%.2f deg", rad2deg(delta));
  std::cout << line << "\n";
  return 0;
}

int cmd_gains(int points, const fs::path& root) {
  const ParamSet p;
  std::string csv = "alpha_rad,g_roll,g_pitch\n";
  for (const auto& row : gain_ratio_curves(p, alpha_grid(points))) {
    csv += fmt(row.alpha) + "," + fmt(row.roll) + "," + fmt(row.pitch) + "\n";
  }
  const fs::path path = ensure_dir(root) / "gain_sweep.csv";
  write_text(path, csv);
  std::cout << csv;
  return 0;
}

int cmd_mixer(double alpha, std::optional<double> delta_deg) {
  ParamSet p;
  if (delta_deg) p.tilt_delta_rad = deg2rad(*delta_deg);
  const AllocationMatrix m = build_allocation(p, alpha);
  const char* rows[] = {"thrust", "tau_x", "tau_y", "tau_z"};
  std::cout << "alpha_rad=" << fmt(alpha) << "\n";
  for (int i = 0; i < 4; ++i) {
    std::cout << rows[i];
    for (int j = 0; j < 4; ++j) std::cout << "," << fmt(m.b(i, j));
    std::cout << "\n";
  }
  std::cout << "singular_values";
  for (int i = 0; i < 4; ++i) std::cout << "," << fmt(m.singular_values[i]);
  std::cout << "\nrank=" << m.rank << "\ncondition_number="
            << fmt(m.condition_number) << "\n";
  return 0;
}

int cmd_plan(const std::string& name, double rate_hz, const fs::path& root) {
  const Scenario sc = resolve_scenario(name);
  const TrajectoryPlan tp = plan(sc.waypoints, sc.params.alpha_rate_limit_radps);
  std::string csv =
      "t_s,x_m,y_m,z_m,vx_mps,vy_mps,vz_mps,ax_mps2,ay_mps2,az_mps2,yaw_rad,"
      "alpha_cmd_rad\n";
  const long n = std::lround(sc.duration_s * rate_hz);
  for (long k = 0; k <= n; ++k) {
    const double t = k / rate_hz;
    const TrajectorySample s = sample(tp, t);
    csv += fmt(t);
    for (const auto* v : {&s.p, &s.v, &s.a}) {
      for (int i = 0; i < 3; ++i) csv += "," + fmt((*v)[i]);
    }
    csv += "," + fmt(s.yaw) + "," + fmt(s.alpha_cmd) + "\n";
  }
  const fs::path path = ensure_dir(root / sc.name) / "plan.csv";
  write_text(path, csv);
  std::cout << "plan=" << path.string() << " samples=" << n + 1 << "\n";
  return 0;
}

int cmd_check_gap(const std::string& name, const std::string& trace_path,
                  std::optional<double> alpha, double yaw) {
  const Scenario sc = resolve_scenario(name);
  if (sc.obstacles.empty()) {
    std::cerr << "scenario " << sc.name << " has no obstacles\n";
    return 1;
  }
  if (alpha || trace_path.empty()) {
    const double a = alpha.value_or(0.0);
    std::cout << "alpha_rad=" << fmt(a) << " vehicle_width_m="
              << fmt(body_width(sc.params, a), 6) << "\n";
    bool any_blocked = false;
    for (const GapPassability& g : gap_passability(sc.obstacles, sc.params, a, yaw)) {
      any_blocked |= g.blocked;
      std::cout << "gap obstacles=" << g.gap.first << "," << g.gap.second
                << " width_m=" << fmt(g.gap.width, 6)
                << " vehicle_extent_m=" << fmt(g.vehicle_extent, 6)
                << " clearance_m=" << fmt(g.clearance, 6) << " "
                << (g.blocked ? "blocked" : "passable") << "\n";
    }
    std::cout << "status=" << (any_blocked ? "blocked" : "passable") << "\n";
  }
  if (!trace_path.empty()) {
    const Trace trace = read_trace_csv(trace_path);
    std::vector<PoseSample> path;
    for (const TraceRow& r : trace) {
      path.push_back({r.t, r.p.x(), r.p.y(), r.rpy.z(), r.alpha});
    }
    const ClearanceReport rep = check_gap_clearance(sc.obstacles, path, sc.params);
    std::cout << "min_clearance_m=" << fmt(rep.min_clearance, 6)
              << " at_t_s=" << fmt(rep.time_of_min, 6)
              << " violating_samples=" << rep.violating_samples << "\n";
    for (const auto& [t0, t1] : rep.violations) {
      std::cout << "violation t_s=[" << fmt(t0, 6) << ", " << fmt(t1, 6) << "]\n";
    }
    std::cout << "status=" << (rep.collided() ? "collision" : "clear") << "\n";
  }
  return 0;
}

int cmd_metrics(const std::string& trace_path, const std::string& scenario_name,
                const fs::path& root) {
  Scenario sc;
  if (!scenario_name.empty()) {
    sc = resolve_scenario(scenario_name);
  } else {
    const fs::path beside = fs::path(trace_path).parent_path() / "scenario.yaml";
    if (!fs::is_regular_file(beside)) {
      throw std::runtime_error("no scenario.yaml next to the trace; pass --scenario");
    }
    sc = parse_scenario_file(beside.string());
  }
  const std::string json =
      metrics_to_json(compute_metrics(read_trace_csv(trace_path), sc), sc.name);
  const fs::path out = ensure_dir(root / sc.name) / "metrics_recomputed.json";
  write_text(out, json);
  std::cout << json;
  return 0;
}

int cmd_scenarios(const std::string& dump, const std::string& export_dir) {
  if (!dump.empty()) {
    std::cout << dump_scenario(resolve_scenario(dump));
    return 0;
  }
  if (!export_dir.empty()) {
    ensure_dir(export_dir);
    for (const auto& n : builtin_scenario_names()) {
      write_text(fs::path(export_dir) / (n + ".yaml"),
                 dump_scenario(builtin_scenario(n)));
    }
    return 0;
  }
  for (const auto& n : builtin_scenario_names()) std::cout << n << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Folding quadrotor design, control and simulation tools"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_flag;
  app.add_option("--out", out_flag, "Output root (overrides FOLDQUAD_OUT_DIR)");

  auto* sim = app.add_subcommand("simulate", "Run scenarios closed loop");
  std::vector<std::string> sim_names;
  bool batch = false;
  std::optional<std::uint64_t> seed;
  sim->add_option("scenario", sim_names, "Scenario names or files")->required();
  sim->add_flag("--batch", batch, "Run scenarios in parallel");
  sim->add_option("--seed", seed, "Override the scenario seed");

  auto* fb = app.add_subcommand("synth-fourbar", "Synthesize the joint linkage");
  double fb_a = 24.33, fb_c = 35.0, fb_in = 160.0, fb_out = 90.0;
  int fb_table = 0;
  fb->add_option("--a", fb_a, "Servo horn length [mm]");
  fb->add_option("--c", fb_c, "Arm attachment radius [mm]");
  fb->add_option("--input-sweep-deg", fb_in, "Servo sweep [deg]");
  fb->add_option("--output-sweep-deg", fb_out, "Joint sweep [deg]");
  fb->add_option("--table", fb_table, "Write an N-row servo->alpha table");

  auto* tilt = app.add_subcommand("solve-tilt", "Solve the motor tilt angle");
  double divisor = 1.0;
  tilt->add_option("--divisor", divisor, "Roll agility divisor (>= 1)")->required();

  auto* gains = app.add_subcommand("gains", "Gain adaptation ratios");
  bool sweep = false;
  int points = 91;
  gains->add_flag("--sweep", sweep, "Emit the ratio table over alpha")->required();
  gains->add_option("--points", points, "Grid points over [0, pi/2]");

  auto* mixer = app.add_subcommand("mixer", "Allocation matrix at one joint angle");
  double mix_alpha = 0.0;
  std::optional<double> mix_delta;
  mixer->add_option("--alpha", mix_alpha, "Joint angle [rad]")->required();
  mixer->add_option("--delta-deg", mix_delta, "Override the motor tilt [deg]");

  auto* pl = app.add_subcommand("plan", "Sample a scenario's trajectory");
  std::string plan_name;
  bool dump = false;
  double plan_rate = 100.0;
  pl->add_option("scenario", plan_name, "Scenario name or file")->required();
  pl->add_flag("--dump", dump, "Write the sampled trajectory CSV")->required();
  pl->add_option("--rate-hz", plan_rate, "Sample rate");

  auto* gap = app.add_subcommand("check-gap", "Configuration-space gap check");
  std::string gap_scenario, gap_trace;
  std::optional<double> gap_alpha;
  double gap_yaw = 0.0;
  gap->add_option("scenario", gap_scenario, "Scenario with obstacles")->required();
  gap->add_option("trace", gap_trace, "Trace CSV to check");
  gap->add_option("--alpha", gap_alpha, "Static check at this joint angle [rad]");
  gap->add_option("--yaw", gap_yaw, "Yaw for the static check [rad]");

  auto* met = app.add_subcommand("metrics", "Recompute metrics from a trace");
  std::string met_trace, met_scenario;
  met->add_option("trace", met_trace, "Trace CSV")->required();
  met->add_option("--scenario", met_scenario,
                  "Scenario (default: scenario.yaml next to the trace)");

  auto* scn = app.add_subcommand("scenarios", "List or dump scenarios");
  std::string scn_dump, scn_export;
  scn->add_option("--dump", scn_dump, "Print the canonical YAML of a scenario");
  scn->add_option("--export", scn_export, "Write every built-in to a directory");

  CLI11_PARSE(app, argc, argv);

  try {
    const fs::path root = output_root(out_flag);
    if (sim->parsed()) return cmd_simulate(sim_names, batch, seed, root);
    if (fb->parsed()) return cmd_synth_fourbar(fb_a, fb_c, fb_in, fb_out, fb_table, root);
    if (tilt->parsed()) return cmd_solve_tilt(divisor);
    if (gains->parsed()) return cmd_gains(points, root);
    if (mixer->parsed()) return cmd_mixer(mix_alpha, mix_delta);
    if (pl->parsed()) return cmd_plan(plan_name, plan_rate, root);
    if (gap->parsed()) return cmd_check_gap(gap_scenario, gap_trace, gap_alpha, gap_yaw);
    if (met->parsed()) return cmd_metrics(met_trace, met_scenario, root);
    if (scn->parsed()) return cmd_scenarios(scn_dump, scn_export);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
