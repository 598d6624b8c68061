// Acceptance checks with pinned tolerances. Prints one PASS/FAIL line per
// criterion and exits nonzero when any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "foldquad/allocation.hpp"
#include "foldquad/controller.hpp"
#include "foldquad/fourbar.hpp"
#include "foldquad/gap.hpp"
#include "foldquad/metrics.hpp"
#include "foldquad/morphology.hpp"
#include "foldquad/rotation.hpp"
#include "foldquad/run.hpp"
#include "foldquad/simulator.hpp"
#include "foldquad/trajectory.hpp"

using namespace foldquad;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [fail]");
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// 1. Four-bar synthesis reproduces b = 35.69 mm and d = 42.48 mm.
Outcome fourbar_design() {
  Outcome o;
  const SynthesisSolution s =
      synthesize(24.33, 35.0, deg2rad(160.0), deg2rad(90.0));
  o.check(std::abs(s.design.b - 35.69) <= 0.02, fmt("b=%.3f mm", s.design.b));
  o.check(std::abs(s.design.d - 42.48) <= 0.02, fmt("d=%.3f mm", s.design.d));
  return o;
}

// 2. Tilt angles and thrust efficiencies for divisors 1 and 2.
Outcome tilt_solver() {
  Outcome o;
  const ParamSet p;
  const double d1 = rad2deg(solve_tilt_angle(p, 1.0));
  const double d2 = rad2deg(solve_tilt_angle(p, 2.0));
  o.check(std::abs(d1 - 44.30) <= 0.05, fmt("delta1=%.3f deg", d1));
  o.check(std::abs(d2 - 23.49) <= 0.05, fmt("delta2=%.3f deg", d2));
  const double e1 = 100.0 * thrust_efficiency(deg2rad(d1));
  const double e2 = 100.0 * thrust_efficiency(deg2rad(d2));
  o.check(std::abs(e1 - 71.57) <= 0.1, fmt("eff1=%.2f%%", e1));
  o.check(std::abs(e2 - 91.72) <= 0.1, fmt("eff2=%.2f%%", e2));
  return o;
}

// 3. Shape of the gain-adaptation curves.
Outcome adaptation_curves() {
  Outcome o;
  const ParamSet p;
  const Eigen::Vector3d g0 = adaptation_gains(p, 0.0);
  o.check(g0.x() == 1.0 && g0.y() == 1.0, "g(0)=1");
  const double g_end = adaptation_gains(p, kHalfPi).x();
  o.check(g_end >= 1.6 && g_end <= 2.4, fmt("g_roll(pi/2)=%.3f", g_end));
  double roll_min = 1e9, pitch_lo = 1e9, pitch_hi = -1e9;
  for (const GainRatioRow& r : gain_ratio_curves(p, alpha_grid(1001))) {
    if (r.alpha >= 0.6 && r.alpha <= 1.0) roll_min = std::min(roll_min, r.roll);
    pitch_lo = std::min(pitch_lo, r.pitch);
    pitch_hi = std::max(pitch_hi, r.pitch);
  }
  o.check(roll_min >= 0.65 && roll_min <= 0.85,
          fmt("min g_roll[0.6,1.0]=%.3f", roll_min));
  o.check(pitch_lo >= 0.8 && pitch_hi <= 1.2,
          fmt("g_pitch in [%.3f, ", pitch_lo) + fmt("%.3f]", pitch_hi));
  return o;
}

// 4. Allocation rank with and without motor tilt.
Outcome controllability() {
  Outcome o;
  ParamSet p;
  double sigma_min = 1e9;
  for (double a : alpha_grid(50)) {
    sigma_min = std::min(sigma_min, build_allocation(p, a).singular_values[3]);
  }
  o.check(sigma_min > 1e-9, fmt("min sigma4=%.4g", sigma_min));
  p.tilt_delta_rad = 0.0;
  const int rank = build_allocation(p, kHalfPi).rank;
  o.check(rank == 3, "rank(delta=0, pi/2)=" + std::to_string(rank));
  return o;
}

// 5. Hover accuracy, noiseless and with mocap-like position noise.
Outcome hover() {
  Outcome o;
  std::vector<Scenario> runs;
  for (const char* name : {"hover_alpha0", "hover_alpha90"}) {
    runs.push_back(builtin_scenario(name));
    Scenario noisy = builtin_scenario(name);
    noisy.noise.position_m = 0.03;
    noisy.seed = 2024;
    runs.push_back(noisy);
  }
  const std::vector<SimulationResult> res = run_batch(runs);
  double prob[2] = {0.0, 0.0};
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const bool noisy = i % 2 == 1;
    const std::string label = runs[i].name + (noisy ? "+noise" : "");
    if (res[i].diverged) {
      o.check(false, label + " diverged");
      continue;
    }
    const MetricsReport m = compute_metrics(res[i].trace, runs[i]);
    if (noisy) {
      prob[i / 2] = m.probability_within(0.1);
      o.check(prob[i / 2] >= 0.8, label + fmt(" P(<=0.1)=%.3f", prob[i / 2]));
    } else {
      o.check(m.xy_rmse_m < 0.02, label + fmt(" rmse=%.2e m", m.xy_rmse_m));
    }
  }
  const double diff = std::abs(prob[0] - prob[1]);
  o.check(diff < 0.15, fmt("|dP|=%.3f", diff));
  return o;
}

// 6. Trajectory tracking and in-flight morphing.
Outcome tracking() {
  Outcome o;
  const std::vector<std::string> names = {
      "fig8_alpha0",  "fig8_alpha45",   "fig8_alpha90", "diamond_alpha0",
      "diamond_alpha1", "diamond_alpha90", "morph_hover"};
  std::vector<Scenario> runs;
  for (const auto& n : names) runs.push_back(builtin_scenario(n));
  const std::vector<SimulationResult> res = run_batch(runs);
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (res[i].diverged) {
      o.check(false, names[i] + " diverged");
      continue;
    }
    const MetricsReport m = compute_metrics(res[i].trace, runs[i]);
    if (names[i] == "morph_hover") {
      o.check(m.max_position_error_m < 0.3,
              names[i] + fmt(" max=%.4f m", m.max_position_error_m));
    } else {
      o.check(m.mean_position_error_m < 0.15,
              names[i] + fmt(" mean=%.4f m", m.mean_position_error_m));
    }
  }
  return o;
}

// 7. Narrow-gap passability and the closed-loop course.
Outcome narrow_gap() {
  Outcome o;
  const Scenario sc = builtin_scenario("narrow_gap");
  const ParamSet& p = sc.params;
  const auto standard = gap_passability(sc.obstacles, p, 0.0);
  const auto folded = gap_passability(sc.obstacles, p, kHalfPi);
  const GapPassability* g330 = nullptr;
  const GapPassability* f330 = nullptr;
  for (std::size_t i = 0; i < standard.size(); ++i) {
    if (std::abs(standard[i].gap.width - 0.330) < 1e-9) {
      g330 = &standard[i];
      f330 = &folded[i];
    }
  }
  if (g330 == nullptr) {
    o.check(false, "330 mm gap not found");
    return o;
  }
  o.check(g330->blocked, fmt("alpha=0 blocked (width %.0f mm)",
                             1000.0 * g330->vehicle_extent));
  o.check(!f330->blocked, fmt("alpha=pi/2 passable (width %.0f mm)",
                              1000.0 * f330->vehicle_extent));
  o.check(std::abs(f330->clearance - 0.096) <= 0.001,
          fmt("clearance=%.1f mm", 1000.0 * f330->clearance));
  const SimulationResult r = run_scenario(sc);
  if (r.diverged) {
    o.check(false, "course diverged");
    return o;
  }
  const MetricsReport m = compute_metrics(r.trace, sc);
  o.check(m.collision_samples == 0,
          "collisions=" + std::to_string(m.collision_samples) +
              fmt(" min clearance %.1f mm", 1000.0 * m.min_gap_clearance_m));
  return o;
}

// 8. Quintic boundary, derivative and symmetry properties.
Outcome quintic_properties() {
  Outcome o;
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> u(-2.0, 2.0), dur(0.5, 5.0);
  double boundary = 0.0, fd = 0.0, sym = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const double p0 = u(rng), v0 = u(rng), a0 = u(rng);
    const double p1 = u(rng), v1 = u(rng), a1 = u(rng), t = dur(rng);
    const Quintic q = solve_quintic(p0, v0, a0, p1, v1, a1, t);
    const Eigen::Vector3d s0 = eval_quintic(q, 0.0);
    const Eigen::Vector3d s1 = eval_quintic(q, t);
    boundary = std::max({boundary, (s0 - Eigen::Vector3d(p0, v0, a0)).cwiseAbs().maxCoeff(),
                         (s1 - Eigen::Vector3d(p1, v1, a1)).cwiseAbs().maxCoeff()});
    const double h = 1e-5;
    for (int k = 1; k < 10; ++k) {
      const double s = t * k / 10.0;
      const Eigen::Vector3d m = eval_quintic(q, s - h);
      const Eigen::Vector3d c = eval_quintic(q, s);
      const Eigen::Vector3d pl = eval_quintic(q, s + h);
      const double dv = (pl[0] - m[0]) / (2 * h);
      const double da = (pl[1] - m[1]) / (2 * h);
      fd = std::max({fd, std::abs(dv - c[1]) / std::max(1.0, std::abs(c[1])),
                     std::abs(da - c[2]) / std::max(1.0, std::abs(c[2]))});
    }
    const Quintic rest = solve_quintic(p0, 0, 0, p1, 0, 0, t);
    sym = std::max(sym, std::abs(eval_quintic(rest, 0.5 * t)[0] - 0.5 * (p0 + p1)));
  }
  o.check(boundary <= 1e-9, fmt("boundary=%.1e", boundary));
  o.check(fd <= 1e-5, fmt("fd rel=%.1e", fd));
  o.check(sym <= 1e-9, fmt("midpoint=%.1e", sym));
  return o;
}

// 9. Simulator oracles and run determinism.
Outcome simulator_oracles() {
  Outcome o;
  const ParamSet p;
  World w;
  const Eigen::Vector3d p0(1, -2, -3), v0(0.5, 0.25, -4.0);
  w.rigid.p = p0;
  w.rigid.v = v0;
  for (int k = 0; k < 1000; ++k) w = step(p, w, ActuatorCommand{}, {}, 1e-3);
  const Eigen::Vector3d expect =
      p0 + v0 + 0.5 * Eigen::Vector3d(0, 0, p.gravity_mps2);
  const double ballistic = (w.rigid.p - expect).cwiseAbs().maxCoeff();
  o.check(ballistic <= 1e-8, fmt("ballistic=%.1e m", ballistic));

  World s;
  s.morph.alpha = s.morph.commanded_alpha = 0.6;
  s.rigid.omega = Eigen::Vector3d(1.0, 0.4, -0.7);
  const Eigen::Vector3d j = body_inertia(p, 0.6);
  const double h0 = j.cwiseProduct(s.rigid.omega).norm();
  double drift = 0.0;
  for (int k = 0; k < 10000; ++k) {
    s = step(p, s, {Eigen::Vector4d::Zero(), 0.6}, {}, 1e-3);
    drift = std::max(drift, std::abs(j.cwiseProduct(s.rigid.omega).norm() - h0));
  }
  o.check(drift <= 1e-6, fmt("|L| drift=%.1e", drift));

  Scenario sc = builtin_scenario("fig8_alpha90");
  sc.duration_s = 5.0;
  sc.noise.position_m = 0.01;
  sc.noise.rate_radps = 0.01;
  sc.seed = 9;
  const std::vector<SimulationResult> twice = run_batch({sc, sc});
  std::ostringstream a, b;
  write_trace_csv(a, twice[0].trace);
  write_trace_csv(b, twice[1].trace);
  o.check(a.str() == b.str() && !a.str().empty(), "traces byte-identical");
  return o;
}

// 10. Adaptation lowers roll error after a roll impulse when folded.
Outcome adaptation_ablation() {
  Outcome o;
  Scenario on = builtin_scenario("roll_impulse_alpha90");
  Scenario off = on;
  off.adaptation = false;
  const std::vector<SimulationResult> res = run_batch({on, off});
  auto roll_rmse = [](const Trace& tr) {
    double sum = 0.0;
    for (const TraceRow& r : tr) sum += r.att_err.x() * r.att_err.x();
    return std::sqrt(sum / static_cast<double>(tr.size()));
  };
  if (res[0].diverged || res[1].diverged) {
    o.check(false, "diverged");
    return o;
  }
  const double e_on = roll_rmse(res[0].trace);
  const double e_off = roll_rmse(res[1].trace);
  o.check(e_on < e_off, fmt("rmse on=%.4e", e_on) + fmt(" off=%.4e rad", e_off));
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"fourbar_design", fourbar_design},
      {"tilt_solver", tilt_solver},
      {"adaptation_curves", adaptation_curves},
      {"controllability", controllability},
      {"hover", hover},
      {"tracking", tracking},
      {"narrow_gap", narrow_gap},
      {"quintic_properties", quintic_properties},
      {"simulator_oracles", simulator_oracles},
      {"adaptation_ablation", adaptation_ablation},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
