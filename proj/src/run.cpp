#include "foldquad/run.hpp"

#include <cmath>
#include <exception>
#include <random>

#include "foldquad/allocation.hpp"
#include "foldquad/controller.hpp"
#include "foldquad/errors.hpp"
#include "foldquad/rotation.hpp"
#include "foldquad/simulator.hpp"
#include "foldquad/trajectory.hpp"

namespace foldquad {
namespace {

AllocationResult allocate_or_fallback(const AllocationMatrix& b, double thrust,
                                      const Eigen::Vector3d& tau,
                                      bool& degraded) {
  try {
    degraded = false;
    return allocate(b, thrust, tau);
  } catch (const AllocationError&) {
    degraded = true;
    return allocate_least_squares(b, thrust, tau);
  }
}

class SensorNoise {
 public:
  SensorNoise(const NoiseConfig& cfg, std::uint64_t seed)
      : cfg_(cfg), rng_(seed) {}

  SensorReading read(const World& w) {
    SensorReading s;
    s.position = w.rigid.p + draw(cfg_.position_m);
    s.velocity = w.rigid.v + draw(cfg_.velocity_mps);
    const Eigen::Matrix3d r = w.rigid.r * exp_so3(draw(cfg_.attitude_rad));
    const Eigen::Vector3d omega = w.rigid.omega + draw(cfg_.rate_radps);
    const BodyAttitude imu = body_to_imu(r, omega, w.morph.alpha);
    s.r_imu = imu.r;
    s.omega_imu = imu.omega;
    s.alpha = w.morph.alpha;
    return s;
  }

 private:
  // Draws nothing when sigma is zero so noiseless runs do not consume the
  // generator.
  Eigen::Vector3d draw(double sigma) {
    if (!(sigma > 0.0)) return Eigen::Vector3d::Zero();
    std::normal_distribution<double> n(0.0, sigma);
    const double x = n(rng_);
    const double y = n(rng_);
    const double z = n(rng_);
    return {x, y, z};
  }

  NoiseConfig cfg_;
  std::mt19937_64 rng_;
};

}  // namespace

SimulationResult run_scenario(const Scenario& sc) {
  sc.validate();
  const ParamSet& p = sc.params;
  const TrajectoryPlan traj = plan(sc.waypoints, p.alpha_rate_limit_radps);

  SimulationResult result;
  result.scenario = sc.name;

  World world;
  const Waypoint& first = sc.waypoints.front();
  world.rigid.p = first.position;
  world.rigid.r = rot_z(first.yaw);
  world.morph.alpha = first.alpha_command;
  world.morph.commanded_alpha = first.alpha_command;
  {
    bool degraded = false;
    const AllocationResult hover = allocate_or_fallback(
        build_allocation(p, world.morph.alpha), p.hover_thrust(),
        Eigen::Vector3d::Zero(), degraded);
    world.motors.actual = hover.thrusts;
    world.motors.commanded = hover.thrusts;
  }

  CascadedController ctrl(p, sc.gains, sc.outer_rate_hz, sc.inner_rate_hz,
                          sc.adaptation);
  SensorNoise noise(sc.noise, sc.seed);

  const double dt = sc.physics_dt_s;
  const long steps = std::lround(sc.duration_s / dt);
  result.trace.reserve(static_cast<std::size_t>(steps) + 1);

  for (long k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    world.t = t;
    const TrajectorySample ref = sample(traj, t);
    const PositionTarget target{ref.p, ref.v, ref.a, ref.yaw};

    ControlOutput out;
    try {
      out = ctrl.update(t, target, noise.read(world));
    } catch (const std::runtime_error& e) {
      result.diverged = true;
      result.diverged_at_s = t;
      result.message = e.what();
      break;
    }

    bool degraded = false;
    const AllocationResult alloc = allocate_or_fallback(
        build_allocation(p, world.morph.alpha), out.thrust, out.torque,
        degraded);

    TraceRow row;
    row.t = t;
    row.p = world.rigid.p;
    row.v = world.rigid.v;
    row.q = quaternion_wxyz(world.rigid.r);
    row.rpy = euler_rpy(world.rigid.r);
    row.omega = world.rigid.omega;
    row.alpha = world.morph.alpha;
    row.alpha_cmd = ref.alpha_cmd;
    row.thrust = world.motors.actual;
    row.p_des = ref.p;
    row.v_des = ref.v;
    row.yaw_des = ref.yaw;
    row.thrust_cmd = out.thrust;
    row.tau_cmd = out.torque;
    row.att_err = out.attitude_error;
    row.saturated = alloc.saturated ? 1 : 0;
    row.degraded = degraded ? 1 : 0;
    result.trace.push_back(row);
    result.saturated_steps += row.saturated;
    result.degraded_steps += row.degraded;

    if (k == steps) break;
    world = step(p, world, {alloc.thrusts, ref.alpha_cmd}, sc.disturbances, dt);

    const double err = (world.rigid.p - ref.p).norm();
    if (!world.rigid.all_finite() || !(err < sc.divergence_bound_m)) {
      result.diverged = true;
      result.diverged_at_s = world.t;
      result.message = world.rigid.all_finite()
                           ? "position error exceeded the divergence bound"
                           : "non-finite state";
      break;
    }
  }
  return result;
}

std::vector<SimulationResult> run_batch(const std::vector<Scenario>& scenarios) {
  std::vector<SimulationResult> results(scenarios.size());
  std::vector<std::exception_ptr> errors(scenarios.size());
  const long n = static_cast<long>(scenarios.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    try {
      results[i] = run_scenario(scenarios[i]);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

std::vector<SimulationResult> run_batch_serial(
    const std::vector<Scenario>& scenarios) {
  std::vector<SimulationResult> results;
  results.reserve(scenarios.size());
  for (const Scenario& s : scenarios) results.push_back(run_scenario(s));
  return results;
}

}  // namespace foldquad
