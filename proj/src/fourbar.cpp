#include "foldquad/fourbar.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "foldquad/dogleg.hpp"
#include "foldquad/errors.hpp"
#include "foldquad/morphology.hpp"

namespace foldquad {
namespace {

constexpr double kSynthesisTolerance = 1e-8;
constexpr double kSweepSlack = 1e-9;

struct Triangle {
  double angle_o2;  // epsilon
  double angle_o4;  // gamma
};

// Angles of the triangle O2-O4-P with |O2 P| = chord.
Triangle triangle_angles(double chord, double c, double d) {
  const double cos_o2 = (d * d + chord * chord - c * c) / (2.0 * d * chord);
  const double cos_o4 = (d * d + c * c - chord * chord) / (2.0 * d * c);
  if (std::abs(cos_o2) > 1.0 || std::abs(cos_o4) > 1.0) {
    throw DomainError("four-bar triangle inequality violated");
  }
  return {std::acos(cos_o2), std::acos(cos_o4)};
}

}  // namespace

void FourBarDesign::validate() const {
  if (!(a > 0.0 && b > 0.0 && c > 0.0 && d > 0.0)) {
    throw DomainError("four-bar link lengths must be positive");
  }
  if (!(input_sweep > 0.0 && output_sweep > 0.0)) {
    throw DomainError("four-bar sweeps must be positive");
  }
  if (!(b > a)) throw DomainError("coupler must be longer than the horn");
  triangle_angles(b - a, c, d);
  triangle_angles(a + b, c, d);
}

SynthesisGuess default_synthesis_guess(double a) {
  return {a + 10.0, 1.5 * a, deg2rad(60.0), deg2rad(20.0)};
}

std::vector<double> synthesis_residuals(double a, double c,
                                        double input_sweep,
                                        double output_sweep, double b,
                                        double d, double epsilon,
                                        double gamma) {
  // Offsets of the stretched pose relative to the folded one: the angle at
  // O2 opens by (pi - input sweep), the angle at O4 by the output sweep.
  const double e2 = epsilon + (kPi - input_sweep);
  const double g2 = gamma + output_sweep;
  return {
      c * std::sin(gamma) - (b - a) * std::sin(epsilon),
      c * std::sin(epsilon + gamma) - d * std::sin(epsilon),
      c * std::sin(g2) - (a + b) * std::sin(e2),
      c * std::sin(e2 + g2) - d * std::sin(e2),
  };
}

SynthesisSolution synthesize(double a, double c, double input_sweep,
                             double output_sweep,
                             std::optional<SynthesisGuess> guess) {
  if (!(a > 0.0) || !(c > 0.0)) {
    throw DomainError("horn length a and attachment radius c must be positive");
  }
  if (!(input_sweep > 0.0 && input_sweep <= kPi) || !(output_sweep > 0.0)) {
    throw DomainError("sweeps must be positive (input sweep <= pi)");
  }
  const SynthesisGuess g = guess.value_or(default_synthesis_guess(a));
  const double oe = kPi - input_sweep;
  const double og = output_sweep;

  auto residual = [&](const Eigen::VectorXd& x) {
    const auto r = synthesis_residuals(a, c, input_sweep, output_sweep, x[0],
                                       x[1], x[2], x[3]);
    return Eigen::Vector4d(r[0], r[1], r[2], r[3]).eval();
  };
  auto jacobian = [&](const Eigen::VectorXd& x) {
    const double b = x[0], d = x[1], e = x[2], gm = x[3];
    const double e2 = e + oe, g2 = gm + og;
    Eigen::Matrix4d j;
    j << -std::sin(e), 0.0, -(b - a) * std::cos(e), c * std::cos(gm),
        0.0, -std::sin(e), c * std::cos(e + gm) - d * std::cos(e),
        c * std::cos(e + gm),  //
        -std::sin(e2), 0.0, -(a + b) * std::cos(e2), c * std::cos(g2),
        0.0, -std::sin(e2), c * std::cos(e2 + g2) - d * std::cos(e2),
        c * std::cos(e2 + g2);
    return Eigen::MatrixXd(j);
  };

  DoglegOptions opts;
  opts.residual_tolerance = 1e-12;
  opts.initial_radius = 5.0;
  const DoglegResult res = solve_dogleg(
      residual, jacobian, Eigen::Vector4d(g.b, g.d, g.epsilon, g.gamma), opts);

  if (!(res.residual_norm < kSynthesisTolerance)) {
    throw SynthesisError("four-bar synthesis did not converge after " +
                             std::to_string(res.iterations) + " iterations",
                         res.residual_norm);
  }
  SynthesisSolution sol;
  sol.design = {a, res.x[0], c, res.x[1], input_sweep, output_sweep};
  sol.epsilon = res.x[2];
  sol.gamma = res.x[3];
  sol.residual_norm = res.residual_norm;
  sol.iterations = res.iterations;

  const bool degenerate = !(sol.design.b > a) || !(sol.design.d > 0.0) ||
                          !(std::sin(sol.epsilon) > 1e-6) ||
                          !(std::sin(sol.gamma) > 1e-6) ||
                          !(sol.epsilon + oe + sol.gamma + og < kPi);
  if (degenerate) {
    throw SynthesisError("four-bar synthesis converged to a degenerate linkage",
                         res.residual_norm);
  }
  return sol;
}

double forward_alpha(const FourBarDesign& design, double servo_angle) {
  design.validate();
  if (!(servo_angle >= -kSweepSlack &&
        servo_angle <= design.input_sweep + kSweepSlack)) {
    throw DomainError("servo angle outside the input sweep");
  }
  const double theta = std::clamp(servo_angle, 0.0, design.input_sweep);
  const Triangle folded = triangle_angles(design.b - design.a, design.c,
                                          design.d);

  // O2 at the origin, O4 on +x; P above the ground line. The horn points
  // away from P in the folded pose and turns clockwise through the sweep.
  const Eigen::Vector2d o4(design.d, 0.0);
  const double horn_angle = folded.angle_o2 + kPi - theta;
  const Eigen::Vector2d tip = design.a * Eigen::Vector2d(std::cos(horn_angle),
                                                         std::sin(horn_angle));

  // P on circle(tip, b) and circle(O4, c). The folded pose puts P to the left
  // of the directed line tip -> O4; keeping that side is branch continuity.
  const Eigen::Vector2d span = o4 - tip;
  const double dist = span.norm();
  const double b = design.b, c = design.c;
  if (dist > b + c || dist < std::abs(b - c) || dist == 0.0) {
    throw MechanismLockError("four-bar loop cannot close at servo angle " +
                             std::to_string(servo_angle));
  }
  const double along = (b * b - c * c + dist * dist) / (2.0 * dist);
  const double h = std::sqrt(std::max(0.0, b * b - along * along));
  const Eigen::Vector2d unit = span / dist;
  const Eigen::Vector2d normal(-unit.y(), unit.x());
  const Eigen::Vector2d p = tip + along * unit + h * normal;

  const double rocker = std::atan2(p.y(), p.x() - design.d);
  const double alpha = (kPi - folded.angle_o4) - rocker;
  constexpr double kStopSlack = 1e-9;
  if (alpha < -kStopSlack || alpha > design.output_sweep + kStopSlack) {
    throw MechanismLockError("joint angle " + std::to_string(alpha) +
                             " beyond the mechanical stops");
  }
  return std::clamp(alpha, 0.0, design.output_sweep);
}

std::vector<ServoAlphaSample> servo_alpha_table(const FourBarDesign& design,
                                                int samples) {
  if (samples < 2) throw DomainError("table needs at least two samples");
  std::vector<ServoAlphaSample> out;
  out.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    const double s = design.input_sweep * i / (samples - 1);
    out.push_back({s, forward_alpha(design, s)});
  }
  return out;
}

}  // namespace foldquad
