#pragma once

// Synthesis and position analysis of the servo-driven four-bar linkage that
// sets the joint angle. Lengths are in millimetres throughout this module.
//
// Geometry: O2 is the servo axis, O4 the arm pivot, |O2 O4| = d. The horn
// (length a) drives a coupler (b) attached to the upper arm at radius c.
// At alpha = 0 horn and coupler are folded (|O2 P| = b - a); at the end of
// the input sweep they are stretched (|O2 P| = a + b). epsilon and gamma are
// the triangle angles at O2 and O4 in the folded pose.

#include <optional>
#include <vector>

namespace foldquad {

struct FourBarDesign {
  double a = 0.0;  // servo horn
  double b = 0.0;  // coupler
  double c = 0.0;  // arm attachment radius
  double d = 0.0;  // ground link
  double input_sweep = 0.0;
  double output_sweep = 0.0;

  /// Link lengths positive and the folded/stretched triangles exist.
  void validate() const;
};

struct SynthesisSolution {
  FourBarDesign design;
  double epsilon = 0.0;
  double gamma = 0.0;
  double residual_norm = 0.0;
  int iterations = 0;
};

struct SynthesisGuess {
  double b;
  double d;
  double epsilon;
  double gamma;
};

/// Default starting point: b = a + 10, d = 1.5 a, epsilon = 60 deg,
/// gamma = 20 deg.
SynthesisGuess default_synthesis_guess(double a);

/// The four sine-rule residuals (folded triangle, then stretched triangle)
/// at unknowns (b, d, epsilon, gamma).
std::vector<double> synthesis_residuals(double a, double c,
                                        double input_sweep,
                                        double output_sweep, double b,
                                        double d, double epsilon,
                                        double gamma);

/// Solves for (b, d, epsilon, gamma) with the dogleg trust-region method.
/// Throws DomainError for non-positive inputs and SynthesisError when the
/// residual norm does not reach 1e-8 or the root is degenerate.
SynthesisSolution synthesize(double a, double c, double input_sweep,
                             double output_sweep,
                             std::optional<SynthesisGuess> guess = {});

/// Joint angle produced by servo angle `servo_angle` in [0, input_sweep],
/// measured from the folded (alpha = 0) pose. The assembly branch is the one
/// continuous with the folded pose. Throws DomainError outside the sweep and
/// MechanismLockError when the loop cannot close or the joint would pass its
/// stops at 0 and output_sweep.
double forward_alpha(const FourBarDesign& design, double servo_angle);

struct ServoAlphaSample {
  double servo_angle;
  double alpha;
};

/// Evenly spaced servo -> alpha table over the full input sweep.
std::vector<ServoAlphaSample> servo_alpha_table(const FourBarDesign& design,
                                                int samples);

}  // namespace foldquad
