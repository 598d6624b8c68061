#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "foldquad/errors.hpp"
#include "foldquad/morphology.hpp"

using namespace foldquad;

namespace {

const ParamSet kDefault;

// Closed form of the tilt design equation: the sin/cos split gives
// tan(delta) = sqrt(2) l / (K_m (D S / I_x0 - sqrt(2))).
double tilt_oracle(const ParamSet& p, double divisor) {
  const double s = p.inertia_sum_x() + p.inertia_sum_y();
  const double ix0 = p.inertia_sum_x();
  return std::atan(std::sqrt(2.0) * p.arm_length_m /
                   (p.moment_coeff_km * (divisor * s / ix0 - std::sqrt(2.0))));
}

}  // namespace

TEST(ArmAngle, Examples) {
  EXPECT_DOUBLE_EQ(arm_angle(0.0), kQuarterPi);
  EXPECT_NEAR(arm_angle(kHalfPi), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(arm_angle(kQuarterPi), kPi / 8.0);
  EXPECT_THROW(arm_angle(-0.1), DomainError);
  EXPECT_THROW(arm_angle(2.0), DomainError);
}

TEST(Inertia, TableValues) {
  EXPECT_NEAR(inertia_roll(kDefault, 0.0), 4.22e-3, 1e-15);
  EXPECT_NEAR(inertia_roll(kDefault, kQuarterPi), 15.115e-3, 1e-12);
  EXPECT_NEAR(inertia_pitch(kDefault, 0.0), 26.01e-3, 1e-15);
  EXPECT_NEAR(inertia_pitch(kDefault, kQuarterPi),
              inertia_roll(kDefault, kQuarterPi), 1e-15);
  EXPECT_GT(inertia_pitch(kDefault, 0.0), inertia_pitch(kDefault, kQuarterPi));
  EXPECT_THROW(inertia_roll(kDefault, kHalfPi), DomainError);
  EXPECT_THROW(inertia_pitch(kDefault, -0.01), DomainError);
}

TEST(Inertia, TraceAndMonotonicity) {
  const double sum = kDefault.inertia_sum_x() + kDefault.inertia_sum_y();
  double prev_roll = -1.0, prev_pitch = 1.0;
  for (int i = 0; i <= 200; ++i) {
    const double a = kQuarterPi * i / 200.0;
    const double r = inertia_roll(kDefault, a);
    const double q = inertia_pitch(kDefault, a);
    EXPECT_NEAR(r + q, sum, 1e-15);
    EXPECT_GT(r, prev_roll);
    EXPECT_LT(q, prev_pitch);
    prev_roll = r;
    prev_pitch = q;
  }
}

TEST(TorqueCapacity, Examples) {
  const double t = 17.658;
  EXPECT_NEAR(roll_torque_capacity(kDefault, 0.0, t),
              0.055 * t / 4 * std::sin(deg2rad(25.0)), 1e-12);
  EXPECT_NEAR(roll_torque_capacity(kDefault, 0.0, t), 0.1026, 1e-4);
  EXPECT_EQ(roll_torque_capacity(kDefault, kQuarterPi, 0.0), 0.0);
  ParamSet flat = kDefault;
  flat.tilt_delta_rad = 0.0;
  EXPECT_NEAR(roll_torque_capacity(flat, 0.0, 30.0), 0.0, 1e-15);
  EXPECT_NEAR(pitch_torque_capacity(kDefault, 0.0, t), 0.8731, 1e-4);
  EXPECT_EQ(pitch_torque_capacity(kDefault, 0.3, 0.0), 0.0);
  EXPECT_THROW(roll_torque_capacity(kDefault, 0.2, -1.0), DomainError);
  EXPECT_THROW(pitch_torque_capacity(kDefault, 0.2, -1.0), DomainError);
}

TEST(TorqueCapacity, SymmetricAtQuarterPi) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> thrust(0.0, 40.0);
  for (int i = 0; i < 100; ++i) {
    const double t = thrust(rng);
    EXPECT_NEAR(roll_torque_capacity(kDefault, kQuarterPi, t),
                pitch_torque_capacity(kDefault, kQuarterPi, t), 1e-14);
  }
}

TEST(TiltSolve, PublishedDesignPoints) {
  const double d1 = solve_tilt_angle(kDefault, 1.0);
  const double d2 = solve_tilt_angle(kDefault, 2.0);
  EXPECT_NEAR(rad2deg(d1), 44.30, 0.05);
  EXPECT_NEAR(rad2deg(d2), 23.49, 0.05);
  EXPECT_NEAR(d1, tilt_oracle(kDefault, 1.0), 1e-11);
  EXPECT_NEAR(d2, tilt_oracle(kDefault, 2.0), 1e-11);
  EXPECT_LT(std::abs(tilt_design_residual(kDefault, d1, 1.0)), 1e-10);
  EXPECT_LT(std::abs(tilt_design_residual(kDefault, d2, 2.0)), 1e-10);
}

TEST(TiltSolve, RootUniqueBySignScan) {
  for (double divisor : {1.0, 2.0, 5.0}) {
    int changes = 0;
    double prev = tilt_design_residual(kDefault, 1e-9, divisor);
    for (int i = 1; i <= 10000; ++i) {
      const double delta = (kHalfPi - 1e-9) * i / 10000.0;
      const double r = tilt_design_residual(kDefault, delta, divisor);
      if ((r > 0) != (prev > 0)) ++changes;
      prev = r;
    }
    EXPECT_EQ(changes, 1) << "divisor " << divisor;
  }
}

TEST(TiltSolve, LimitsAndErrors) {
  EXPECT_LT(solve_tilt_angle(kDefault, 1e6), 1e-3);
  EXPECT_GT(solve_tilt_angle(kDefault, 1.0), solve_tilt_angle(kDefault, 3.0));
  EXPECT_THROW(solve_tilt_angle(kDefault, 0.5), DomainError);
}

TEST(ThrustEfficiency, Examples) {
  EXPECT_NEAR(thrust_efficiency(deg2rad(44.30)), 0.7157, 1e-3);
  EXPECT_NEAR(thrust_efficiency(deg2rad(23.49)), 0.9172, 1e-3);
  EXPECT_DOUBLE_EQ(thrust_efficiency(0.0), 1.0);
}

TEST(BodyWidth, CalibratedAndMonotone) {
  EXPECT_DOUBLE_EQ(body_width(kDefault, 0.0), 0.447);
  EXPECT_DOUBLE_EQ(body_width(kDefault, kHalfPi), 0.138);
  const double mid = body_width(kDefault, kQuarterPi);
  EXPECT_GT(mid, 0.138);
  EXPECT_LT(mid, 0.447);
  double prev = 1.0;
  for (int i = 0; i <= 100; ++i) {
    const double w = body_width(kDefault, kHalfPi * i / 100.0);
    EXPECT_LT(w, prev);
    prev = w;
  }
  EXPECT_THROW(body_width(kDefault, 1.7), DomainError);
}

TEST(BodyLength, GrowsWhenFolded) {
  EXPECT_DOUBLE_EQ(body_length(kDefault, 0.0), 0.447);
  EXPECT_GT(body_length(kDefault, kHalfPi), 0.447);
}

TEST(StepMorph, RateLimitedAndClamped) {
  MorphState s;
  s = step_morph(s, kHalfPi, 0.01, 0.5);
  EXPECT_NEAR(s.alpha, 0.005, 1e-15);
  EXPECT_NEAR(s.alpha_rate, 0.5, 1e-12);

  MorphState at;
  at.alpha = 0.7;
  const MorphState same = step_morph(at, 0.7, 0.01, 0.5);
  EXPECT_EQ(same.alpha, 0.7);
  EXPECT_EQ(same.alpha_rate, 0.0);

  MorphState near_end;
  near_end.alpha = kHalfPi - 0.001;
  const MorphState sat = step_morph(near_end, 2.0, 0.1, 0.5);
  EXPECT_DOUBLE_EQ(sat.alpha, kHalfPi);
  EXPECT_LE(std::abs(sat.alpha_rate), 0.5 + 1e-12);

  EXPECT_THROW(step_morph(s, 0.3, 0.0, 0.5), DomainError);
}

TEST(ParamSet, Validation) {
  EXPECT_NO_THROW(kDefault.validate());
  ParamSet bad = kDefault;
  bad.mass_kg = 0.0;
  EXPECT_THROW(bad.validate(), DomainError);
  bad = kDefault;
  bad.tilt_delta_rad = kHalfPi;
  EXPECT_THROW(bad.validate(), DomainError);
  bad = kDefault;
  bad.width_at_alpha90_m = 0.5;
  EXPECT_THROW(bad.validate(), DomainError);
}
