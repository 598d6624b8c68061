#pragma once

// Powell dogleg trust-region solver for small square nonlinear systems
// F(x) = 0 with an analytic Jacobian.

#include <Eigen/Dense>
#include <functional>

namespace foldquad {

struct DoglegOptions {
  int max_iterations = 200;
  double residual_tolerance = 1e-12;  // stop when ||F|| <= this
  double step_tolerance = 1e-15;      // stop when trust radius collapses
  double initial_radius = 1.0;
};

struct DoglegResult {
  Eigen::VectorXd x;
  double residual_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using JacobianFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

DoglegResult solve_dogleg(const ResidualFn& residual,
                          const JacobianFn& jacobian, Eigen::VectorXd x0,
                          const DoglegOptions& options = {});

}  // namespace foldquad
