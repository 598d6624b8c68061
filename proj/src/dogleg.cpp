#include "foldquad/dogleg.hpp"

#include <algorithm>
#include <cmath>

namespace foldquad {
namespace {

// Dogleg point inside the trust region of radius `radius` for the
// linearization J p = -f.
Eigen::VectorXd dogleg_step(const Eigen::MatrixXd& jac,
                            const Eigen::VectorXd& f, double radius) {
  const Eigen::VectorXd grad = jac.transpose() * f;
  const double grad_sq = grad.squaredNorm();

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(jac);
  const bool full_rank = qr.rank() == jac.cols();
  Eigen::VectorXd gauss_newton;
  if (full_rank) {
    gauss_newton = qr.solve(-f);
    if (gauss_newton.norm() <= radius) return gauss_newton;
  }

  if (grad_sq == 0.0) return Eigen::VectorXd::Zero(f.size());
  const double curvature = (jac * grad).squaredNorm();
  const double tau = curvature > 0.0 ? grad_sq / curvature
                                     : radius / std::sqrt(grad_sq);
  const Eigen::VectorXd cauchy = -tau * grad;
  if (!full_rank || cauchy.norm() >= radius) {
    return -radius / std::sqrt(grad_sq) * grad;
  }

  // Walk from the Cauchy point toward Gauss-Newton until ||p|| = radius.
  const Eigen::VectorXd dir = gauss_newton - cauchy;
  const double a = dir.squaredNorm();
  const double b = 2.0 * cauchy.dot(dir);
  const double c = cauchy.squaredNorm() - radius * radius;
  const double beta = (-b + std::sqrt(b * b - 4.0 * a * c)) / (2.0 * a);
  return cauchy + beta * dir;
}

}  // namespace

DoglegResult solve_dogleg(const ResidualFn& residual,
                          const JacobianFn& jacobian, Eigen::VectorXd x0,
                          const DoglegOptions& options) {
  DoglegResult result;
  Eigen::VectorXd x = std::move(x0);
  Eigen::VectorXd f = residual(x);
  double cost = f.squaredNorm();
  double radius = options.initial_radius;

  int it = 0;
  for (; it < options.max_iterations; ++it) {
    if (std::sqrt(cost) <= options.residual_tolerance) break;
    const Eigen::MatrixXd jac = jacobian(x);
    const Eigen::VectorXd step = dogleg_step(jac, f, radius);
    const double step_norm = step.norm();

    const Eigen::VectorXd x_trial = x + step;
    const Eigen::VectorXd f_trial = residual(x_trial);
    const double cost_trial = f_trial.squaredNorm();
    const double predicted = cost - (f + jac * step).squaredNorm();
    const double actual = cost - cost_trial;
    const double rho = predicted > 0.0 ? actual / predicted : -1.0;

    if (rho < 0.25) {
      radius = 0.25 * step_norm;
    } else if (rho > 0.75 && step_norm >= 0.99 * radius) {
      radius = std::min(2.0 * radius, 1e6);
    }
    if (rho > 0.0 && std::isfinite(cost_trial)) {
      x = x_trial;
      f = f_trial;
      cost = cost_trial;
    }
    if (radius < options.step_tolerance) break;
  }

  result.x = x;
  result.residual_norm = std::sqrt(cost);
  result.iterations = it;
  result.converged = result.residual_norm <= options.residual_tolerance;
  return result;
}

}  // namespace foldquad
