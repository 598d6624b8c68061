#pragma once

#include <stdexcept>
#include <string>

namespace foldquad {

/// Argument outside the documented domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The tilt-angle design equation has no root in (0, pi/2).
class InfeasibleDesignError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Four-bar synthesis did not converge.
class SynthesisError : public std::runtime_error {
 public:
  SynthesisError(const std::string& what, double best_residual)
      : std::runtime_error(what), best_residual_(best_residual) {}
  double best_residual() const { return best_residual_; }

 private:
  double best_residual_;
};

/// The linkage cannot be assembled at the requested input angle.
class MechanismLockError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rank-deficient allocation matrix; `axis()` names the uncontrollable axis.
class AllocationError : public std::runtime_error {
 public:
  AllocationError(const std::string& what, std::string axis)
      : std::runtime_error(what), axis_(std::move(axis)) {}
  const std::string& axis() const { return axis_; }

 private:
  std::string axis_;
};

/// Requested force is (numerically) zero, so no thrust direction exists.
class SingularSetpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Desired body z axis is parallel to the yaw heading vector.
class GimbalSingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SimulationDivergedError : public std::runtime_error {
 public:
  SimulationDivergedError(const std::string& what, double t)
      : std::runtime_error(what), time_(t) {}
  double time() const { return time_; }

 private:
  double time_;
};

/// Scenario file failed validation. Carries the offending key path and the
/// 1-based source line (0 when unknown).
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(const std::string& key_path, int line, const std::string& msg)
      : std::runtime_error(format(key_path, line, msg)),
        key_path_(key_path),
        line_(line) {}
  const std::string& key_path() const { return key_path_; }
  int line() const { return line_; }

 private:
  static std::string format(const std::string& key_path, int line,
                            const std::string& msg) {
    std::string out = key_path.empty() ? std::string("<root>") : key_path;
    if (line > 0) out += " (line " + std::to_string(line) + ")";
    return out + ": " + msg;
  }
  std::string key_path_;
  int line_;
};

}  // namespace foldquad
