#pragma once

// Closed-loop scenario execution: trajectory -> controller -> allocation ->
// rigid-body model, logged once per physics step.

#include <cstddef>
#include <string>
#include <vector>

#include "foldquad/scenario.hpp"
#include "foldquad/trace.hpp"

namespace foldquad {

struct SimulationResult {
  std::string scenario;
  Trace trace;
  bool diverged = false;
  double diverged_at_s = 0.0;
  std::string message;
  std::size_t saturated_steps = 0;
  std::size_t degraded_steps = 0;
};

/// Runs one scenario. Divergence (non-finite state, position error beyond the
/// scenario bound, or a singular control setpoint) stops the run and returns
/// the partial trace with `diverged` set.
SimulationResult run_scenario(const Scenario& scenario);

/// Independent runs across OpenMP threads; results keep input order.
std::vector<SimulationResult> run_batch(const std::vector<Scenario>& scenarios);
/// Serial reference for run_batch.
std::vector<SimulationResult> run_batch_serial(
    const std::vector<Scenario>& scenarios);

}  // namespace foldquad
