#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "etssc/analysis.hpp"
#include "etssc/event_controller.hpp"
#include "etssc/scenario.hpp"

namespace etssc {

struct TraceRow {
  double t = 0.0;
  double x = 0.0, y = 0.0, theta = 0.0;
  double xhat = 0.0, yhat = 0.0, thetahat = 0.0;
  double q = 0.0;  // measured signal
  Vec3 g{};        // gradient estimate
  Vec2 u{};        // held control
  double xi = 0.0;
  bool event = false;
};

/// One row per integration step, t = k*dt. For average runs the pose
/// columns hold q* + q_tilde_av and `average` is set.
struct SimulationTrace {
  double dt = 0.0;
  bool average = false;
  std::vector<TraceRow> rows;
  std::vector<TriggerEvent> events;
};

struct RunMetrics {
  RunMode mode = RunMode::full;
  std::size_t num_steps = 0;
  std::size_t num_events = 0;
  std::optional<double> min_inter_event;  // empty with fewer than two events
  std::optional<double> mean_inter_event;
  double final_error_norm = 0.0;  // |q(t_f) - q*|
  VehicleState final_state;
  std::optional<TheoryReport> theory;
  std::vector<std::string> warnings;
};

struct SimulationResult {
  SimulationTrace trace;
  RunMetrics metrics;
};

/// Runs the scenario in its configured mode. Propagates ValidationError and
/// NumericalError (non-finite state).
SimulationResult run_simulation(const Scenario& s);

/// q_tilde(t) = (x_hat, y_hat, theta_hat) - q* for every trace row.
std::vector<TimedVec3> estimation_error_series(const SimulationTrace& trace,
                                               const QuadraticField& field);

/// sup |q_tilde - q_tilde_av| for the scenario as configured: the nonlinear
/// loop (event-triggered, or continuous in continuous mode) against the
/// average loop from the same initial error.
double averaging_sup_error(const Scenario& s);

/// averaging_sup_error at each base frequency, amplitudes rescaled to keep
/// a_i*omega_i fixed. Independent runs are executed concurrently.
std::vector<AveragingRecord> compare_averaging(const Scenario& s, std::span<const double> omegas);

/// Lyapunov certificate (Q = I), alpha bound, dwell time, and decay envelope
/// of the average run. Averaging errors are filled for `omegas` when given.
TheoryReport verify_theory(const Scenario& s, std::span<const double> omegas = {});

}  // namespace etssc
