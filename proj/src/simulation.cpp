#include "etssc/simulation.hpp"

#include <cmath>
#include <future>
#include <limits>

#include "etssc/errors.hpp"
#include "etssc/gradient_estimator.hpp"
#include "etssc/integrator.hpp"

namespace etssc {
namespace {

std::size_t step_count(const Scenario& s) {
  return static_cast<std::size_t>(std::llround(s.t_final / s.dt));
}

void fill_event_stats(const std::vector<TriggerEvent>& events, RunMetrics& m) {
  m.num_events = events.size();
  if (events.size() < 2) return;
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < events.size(); ++k)
    min_gap = std::fmin(min_gap, events[k].t - events[k - 1].t);
  m.min_inter_event = min_gap;
  m.mean_inter_event =
      (events.back().t - events.front().t) / static_cast<double>(events.size() - 1);
}

Vec3 initial_error(const Scenario& s) {
  return estimator_pose(s.initial, s.dithers, 0.0) - s.field.maximizer();
}

void check_grid_resolution(const Scenario& s, RunMetrics& m) {
  const AverageModel model = build_average_matrices(s.field.theta_star, s.dithers);
  const Mat3 acl = closed_loop(model, s.gain);
  if (!hurwitz_check(acl)) {
    m.warnings.push_back("A - BK is not Hurwitz for this scenario; the average loop is unstable");
    return;
  }
  const double tau = dwell_time_bound(s.trigger.sigma, acl, model.b * s.gain.k);
  if (s.dt > tau / 10.0)
    m.warnings.push_back("dt = " + std::to_string(s.dt) + " exceeds tau*/10 = " +
                         std::to_string(tau / 10.0) + "; trigger sampling may overshoot");
}

AverageControl average_control_for(RunMode mode) {
  return mode == RunMode::continuous ? AverageControl::continuous
                                     : AverageControl::event_triggered;
}

AverageTrace run_average(const Scenario& s, AverageControl control) {
  const AverageModel model = build_average_matrices(s.field.theta_star, s.dithers);
  return run_average_loop(model, s.gain, s.trigger, initial_error(s), s.dt, s.t_final, control);
}

SimulationResult run_full(const Scenario& s) {
  SimulationResult out;
  SimulationTrace& trace = out.trace;
  const std::size_t n = step_count(s);
  trace.dt = s.dt;
  trace.rows.reserve(n);

  const std::size_t stride =
      s.mode == RunMode::sampled
          ? std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(s.sample_period / s.dt)))
          : 1;

  TriggerState trigger;
  Vec3 pose = s.initial.as_vec();
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * s.dt;
    const VehicleState state = VehicleState::from_vec(pose);
    const double measured = evaluate(s.field, state);
    const GradientEstimate g = gradient_estimate(demodulation_vector(s.dithers, t), measured);

    TriggerStep step;
    switch (s.mode) {
      case RunMode::continuous:
        step = trigger.force(t, g, s.trigger, s.gain);
        break;
      case RunMode::sampled:
        step = k % stride == 0 ? trigger.force(t, g, s.trigger, s.gain) : trigger.peek(g, s.trigger);
        break;
      default:
        step = trigger.step(t, g, s.trigger, s.gain);
        break;
    }

    const Vec3 est = estimator_pose(state, s.dithers, t);
    const Vec2 u = trigger.held_control();
    trace.rows.push_back({t, state.x, state.y, state.theta, est[0], est[1], est[2], measured,
                          g.value, u, step.xi, step.event});

    pose = integrate_step<3>(
        [&](double tau, const Vec3& x) {
          const VehicleState st = VehicleState::from_vec(x);
          const Velocities vel = dither_velocities(s.dithers, tau, st.theta, u);
          return state_derivative(st, vel.v, vel.omega);
        },
        pose, t, s.dt);
  }
  trace.events = trigger.events();

  RunMetrics& m = out.metrics;
  m.mode = s.mode;
  m.num_steps = n;
  fill_event_stats(trace.events, m);
  m.final_state = VehicleState::from_vec(pose);
  m.final_error_norm = norm(pose - s.field.maximizer());
  return out;
}

SimulationResult run_average_mode(const Scenario& s) {
  const AverageTrace avg = run_average(s, AverageControl::event_triggered);
  const Vec3 star = s.field.maximizer();
  SimulationResult out;
  out.trace.dt = s.dt;
  out.trace.average = true;
  out.trace.events = avg.events;
  out.trace.rows.reserve(avg.samples.size());
  for (const AverageSample& a : avg.samples) {
    const Vec3 pose = star + a.g;
    const double q = evaluate(s.field, VehicleState::from_vec(pose));
    out.trace.rows.push_back(
        {a.t, pose[0], pose[1], pose[2], pose[0], pose[1], pose[2], q, a.g, a.u, a.xi, a.event});
  }
  RunMetrics& m = out.metrics;
  m.mode = RunMode::average;
  m.num_steps = avg.samples.size();
  fill_event_stats(avg.events, m);
  m.final_state = VehicleState::from_vec(star + avg.final_g);
  m.final_error_norm = norm(avg.final_g);
  return out;
}

}  // namespace

SimulationResult run_simulation(const Scenario& s) {
  validate(s);
  SimulationResult out = s.mode == RunMode::average ? run_average_mode(s) : run_full(s);
  check_grid_resolution(s, out.metrics);
  return out;
}

std::vector<TimedVec3> estimation_error_series(const SimulationTrace& trace,
                                               const QuadraticField& field) {
  std::vector<TimedVec3> out;
  out.reserve(trace.rows.size());
  const Vec3 star = field.maximizer();
  for (const TraceRow& r : trace.rows)
    out.push_back({r.t, Vec3{r.xhat, r.yhat, r.thetahat} - star});
  return out;
}

double averaging_sup_error(const Scenario& s) {
  Scenario nonlinear = s;
  if (nonlinear.mode != RunMode::continuous) nonlinear.mode = RunMode::full;
  const SimulationResult full = run_simulation(nonlinear);
  const AverageTrace avg = run_average(s, average_control_for(nonlinear.mode));

  const std::vector<TimedVec3> lhs = estimation_error_series(full.trace, s.field);
  std::vector<TimedVec3> rhs;
  rhs.reserve(avg.samples.size());
  for (const AverageSample& a : avg.samples) rhs.push_back({a.t, a.g});
  return averaging_error(lhs, rhs);
}

std::vector<AveragingRecord> compare_averaging(const Scenario& s, std::span<const double> omegas) {
  std::vector<std::future<double>> jobs;
  jobs.reserve(omegas.size());
  for (double w : omegas) {
    Scenario scaled = with_base_frequency(s, w);
    jobs.push_back(std::async(std::launch::async,
                              [scaled = std::move(scaled)] { return averaging_sup_error(scaled); }));
  }
  std::vector<AveragingRecord> out;
  out.reserve(omegas.size());
  for (std::size_t i = 0; i < omegas.size(); ++i) out.push_back({omegas[i], jobs[i].get()});
  return out;
}

TheoryReport verify_theory(const Scenario& s, std::span<const double> omegas) {
  validate(s);
  TheoryReport r;
  const AverageModel model = build_average_matrices(s.field.theta_star, s.dithers);
  const Mat3 acl = closed_loop(model, s.gain);
  const Mat3 bk = model.b * s.gain.k;
  r.alpha = s.trigger.alpha;
  r.eigenvalues = eigenvalues(acl);
  r.hurwitz = hurwitz_check(acl);
  r.trigger_floor = 2.0 * (s.trigger.alpha / s.trigger.sigma) * s.trigger.bias;
  const DeltaBarBound db = delta_bar_norm_bound(model, s.dithers);
  r.delta_bar_norm = db.norm;
  r.delta_bar_bound = db.bound;
  r.residual_scale = dither_residual_scale(s.dithers);
  r.residual_scale_quoted = quoted_residual_scale(s.dithers);

  const AverageTrace avg = run_average(s, AverageControl::event_triggered);
  r.average_events = avg.events.size();
  r.min_inter_event = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < avg.events.size(); ++k)
    r.min_inter_event = std::fmin(r.min_inter_event, avg.events[k].t - avg.events[k - 1].t);

  if (r.hurwitz) {
    r.certificate = solve_lyapunov(acl);
    r.alpha_min = alpha_lower_bound(r.certificate->p, acl, r.certificate->q);
    r.alpha_ok = s.trigger.alpha > r.alpha_min;
    r.tau_star = dwell_time_bound(s.trigger.sigma, acl, bk);
    r.decay_rate = decay_rate(*r.certificate, s.trigger.sigma);
    const std::vector<EnvelopePoint> env = event_envelope(avg, r.certificate->p, s.t_final);
    r.envelope_violations = decay_envelope_check(env, r.decay_rate, 0.05, r.trigger_floor);
  }
  if (!omegas.empty()) r.averaging_sup_error = compare_averaging(s, omegas);
  return r;
}

}  // namespace etssc
