// Acceptance suite: one PASS/FAIL line per criterion; exit status is the
// number of failed criteria (0 when everything holds).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "etssc/analysis.hpp"
#include "etssc/bessel.hpp"
#include "etssc/errors.hpp"
#include "etssc/simulation.hpp"

using namespace etssc;

namespace {

constexpr double kPi = std::numbers::pi;
const std::filesystem::path kScenarioDir = ETSSC_SCENARIO_DIR;

int failures = 0;

void report(int id, const char* title, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s -- %s\n", ok ? "PASS" : "FAIL", id, title, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Scenario reference() { return load_scenario(kScenarioDir / "paper_siv.cfg"); }

std::vector<std::filesystem::path> shipped_scenarios() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(kScenarioDir))
    if (e.path().extension() == ".cfg") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

// Sampled trigger soundness on an event-triggered trace. Returns a failure
// description, empty when the trace is sound.
std::string trigger_soundness(const SimulationTrace& tr) {
  const auto& rows = tr.rows;
  if (rows.empty()) return "empty trace";
  double lipschitz = 0.0;
  for (std::size_t k = 1; k < rows.size(); ++k)
    if (!rows[k].event && !rows[k - 1].event)
      lipschitz = std::fmax(lipschitz, std::fabs(rows[k].xi - rows[k - 1].xi) / tr.dt);
  const double eps_grid = lipschitz * tr.dt;

  std::size_t ev = 0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const TraceRow& r = rows[k];
    if (r.event) {
      if (ev >= tr.events.size()) return fmt("event flag at t=%g not in log", r.t);
      const TriggerEvent& logged = tr.events[ev++];
      if (logged.t != r.t) return fmt("event log time %g != row time %g", logged.t, r.t);
      // e = held - current must vanish bit-exactly.
      const Vec3 e = logged.latched.value - r.g;
      if (e != Vec3{0.0, 0.0, 0.0}) return fmt("e != 0 at event t=%g", r.t);
      if (logged.u != r.u) return fmt("latched u differs from row u at t=%g", r.t);
      if (k > 0 && !(r.xi < 0.0)) return fmt("event at t=%g with xi=%g >= 0", r.t, r.xi);
    } else {
      if (k == 0) return "first sample is not an event";
      if (r.xi < -eps_grid) return fmt("xi=%g < -eps_grid=%g at t=%g", r.xi, -eps_grid, r.t);
      if (r.u != rows[k - 1].u) return fmt("held u changed without an event at t=%g", r.t);
    }
  }
  if (ev != tr.events.size()) return "event log has entries without a flagged row";
  return {};
}

void criterion_1_and_2() {
  const Scenario s = reference();
  const auto start = std::chrono::steady_clock::now();
  SimulationResult et;
  try {
    et = run_simulation(s);
  } catch (const std::exception& e) {
    report(1, "reference reproduction", false, std::string("run failed: ") + e.what());
    report(2, "update reduction", false, "event-triggered run failed");
    return;
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const VehicleState f = et.metrics.final_state;
  const double pos_err = std::hypot(f.x - s.field.x_star, f.y - s.field.y_star);
  const double head_err = std::fabs(f.theta - s.field.theta_star);
  report(1, "reference reproduction (|(x,y)-(10,5)| <= 1 m, |theta-pi/6| <= 0.5 rad, <= 30 s)",
         pos_err <= 1.0 && head_err <= 0.5 && wall <= 30.0,
         fmt("final (%.6g, %.6g, %.6g), position error %.6g m, heading error %.6g rad, wall %.3g s",
             f.x, f.y, f.theta, pos_err, head_err, wall));

  const double ratio =
      static_cast<double>(et.metrics.num_events) / static_cast<double>(et.metrics.num_steps);
  const double et_err = et.metrics.final_error_norm;
  Scenario base = s;
  base.mode = RunMode::continuous;
  std::string base_detail;
  bool base_ok = false;
  try {
    const double base_err = run_simulation(base).metrics.final_error_norm;
    base_ok = std::isfinite(base_err) && std::isfinite(et_err) && base_err <= 2.0 * et_err;
    base_detail = fmt("continuous final error %.6g vs event-triggered %.6g", base_err, et_err);
  } catch (const NumericalError& e) {
    base_detail = std::string("continuous baseline diverged: ") + e.what();
  }
  report(2, "update reduction (events/steps <= 0.10, continuous error within 2x)",
         ratio <= 0.10 && base_ok,
         fmt("events/steps = %zu/%zu = %.4g; ", et.metrics.num_events, et.metrics.num_steps,
             ratio) +
             base_detail);
}

void criterion_3() {
  bool ok = true;
  std::string detail;
  for (const auto& path : shipped_scenarios()) {
    const Scenario s = load_scenario(path);
    try {
      const RunMetrics m = run_simulation(s).metrics;
      const double gap = m.min_inter_event.value_or(INFINITY);
      ok = ok && gap > 0.0;
      detail += fmt("%s min gap %.6g; ", path.filename().c_str(), gap);
    } catch (const std::exception& e) {
      ok = false;
      detail += path.filename().string() + " failed: " + e.what() + "; ";
    }
  }
  const Scenario s = reference();
  const TheoryReport r = verify_theory(s);
  const bool avg_ok = r.certificate && r.min_inter_event >= r.tau_star - s.dt;
  detail += fmt("average run min gap %.6g vs tau* - dt = %.6g (%zu events)", r.min_inter_event,
                r.tau_star - s.dt, r.average_events);
  report(3, "Zeno-freeness", ok && avg_ok, detail);
}

void criterion_4() {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  double worst_ratio = 0.0;
  bool ok = true;
  for (int trial = 0; trial < 100; ++trial) {
    Mat3 r{}, w{};
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        r[i][j] = u(rng);
        w[i][j] = u(rng);
      }
    const double c = 0.05 + 0.5 * std::fabs(u(rng));
    const Mat3 acl = (-1.0 * (transpose(r) * r + c * identity<3>())) + (w - transpose(w));
    try {
      const LyapunovCertificate cert = solve_lyapunov(acl);
      const double ratio = cert.residual / spectral_norm(cert.q);
      worst_ratio = std::fmax(worst_ratio, ratio);
      ok = ok && ratio <= 1e-8 && symmetric_eigenvalues(cert.p)[0] > 0.0 &&
           cert.p == transpose(cert.p);
    } catch (const std::exception&) {
      ok = false;
    }
  }
  const LyapunovCertificate unit = solve_lyapunov(-1.0 * identity<3>());
  const double unit_err = max_abs(unit.p - 0.5 * identity<3>());
  report(4, "Lyapunov machinery", ok && unit_err <= 1e-12,
         fmt("worst residual/|Q| over 100 draws %.3g; |P - I/2| for Acl = -I: %.3g", worst_ratio,
             unit_err));
}

void criterion_5() {
  const Scenario s = reference();
  const TheoryReport r = verify_theory(s);
  report(5, "average decay envelope (tol 0.05, outside the trigger floor)",
         r.certificate && r.envelope_violations == 0,
         fmt("%zu violations over %zu events; floor %.6g; alpha %.4g vs certified alpha_min %.6g",
             r.envelope_violations, r.average_events, r.trigger_floor, r.alpha, r.alpha_min));
}

void criterion_6() {
  const Scenario s = reference();
  const std::vector<double> omegas{20.0, 40.0};
  const auto rec = compare_averaging(s, omegas);
  const double ratio = rec[1].sup_error / rec[0].sup_error;
  report(6, "averaging order (sup-deviation ratio in [0.3, 0.9])",
         std::isfinite(ratio) && ratio >= 0.3 && ratio <= 0.9,
         fmt("sup error %.6g at omega3=20, %.6g at omega3=40, ratio %.6g", rec[0].sup_error,
             rec[1].sup_error, ratio));
}

void criterion_7() {
  double route = 0.0;
  for (int m = 0; m <= 4; ++m)
    for (double x = -5.0; x <= 5.0; x += 0.0625)
      route = std::fmax(route, std::fabs(bessel_j(m, x) - bessel_j_quadrature(m, x)));
  const double e0 = std::fabs(bessel_j(0, 0.5) - 0.9384698072);
  const double e2 = std::fabs(bessel_j(2, 0.5) - 0.0306040235);
  double rec = 0.0;
  for (int m = 1; m <= 3; ++m)
    for (double x : {0.1, 0.5, 1.0, 2.0})
      rec = std::fmax(rec, std::fabs(bessel_j(m - 1, x) + bessel_j(m + 1, x) -
                                     2.0 * m / x * bessel_j(m, x)));
  report(7, "Bessel accuracy", route <= 1e-10 && e0 <= 1e-9 && e2 <= 1e-9 && rec <= 1e-10,
         fmt("route gap %.3g, |J0(0.5)-ref| %.3g, |J2(0.5)-ref| %.3g, recurrence %.3g", route, e0,
             e2, rec));
}

void criterion_8() {
  bool ok = true;
  std::string detail;
  auto check = [&](const std::string& name, const Scenario& s) {
    try {
      const SimulationResult r = run_simulation(s);
      const std::string why = trigger_soundness(r.trace);
      ok = ok && why.empty();
      detail += name + (why.empty() ? fmt(" ok (%zu events); ", r.trace.events.size())
                                    : " " + why + "; ");
    } catch (const std::exception& e) {
      ok = false;
      detail += name + " failed: " + e.what() + "; ";
    }
  };
  for (const auto& path : shipped_scenarios()) {
    const Scenario s = load_scenario(path);
    check(path.filename().string(), s);
    Scenario avg = s;
    avg.mode = RunMode::average;
    check(path.filename().string() + " [average]", avg);
  }
  report(8, "trigger soundness", ok, detail);
}

void criterion_9() {
  std::mt19937_64 rng(9001);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::uniform_real_distribution<double> amp(1e-3, 2.0);
  std::uniform_real_distribution<double> freq(0.1, 200.0);
  std::size_t bad = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const double w3 = freq(rng);
    const DitherParams d{amp(rng), amp(rng), amp(rng), 2.0 * w3, 2.0 * w3, w3};
    const AverageModel m = build_average_matrices(angle(rng), d);
    bool structure = m.a[0][0] == 0.0 && m.a[0][1] == 0.0 && m.a[1][0] == 0.0 &&
                     m.a[1][1] == 0.0 && m.a[2] == Vec3{} && m.b[0][1] == 0.0 &&
                     m.b[1][1] == 0.0 && m.b[2][1] == 1.0 && m.b[2][0] == 0.0 &&
                     m.delta_bar[1] == -m.delta_bar[0] && m.delta_bar[2] == 0.0;
    const DeltaBarBound b = delta_bar_norm_bound(m, d);
    if (b.bound > 0.0) worst = std::fmax(worst, b.norm / b.bound);
    if (!structure || !(b.norm <= b.bound * (1.0 + 1e-15))) ++bad;
  }
  report(9, "average-model structure over 1000 draws", bad == 0,
         fmt("%zu failing draws; max |delta_bar|/bound %.17g", bad, worst));
}

}  // namespace

int main() {
  try {
    criterion_1_and_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
  } catch (const std::exception& e) {
    std::printf("[FAIL] acceptance aborted: %s\n", e.what());
    return 100;
  }
  std::printf("%d of 9 criteria failed\n", failures);
  return failures;
}
