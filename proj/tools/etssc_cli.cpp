// Command-line driver: simulate / average / compare / verify / bessel.
//
// Exit codes: 0 success, 1 validation or I/O error, 2 numerical failure.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "etssc/bessel.hpp"
#include "etssc/errors.hpp"
#include "etssc/export.hpp"
#include "etssc/scenario.hpp"
#include "etssc/simulation.hpp"

namespace {

struct RunOptions {
  std::string config;
  std::string out;
  std::string metrics;
  std::string mode;
  std::optional<double> dt;
  std::optional<double> t_final;
  std::optional<double> sample_period;
};

void add_run_options(CLI::App* cmd, RunOptions& o, bool with_mode) {
  cmd->add_option("--config", o.config, "Scenario configuration file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--metrics", o.metrics, "Write metrics JSON here (default: stdout)");
  cmd->add_option("--dt", o.dt, "Integration step override (s)");
  cmd->add_option("--t-final", o.t_final, "Horizon override (s)");
  if (with_mode) {
    cmd->add_option("--out", o.out, "Write the CSV trace here");
    cmd->add_option("--mode", o.mode, "full | average | continuous | sampled");
    cmd->add_option("--sample-period", o.sample_period, "Update period for sampled mode (s)");
  }
}

etssc::Scenario scenario_from(const RunOptions& o) {
  etssc::Scenario s = etssc::load_scenario(o.config);
  if (o.dt) s.dt = *o.dt;
  if (o.t_final) s.t_final = *o.t_final;
  if (!o.mode.empty()) s.mode = etssc::parse_mode(o.mode);
  if (o.sample_period) s.sample_period = *o.sample_period;
  etssc::validate(s);
  return s;
}

void emit(const nlohmann::json& doc, const std::string& path) {
  if (path.empty()) {
    std::cout << doc.dump(2) << '\n';
  } else {
    etssc::export_json(doc, path);
  }
}

int simulate(const RunOptions& o, bool verify, std::optional<etssc::RunMode> forced) {
  etssc::Scenario s = scenario_from(o);
  if (forced) s.mode = *forced;
  etssc::SimulationResult r = etssc::run_simulation(s);
  for (const auto& w : r.metrics.warnings) std::cerr << "warning: " << w << '\n';
  if (verify) r.metrics.theory = etssc::verify_theory(s);
  if (!o.out.empty()) etssc::export_trace(r.trace, o.out);
  emit(etssc::to_json(r.metrics), o.metrics);
  return 0;
}

int compare(const RunOptions& o, const std::vector<double>& omegas) {
  const etssc::Scenario s = scenario_from(o);
  const auto records = etssc::compare_averaging(s, omegas);
  nlohmann::json doc;
  doc["averaging_sup_error"] = nlohmann::json::array();
  for (const auto& rec : records)
    doc["averaging_sup_error"].push_back({{"omega3", rec.omega3}, {"sup_error", rec.sup_error}});
  doc["ratios"] = nlohmann::json::array();
  for (std::size_t i = 1; i < records.size(); ++i)
    doc["ratios"].push_back(records[i].sup_error / records[i - 1].sup_error);
  emit(doc, o.metrics);
  return 0;
}

int verify(const RunOptions& o, const std::vector<double>& omegas) {
  const etssc::Scenario s = scenario_from(o);
  emit(etssc::to_json(etssc::verify_theory(s, omegas)), o.metrics);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Event-triggered source seeking: simulation and verification"};
  app.require_subcommand(1);

  RunOptions opts;
  bool with_theory = false;
  std::vector<double> omegas{20.0, 40.0};
  std::vector<double> verify_omegas;
  int order = 0;
  double arg = 0.0;
  bool quadrature = false;

  auto* sim = app.add_subcommand("simulate", "Run the closed loop and export trace/metrics");
  add_run_options(sim, opts, true);
  sim->add_flag("--verify", with_theory, "Attach the theory report to the metrics");

  auto* avg = app.add_subcommand("average", "Run the averaged closed loop");
  add_run_options(avg, opts, true);

  auto* cmp = app.add_subcommand("compare", "Averaging error versus base frequency");
  add_run_options(cmp, opts, false);
  cmp->add_option("--omega-list", omegas, "Base frequencies omega3 (rad/s)")->delimiter(',');

  auto* ver = app.add_subcommand("verify", "Lyapunov certificate, alpha bound, dwell time, decay");
  add_run_options(ver, opts, false);
  ver->add_option("--omega-list", verify_omegas, "Also report averaging error at these omega3")
      ->delimiter(',');

  auto* bes = app.add_subcommand("bessel", "Evaluate J_m(x)");
  bes->add_option("--order", order, "Order m >= 0")->required();
  bes->add_option("--arg", arg, "Argument x")->required();
  bes->add_flag("--quadrature", quadrature, "Use the integral representation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*sim) return simulate(opts, with_theory, std::nullopt);
    if (*avg) return simulate(opts, false, etssc::RunMode::average);
    if (*cmp) return compare(opts, omegas);
    if (*ver) return verify(opts, verify_omegas);
    if (*bes) {
      const double v = quadrature ? etssc::bessel_j_quadrature(order, arg) : etssc::bessel_j(order, arg);
      std::printf("%.17g\n", v);
      return 0;
    }
  } catch (const etssc::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const etssc::ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 1;
  } catch (const etssc::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
