#include "etssc/export.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "etssc/errors.hpp"

namespace etssc {
namespace {

void put(std::string& line, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  line.append(buf, res.ptr);
}

double parse_field(std::string_view s, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ValidationError("trace csv line " + std::to_string(line) + ": bad number '" +
                          std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(s.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

nlohmann::json optional_number(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json finite_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

nlohmann::json matrix(const Mat3& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : m) rows.push_back({r[0], r[1], r[2]});
  return rows;
}

}  // namespace

void write_trace_csv(std::ostream& out, const SimulationTrace& trace) {
  std::string line(kTraceHeader);
  if (trace.average) line += ",system";
  line += '\n';
  out << line;
  for (const TraceRow& r : trace.rows) {
    line.clear();
    for (double v : {r.t, r.x, r.y, r.theta, r.xhat, r.yhat, r.thetahat, r.q, r.g[0], r.g[1],
                     r.g[2], r.u[0], r.u[1], r.xi}) {
      put(line, v);
      line += ',';
    }
    line += r.event ? '1' : '0';
    if (trace.average) line += ",average";
    line += '\n';
    out << line;
  }
}

SimulationTrace read_trace_csv(std::istream& in) {
  SimulationTrace trace;
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("trace csv: missing header");
  if (line == std::string(kTraceHeader) + ",system") {
    trace.average = true;
  } else if (line != kTraceHeader) {
    throw ValidationError("trace csv: unexpected header '" + line + "'");
  }
  const std::size_t columns = trace.average ? 16 : 15;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != columns)
      throw ValidationError("trace csv line " + std::to_string(line_no) + ": expected " +
                            std::to_string(columns) + " fields");
    TraceRow r;
    double* slots[] = {&r.t,    &r.x,    &r.y,      &r.theta, &r.xhat, &r.yhat, &r.thetahat,
                       &r.q,    &r.g[0], &r.g[1],   &r.g[2],  &r.u[0], &r.u[1], &r.xi};
    for (std::size_t i = 0; i < 14; ++i) *slots[i] = parse_field(f[i], line_no);
    if (f[14] != "0" && f[14] != "1")
      throw ValidationError("trace csv line " + std::to_string(line_no) + ": event must be 0 or 1");
    r.event = f[14] == "1";
    trace.rows.push_back(r);
    if (r.event) trace.events.push_back({r.t, GradientEstimate{r.g}, r.u});
  }
  if (trace.rows.size() >= 2) trace.dt = trace.rows[1].t - trace.rows[0].t;
  return trace;
}

void export_trace(const SimulationTrace& trace, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open trace output " + path.string());
  write_trace_csv(out, trace);
  out.flush();
  if (!out) throw IoError("failed writing trace to " + path.string());
}

nlohmann::json to_json(const TheoryReport& r) {
  nlohmann::json eig = nlohmann::json::array();
  for (const auto& z : r.eigenvalues) eig.push_back({{"re", z.real()}, {"im", z.imag()}});
  nlohmann::json avg = nlohmann::json::array();
  for (const auto& rec : r.averaging_sup_error)
    avg.push_back({{"omega3", rec.omega3}, {"sup_error", finite_or_null(rec.sup_error)}});

  nlohmann::json j = {
      {"hurwitz", r.hurwitz},
      {"eigenvalues", eig},
      {"alpha", r.alpha},
      {"alpha_min", r.certificate ? nlohmann::json(r.alpha_min) : nlohmann::json(nullptr)},
      {"alpha_ok", r.alpha_ok},
      {"tau_star", r.certificate ? nlohmann::json(r.tau_star) : nlohmann::json(nullptr)},
      {"min_inter_event", finite_or_null(r.min_inter_event)},
      {"average_events", r.average_events},
      {"decay_rate", r.decay_rate},
      {"decay_violations", r.envelope_violations},
      {"trigger_floor", r.trigger_floor},
      {"delta_bar_norm", r.delta_bar_norm},
      {"delta_bar_bound", r.delta_bar_bound},
      {"residual_scale", r.residual_scale},
      {"residual_scale_quoted", r.residual_scale_quoted},
      {"averaging_sup_error", avg},
  };
  if (r.certificate) {
    j["lyapunov"] = {{"P", matrix(r.certificate->p)},
                     {"Q", matrix(r.certificate->q)},
                     {"residual", r.certificate->residual}};
  }
  return j;
}

nlohmann::json to_json(const RunMetrics& m) {
  nlohmann::json j = {
      {"mode", std::string(to_string(m.mode))},
      {"num_steps", m.num_steps},
      {"num_events", m.num_events},
      {"min_inter_event", optional_number(m.min_inter_event)},
      {"mean_inter_event", optional_number(m.mean_inter_event)},
      {"final_error_norm", finite_or_null(m.final_error_norm)},
      {"final_state", {m.final_state.x, m.final_state.y, m.final_state.theta}},
      {"tau_star", nullptr},
      {"alpha_min", nullptr},
      {"hurwitz", nullptr},
      {"decay_violations", nullptr},
      {"averaging_sup_error", nullptr},
      {"warnings", m.warnings},
  };
  if (m.theory) {
    const nlohmann::json t = to_json(*m.theory);
    for (const char* key :
         {"tau_star", "alpha_min", "hurwitz", "decay_violations", "averaging_sup_error"})
      j[key] = t[key];
    j["theory"] = t;
  }
  return j;
}

void export_json(const nlohmann::json& doc, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open metrics output " + path.string());
  out << doc.dump(2) << '\n';
  out.flush();
  if (!out) throw IoError("failed writing metrics to " + path.string());
}

void export_metrics(const RunMetrics& metrics, const std::filesystem::path& path) {
  export_json(to_json(metrics), path);
}

}  // namespace etssc
