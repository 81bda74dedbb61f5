#include "etssc/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

#include "etssc/bessel.hpp"
#include "etssc/errors.hpp"

namespace etssc {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::optional<double> parse_plain_number(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

// Accepts a plain number or one of  pi, -pi, c*pi, pi/d, c*pi/d.
std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  const auto pos = s.find("pi");
  if (pos == std::string_view::npos) return parse_plain_number(s);
  double coef = 1.0;
  std::string_view head = trim(s.substr(0, pos));
  if (head == "-") {
    coef = -1.0;
  } else if (!head.empty()) {
    if (head.back() != '*') return std::nullopt;
    const auto c = parse_plain_number(head.substr(0, head.size() - 1));
    if (!c) return std::nullopt;
    coef = *c;
  }
  double div = 1.0;
  std::string_view tail = trim(s.substr(pos + 2));
  if (!tail.empty()) {
    if (tail.front() != '/') return std::nullopt;
    const auto d = parse_plain_number(tail.substr(1));
    if (!d || *d == 0.0) return std::nullopt;
    div = *d;
  }
  return coef * std::numbers::pi / div;
}

std::optional<bool> parse_bool(std::string_view s) {
  s = trim(s);
  if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
  if (s == "false" || s == "no" || s == "off" || s == "0") return false;
  return std::nullopt;
}

class Config {
 public:
  Config(std::string_view text, std::string_view origin) : origin_(origin) {
    std::string section;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    for (std::string raw; std::getline(in, raw);) {
      ++line_no;
      std::string_view line = raw;
      if (const auto c = line.find_first_of("#;"); c != std::string_view::npos)
        line = line.substr(0, c);
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') fail(line_no, "unterminated section header");
        section = std::string(trim(line.substr(1, line.size() - 2)));
        if (!kKnownSections.contains(section)) fail(line_no, "unknown section [" + section + "]");
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) fail(line_no, "expected key = value");
      if (section.empty()) fail(line_no, "key outside of any section");
      const std::string key = section + "." + std::string(trim(line.substr(0, eq)));
      if (values_.contains(key)) fail(line_no, "duplicate key " + key);
      values_[key] = std::string(trim(line.substr(eq + 1)));
    }
  }

  std::optional<std::string> raw(const std::string& key) {
    const auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    used_.insert(key);
    return it->second;
  }

  double number(const std::string& key) {
    const auto v = optional_number(key);
    if (!v) throw ValidationError(origin_ + ": missing key " + key);
    return *v;
  }

  std::optional<double> optional_number(const std::string& key) {
    const auto s = raw(key);
    if (!s) return std::nullopt;
    const auto v = parse_number(*s);
    if (!v) throw ValidationError(origin_ + ": " + key + " expects a number, got '" + *s + "'");
    return v;
  }

  // Angle keys accept a `_deg` suffixed variant in degrees.
  double angle(const std::string& key) {
    const auto rad = optional_number(key);
    const auto deg = optional_number(key + "_deg");
    if (rad && deg) throw ValidationError(origin_ + ": both " + key + " and " + key + "_deg given");
    if (deg) return *deg * std::numbers::pi / 180.0;
    if (!rad) throw ValidationError(origin_ + ": missing key " + key);
    return *rad;
  }

  bool boolean(const std::string& key, bool fallback) {
    const auto s = raw(key);
    if (!s) return fallback;
    const auto v = parse_bool(*s);
    if (!v) throw ValidationError(origin_ + ": " + key + " expects true/false, got '" + *s + "'");
    return *v;
  }

  template <std::size_t N>
  Vec<N> row(const std::string& key) {
    const auto s = raw(key);
    if (!s) throw ValidationError(origin_ + ": missing key " + key);
    std::string text = *s;
    for (char& c : text)
      if (c == ',') c = ' ';
    std::istringstream in(text);
    std::vector<double> vals;
    for (std::string tok; in >> tok;) {
      const auto v = parse_number(tok);
      if (!v) throw ValidationError(origin_ + ": " + key + " has non-numeric entry '" + tok + "'");
      vals.push_back(*v);
    }
    if (vals.size() != N)
      throw ValidationError(origin_ + ": " + key + " expects " + std::to_string(N) + " numbers, got " +
                            std::to_string(vals.size()));
    Vec<N> out{};
    std::copy(vals.begin(), vals.end(), out.begin());
    return out;
  }

  void reject_unused() const {
    for (const auto& [key, value] : values_)
      if (!used_.contains(key)) throw ValidationError(origin_ + ": unknown key " + key);
  }

 private:
  [[noreturn]] void fail(std::size_t line, const std::string& what) const {
    throw ValidationError(origin_ + ":" + std::to_string(line) + ": " + what);
  }

  static inline const std::set<std::string> kKnownSections{"field", "dithers", "gain", "trigger",
                                                           "run"};
  std::string origin_;
  std::map<std::string, std::string> values_;
  std::set<std::string> used_;
};

void require_finite(double v, const char* key) {
  if (!std::isfinite(v)) throw ValidationError(std::string(key) + " must be finite");
}

}  // namespace

RunMode parse_mode(std::string_view name) {
  if (name == "full") return RunMode::full;
  if (name == "average") return RunMode::average;
  if (name == "continuous" || name == "continuous-control") return RunMode::continuous;
  if (name == "sampled" || name == "sampled-data") return RunMode::sampled;
  throw ValidationError("run.mode must be one of full|average|continuous|sampled, got '" +
                        std::string(name) + "'");
}

std::string_view to_string(RunMode mode) {
  switch (mode) {
    case RunMode::full: return "full";
    case RunMode::average: return "average";
    case RunMode::continuous: return "continuous";
    case RunMode::sampled: return "sampled";
  }
  return "full";
}

void refresh_trigger_bias(Scenario& s) {
  s.trigger.bias = s.dithers.a1 * s.dithers.omega3 * std::fabs(bessel_j(2, s.dithers.a3));
}

void validate(const Scenario& s) {
  require_finite(s.field.x_star, "field.x_star");
  require_finite(s.field.y_star, "field.y_star");
  require_finite(s.field.theta_star, "field.theta_star");
  require_finite(s.field.q_star, "field.q_star");
  validate(s.dithers, s.frequency_override);
  if (!all_finite(s.gain.k)) throw ValidationError("gain rows must be finite");
  validate(s.trigger);
  require_finite(s.initial.x, "run.x0");
  require_finite(s.initial.y, "run.y0");
  require_finite(s.initial.theta, "run.theta0");
  if (!(s.dt > 0.0) || !std::isfinite(s.dt)) throw ValidationError("run.dt must be > 0");
  if (!(s.t_final >= s.dt) || !std::isfinite(s.t_final))
    throw ValidationError("run.t_final must be >= run.dt");
  if (s.mode == RunMode::sampled && !(s.sample_period >= s.dt))
    throw ValidationError("run.sample_period must be >= run.dt in sampled mode");
}

Scenario parse_scenario(std::string_view text, std::string_view origin) {
  Config cfg(text, origin);
  Scenario s;
  s.field.x_star = cfg.number("field.x_star");
  s.field.y_star = cfg.number("field.y_star");
  s.field.theta_star = cfg.angle("field.theta_star");
  s.field.q_star = cfg.number("field.q_star");

  s.dithers.a1 = cfg.number("dithers.a1");
  s.dithers.a2 = cfg.number("dithers.a2");
  s.dithers.a3 = cfg.number("dithers.a3");
  s.dithers.omega1 = cfg.number("dithers.omega1");
  s.dithers.omega2 = cfg.number("dithers.omega2");
  s.dithers.omega3 = cfg.number("dithers.omega3");
  s.frequency_override = cfg.boolean("dithers.frequency_override", false);

  const Vec3 r1 = cfg.row<3>("gain.row1");
  const Vec3 r2 = cfg.row<3>("gain.row2");
  s.gain.k = {r1, r2};

  s.trigger.sigma = cfg.number("trigger.sigma");
  s.trigger.alpha = cfg.number("trigger.alpha");

  s.initial.x = cfg.number("run.x0");
  s.initial.y = cfg.number("run.y0");
  s.initial.theta = cfg.angle("run.theta0");
  s.dt = cfg.optional_number("run.dt").value_or(1e-4);
  s.t_final = cfg.optional_number("run.t_final").value_or(60.0);
  if (const auto m = cfg.raw("run.mode")) s.mode = parse_mode(*m);
  s.sample_period = cfg.optional_number("run.sample_period").value_or(0.0);
  cfg.reject_unused();

  // Amplitudes are checked before the bias needs them.
  validate(s.dithers, s.frequency_override);
  refresh_trigger_bias(s);
  validate(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.string());
}

Scenario with_base_frequency(const Scenario& s, double omega3) {
  if (!(omega3 > 0.0) || !std::isfinite(omega3))
    throw ValidationError("base frequency must be finite and > 0");
  const double f = omega3 / s.dithers.omega3;
  Scenario out = s;
  out.dithers.omega1 *= f;
  out.dithers.omega2 *= f;
  out.dithers.omega3 = omega3;
  out.dithers.a1 /= f;
  out.dithers.a2 /= f;
  out.dithers.a3 /= f;
  refresh_trigger_bias(out);
  validate(out);
  return out;
}

}  // namespace etssc
