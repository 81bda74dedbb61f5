#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "etssc/event_controller.hpp"
#include "etssc/scalar_field.hpp"
#include "etssc/vehicle.hpp"

namespace etssc {

enum class RunMode {
  full,        // event-triggered nonlinear loop
  average,     // averaged linear loop under the average trigger
  continuous,  // u = -K G(t) at every step
  sampled,     // u updated every sample_period seconds
};

RunMode parse_mode(std::string_view name);
std::string_view to_string(RunMode mode);

/// Everything needed to reproduce one run.
struct Scenario {
  QuadraticField field;
  DitherParams dithers;
  GainMatrix gain;
  TriggerConstants trigger;  // bias derived from dithers
  VehicleState initial;
  double dt = 1e-4;
  double t_final = 60.0;
  bool frequency_override = false;
  RunMode mode = RunMode::full;
  double sample_period = 0.0;  // only for RunMode::sampled
};

/// Throws ValidationError naming the offending section.key.
void validate(const Scenario& s);

/// Parses the INI-style configuration (sections [field], [dithers], [gain],
/// [trigger], [run]). `origin` is used in error messages. The trigger bias is
/// derived from the dithers; the result is validated.
Scenario parse_scenario(std::string_view text, std::string_view origin = "<string>");

/// Reads and parses a configuration file. Throws IoError if unreadable.
Scenario load_scenario(const std::filesystem::path& path);

/// Returns a copy with the fundamental frequency moved to `omega3`: every
/// omega_i is scaled by omega3/s.dithers.omega3 and every amplitude by the
/// inverse, so the a_i*omega_i products stay fixed. The trigger bias is
/// re-derived.
Scenario with_base_frequency(const Scenario& s, double omega3);

/// Recomputes trigger.bias from the current dithers.
void refresh_trigger_bias(Scenario& s);

}  // namespace etssc
