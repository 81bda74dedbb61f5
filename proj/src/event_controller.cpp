#include "etssc/event_controller.hpp"

#include <cmath>
#include <string>

#include "etssc/bessel.hpp"
#include "etssc/errors.hpp"

namespace etssc {

void validate(const TriggerConstants& c) {
  if (!(c.sigma > 0.0 && c.sigma < 1.0))
    throw ValidationError("trigger.sigma must lie in (0, 1), got " + std::to_string(c.sigma));
  if (!(c.alpha > 0.0) || !std::isfinite(c.alpha))
    throw ValidationError("trigger.alpha must be finite and > 0, got " + std::to_string(c.alpha));
  if (!(c.bias >= 0.0) || !std::isfinite(c.bias))
    throw ValidationError("trigger bias must be finite and >= 0");
}

TriggerConstants make_trigger_constants(double sigma, double alpha, const DitherParams& d) {
  TriggerConstants c{sigma, alpha, d.a1 * d.omega3 * std::fabs(bessel_j(2, d.a3))};
  validate(c);
  return c;
}

Vec3 error_vector(const GradientEstimate& held, const GradientEstimate& current) {
  return held.value - current.value;
}

double trigger_value(const GradientEstimate& current, const Vec3& error, const TriggerConstants& c) {
  return c.sigma * norm(current.value) - c.alpha * (norm(error) + c.bias);
}

Vec2 control_input(const GainMatrix& gain, const GradientEstimate& latched) {
  return -(gain.k * latched.value);
}

void TriggerState::check_time(double t) {
  if (!std::isfinite(t))
    throw ValidationError("step_trigger: non-finite time");
  if (started() && !(t > last_time_))
    throw ValidationError("step_trigger: time must strictly increase (got " + std::to_string(t) +
                          " after " + std::to_string(last_time_) + ")");
}

void TriggerState::latch(double t, const GradientEstimate& g, const GainMatrix& gain) {
  held_g_ = g;
  held_u_ = control_input(gain, g);
  events_.push_back({t, held_g_, held_u_});
}

TriggerStep TriggerState::peek(const GradientEstimate& current, const TriggerConstants& c) const {
  const Vec3 e = started() ? error_vector(held_g_, current) : Vec3{};
  return {false, trigger_value(current, e, c), e};
}

TriggerStep TriggerState::step(double t, const GradientEstimate& current, const TriggerConstants& c,
                               const GainMatrix& gain) {
  check_time(t);
  const bool first = !started();
  TriggerStep s = peek(current, c);
  last_time_ = t;
  if (first || s.xi < 0.0) {
    latch(t, current, gain);
    s.event = true;
    s.error = error_vector(held_g_, current);
  }
  return s;
}

TriggerStep TriggerState::force(double t, const GradientEstimate& current, const TriggerConstants& c,
                                const GainMatrix& gain) {
  check_time(t);
  TriggerStep s = peek(current, c);
  last_time_ = t;
  latch(t, current, gain);
  s.event = true;
  s.error = error_vector(held_g_, current);
  return s;
}

}  // namespace etssc
