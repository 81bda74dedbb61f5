#pragma once

#include <vector>

#include "etssc/gradient_estimator.hpp"
#include "etssc/linalg.hpp"
#include "etssc/vehicle.hpp"

namespace etssc {

/// Constants of the static trigger
///   Xi = sigma*|G| - alpha*(|e| + bias),   bias = a1*w3*|J2(a3)|.
struct TriggerConstants {
  double sigma = 0.5;
  double alpha = 0.0;
  double bias = 0.0;
};

/// Builds the constants with the bias derived from the dithers. Throws
/// ValidationError (naming trigger.sigma / trigger.alpha) on bad input.
TriggerConstants make_trigger_constants(double sigma, double alpha, const DitherParams& d);

void validate(const TriggerConstants& c);

/// State feedback gain, u = -K * G.
struct GainMatrix {
  Mat23 k{};
};

/// e = G(t_k) - G(t).
Vec3 error_vector(const GradientEstimate& held, const GradientEstimate& current);

double trigger_value(const GradientEstimate& current, const Vec3& error, const TriggerConstants& c);

Vec2 control_input(const GainMatrix& gain, const GradientEstimate& latched);

struct TriggerEvent {
  double t = 0.0;
  GradientEstimate latched;
  Vec2 u{};
};

struct TriggerStep {
  bool event = false;
  double xi = 0.0;  // value that was tested, before any reset
  Vec3 error{};     // error after the step; zero when an event fired
};

/// Zero-order-hold state of the event-triggered controller. One instance per
/// simulation run.
///
/// The first observation is always an event (t0). After that an event fires
/// at the first observation with Xi < 0; Xi == 0 does not fire.
class TriggerState {
 public:
  /// Evaluates the trigger at `t` and latches `current` if it fires.
  /// Throws ValidationError when `t` does not strictly exceed the previous
  /// observation time.
  TriggerStep step(double t, const GradientEstimate& current, const TriggerConstants& c,
                   const GainMatrix& gain);

  /// Unconditional update, used by the periodic and continuous baselines.
  TriggerStep force(double t, const GradientEstimate& current, const TriggerConstants& c,
                    const GainMatrix& gain);

  /// Trigger value and error against the held sample, without mutation.
  TriggerStep peek(const GradientEstimate& current, const TriggerConstants& c) const;

  bool started() const { return !events_.empty(); }
  const GradientEstimate& held_gradient() const { return held_g_; }
  const Vec2& held_control() const { return held_u_; }
  double last_event_time() const { return events_.empty() ? 0.0 : events_.back().t; }
  const std::vector<TriggerEvent>& events() const { return events_; }

 private:
  void check_time(double t);
  void latch(double t, const GradientEstimate& g, const GainMatrix& gain);

  GradientEstimate held_g_{};
  Vec2 held_u_{};
  double last_time_ = 0.0;
  std::vector<TriggerEvent> events_;
};

}  // namespace etssc
