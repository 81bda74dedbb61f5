#include "etssc/average_model.hpp"

#include <cmath>
#include <numbers>

#include "etssc/bessel.hpp"
#include "etssc/errors.hpp"
#include "etssc/integrator.hpp"

namespace etssc {

AverageModel build_average_matrices(double theta_star, const DitherParams& d) {
  constexpr double pi = std::numbers::pi;
  const double r = std::numbers::sqrt2 / 2.0;
  const double j0 = bessel_j(0, d.a3);
  const double j2 = bessel_j(2, d.a3);
  const double plus = std::cos(2.0 * theta_star + pi / 4.0);
  const double minus = std::cos(2.0 * theta_star - pi / 4.0);
  const double scale = r * d.a1 * d.omega3 * j2;

  AverageModel m;
  m.a[0][2] = scale * plus;
  m.a[1][2] = scale * minus;
  m.b[0][0] = 0.5 + r * minus * j0;
  m.b[1][0] = 0.5 - r * plus * j0;
  m.b[2][1] = 1.0;
  m.delta_bar = {scale * minus, -(scale * minus), 0.0};
  m.period = 2.0 * pi / d.omega3;
  return m;
}

DeltaBarBound delta_bar_norm_bound(const AverageModel& model, const DitherParams& d) {
  return {norm(model.delta_bar), d.a1 * d.omega3 * std::fabs(bessel_j(2, d.a3))};
}

Mat3 closed_loop(const AverageModel& model, const GainMatrix& gain) {
  return model.a - model.b * gain.k;
}

Vec3 average_derivative(const Vec3& g_av, const Vec3& e_av, const AverageModel& model,
                        const GainMatrix& gain) {
  const Mat3 bk = model.b * gain.k;
  return (model.a - bk) * g_av - bk * e_av + model.delta_bar;
}

AverageTrace run_average_loop(const AverageModel& model, const GainMatrix& gain,
                              const TriggerConstants& c, const Vec3& g0, double dt,
                              double t_final, AverageControl control) {
  if (!(dt > 0.0)) throw ValidationError("run.dt must be > 0");
  if (!(t_final >= dt)) throw ValidationError("run.t_final must be >= run.dt");
  const auto steps = static_cast<std::size_t>(std::llround(t_final / dt));

  AverageTrace out;
  out.dt = dt;
  out.samples.reserve(steps);
  TriggerState trigger;
  Vec3 g = g0;
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const GradientEstimate current{g};
    const TriggerStep s = control == AverageControl::continuous
                              ? trigger.force(t, current, c, gain)
                              : trigger.step(t, current, c, gain);
    out.samples.push_back({t, g, s.error, trigger.held_control(), s.xi, s.event});

    const Vec3 held = trigger.held_gradient().value;
    g = integrate_step<3>(
        [&](double, const Vec3& x) { return average_derivative(x, held - x, model, gain); }, g,
        t, dt);
  }
  out.final_g = g;
  out.events = trigger.events();
  return out;
}

}  // namespace etssc
