#pragma once

#include <string>

#include "etssc/errors.hpp"
#include "etssc/linalg.hpp"

namespace etssc {

/// One classical fourth-order Runge-Kutta step of dx/dt = f(t, x).
///
/// Anything held by the caller (the ZOH control) is constant across the four
/// stages. Throws NumericalError when the new state is not finite.
template <std::size_t N, typename Derivative>
Vec<N> integrate_step(Derivative&& f, const Vec<N>& x, double t, double dt) {
  if (!(dt > 0.0)) throw ValidationError("integrate_step: dt must be > 0");
  const double h2 = 0.5 * dt;
  const Vec<N> k1 = f(t, x);
  const Vec<N> k2 = f(t + h2, x + h2 * k1);
  const Vec<N> k3 = f(t + h2, x + h2 * k2);
  const Vec<N> k4 = f(t + dt, x + dt * k3);
  Vec<N> next{};
  for (std::size_t i = 0; i < N; ++i)
    next[i] = x[i] + dt * ((k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]) / 6.0);
  if (!all_finite(next))
    throw NumericalError("integrate_step: non-finite state at t=" + std::to_string(t + dt));
  return next;
}

}  // namespace etssc
