#include "etssc/gradient_estimator.hpp"

#include <cmath>

#include "etssc/errors.hpp"

namespace etssc {

Vec3 demodulation_vector(const DitherParams& d, double t) {
  if (!(d.a1 > 0.0) || !(d.a2 > 0.0) || !(d.a3 > 0.0))
    throw ValidationError("demodulation_vector: dither amplitudes must be > 0");
  return {-(4.0 / d.a1) * std::sin(d.omega1 * t), (4.0 / d.a2) * std::cos(d.omega2 * t),
          -(4.0 / d.a3) * std::sin(d.omega3 * t)};
}

GradientEstimate gradient_estimate(const Vec3& demodulation, double measured) {
  return {measured * demodulation};
}

}  // namespace etssc
