#pragma once

#include "etssc/linalg.hpp"
#include "etssc/vehicle.hpp"

namespace etssc {

/// Demodulated gradient estimate G_hat = M(t) * Q. In the averaged loop it
/// coincides with the estimation error q_tilde.
struct GradientEstimate {
  Vec3 value{};

  friend bool operator==(const GradientEstimate&, const GradientEstimate&) = default;
};

/// M(t) = [-(4/a1) sin(w1 t), (4/a2) cos(w2 t), -(4/a3) sin(w3 t)].
/// Throws ValidationError on a zero (or non-positive) amplitude.
Vec3 demodulation_vector(const DitherParams& d, double t);

GradientEstimate gradient_estimate(const Vec3& demodulation, double measured);

}  // namespace etssc
