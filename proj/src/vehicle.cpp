#include "etssc/vehicle.hpp"

#include <cmath>
#include <string>

#include "etssc/errors.hpp"

namespace etssc {
namespace {

void require_positive(double v, const char* key) {
  if (!std::isfinite(v) || v <= 0.0)
    throw ValidationError(std::string("dithers.") + key + " must be finite and > 0, got " +
                          std::to_string(v));
}

bool nearly_equal(double a, double b) {
  return std::fabs(a - b) <= 1e-12 * std::fmax(std::fabs(a), std::fabs(b));
}

}  // namespace

void validate(const DitherParams& d, bool frequency_override) {
  require_positive(d.a1, "a1");
  require_positive(d.a2, "a2");
  require_positive(d.a3, "a3");
  require_positive(d.omega1, "omega1");
  require_positive(d.omega2, "omega2");
  require_positive(d.omega3, "omega3");
  if (frequency_override) return;
  if (!nearly_equal(d.omega1, 2.0 * d.omega3) || !nearly_equal(d.omega2, 2.0 * d.omega3))
    throw ValidationError(
        "dithers.omega1/omega2 must equal 2*omega3 (set dithers.frequency_override = true "
        "to relax); got omega1=" +
        std::to_string(d.omega1) + " omega2=" + std::to_string(d.omega2) +
        " omega3=" + std::to_string(d.omega3));
}

Velocities dither_velocities(const DitherParams& d, double t, double theta, const Vec2& u) {
  const double v = std::cos(theta) * (d.a1 * d.omega1 * std::cos(d.omega1 * t) + u[0]) +
                   std::sin(theta) * (d.a2 * d.omega2 * std::sin(d.omega2 * t) + u[0]);
  const double w = 0.5 * d.a3 * d.omega3 * std::cos(d.omega3 * t) + u[1];
  return {v, w};
}

Vec3 state_derivative(const VehicleState& s, double v, double omega) {
  return {v * std::cos(s.theta), v * std::sin(s.theta), omega};
}

Vec3 dither_offset(const DitherParams& d, double t) {
  return {0.5 * d.a1 * std::sin(d.omega1 * t), -0.5 * d.a2 * std::cos(d.omega2 * t),
          0.5 * d.a3 * std::sin(d.omega3 * t)};
}

Vec3 estimator_pose(const VehicleState& s, const DitherParams& d, double t) {
  return s.as_vec() - dither_offset(d, t);
}

}  // namespace etssc
