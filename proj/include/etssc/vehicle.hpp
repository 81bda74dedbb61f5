#pragma once

#include "etssc/linalg.hpp"

namespace etssc {

/// Planar pose of the robot center. Heading is unwrapped.
struct VehicleState {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  Vec3 as_vec() const { return {x, y, theta}; }
  static VehicleState from_vec(const Vec3& v) { return {v[0], v[1], v[2]}; }
};

/// Probing signal amplitudes and frequencies.
struct DitherParams {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
  double omega1 = 0.0;
  double omega2 = 0.0;
  double omega3 = 0.0;
};

/// Checks amplitudes and frequencies. Unless `frequency_override` is set the
/// frequencies must satisfy omega1 == omega2 == 2 * omega3. Throws
/// ValidationError naming the offending key under `dithers.`.
void validate(const DitherParams& d, bool frequency_override = false);

struct Velocities {
  double v = 0.0;      // linear, m/s
  double omega = 0.0;  // angular, rad/s
};

/// Dithered tuning laws for the forward and turn-rate commands.
Velocities dither_velocities(const DitherParams& d, double t, double theta, const Vec2& u);

/// Unicycle kinematics.
Vec3 state_derivative(const VehicleState& s, double v, double omega);

/// Dither offset S(t), so that q(t) = q_hat(t) + S(t).
Vec3 dither_offset(const DitherParams& d, double t);

/// Pose with the dither offset removed, (x_hat, y_hat, theta_hat).
Vec3 estimator_pose(const VehicleState& s, const DitherParams& d, double t);

}  // namespace etssc
