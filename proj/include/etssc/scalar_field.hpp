#pragma once

#include "etssc/linalg.hpp"
#include "etssc/vehicle.hpp"

namespace etssc {

/// Quadratic signal field with a single maximum Q* at (x*, y*, theta*).
struct QuadraticField {
  double x_star = 0.0;
  double y_star = 0.0;
  double theta_star = 0.0;
  double q_star = 0.0;

  Vec3 maximizer() const { return {x_star, y_star, theta_star}; }
};

/// Signal measured at `pose`. This is the only view of the field the
/// controller gets.
double evaluate(const QuadraticField& field, const VehicleState& pose);

namespace testing {

/// Analytic gradient of `evaluate`. Test oracle only; no control path may
/// call it.
Vec3 gradient(const QuadraticField& field, const VehicleState& pose);

}  // namespace testing

}  // namespace etssc
