#include "etssc/scalar_field.hpp"

namespace etssc {

double evaluate(const QuadraticField& field, const VehicleState& pose) {
  const double dx = pose.x - field.x_star;
  const double dy = pose.y - field.y_star;
  const double dth = pose.theta - field.theta_star;
  return field.q_star - 0.5 * dx * dx - 0.5 * dy * dy - 0.5 * dth * dth;
}

namespace testing {

Vec3 gradient(const QuadraticField& field, const VehicleState& pose) {
  return {-(pose.x - field.x_star), -(pose.y - field.y_star),
          -(pose.theta - field.theta_star)};
}

}  // namespace testing

}  // namespace etssc
