#include "etssc/bessel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "etssc/errors.hpp"

namespace etssc {
namespace {

void check_args(int m, double x) {
  if (m < 0) throw ValidationError("bessel: order must be >= 0, got " + std::to_string(m));
  if (!std::isfinite(x)) throw ValidationError("bessel: argument must be finite");
}

}  // namespace

double bessel_j(int m, double x) {
  check_args(m, x);
  const double half = 0.5 * x;
  // Leading term (x/2)^m / m!
  double term = 1.0;
  for (int i = 1; i <= m; ++i) term *= half / i;
  const double h2 = half * half;
  double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= -h2 / (static_cast<double>(k) * (k + m));
    sum += term;
    if (std::fabs(term) <= 1e-17 * std::fabs(sum) && k > 2) break;
    if (term == 0.0) break;
  }
  return sum;
}

double bessel_j_quadrature(int m, double x, int panels) {
  check_args(m, x);
  if (panels < 2 || panels % 2 != 0)
    throw ValidationError("bessel_j_quadrature: panel count must be even and >= 2");
  const double h = std::numbers::pi / panels;
  auto f = [&](double tau) { return std::cos(x * std::sin(tau) - m * tau); };
  double s = f(0.0) + f(std::numbers::pi);
  for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
  return s * h / 3.0 / std::numbers::pi;
}

}  // namespace etssc
