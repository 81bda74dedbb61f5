#pragma once

namespace etssc {

/// J_m(x), Bessel function of the first kind, integer order m >= 0.
///
/// Evaluated by its power series. Accurate to ~1e-12 absolute for |x| <= 10,
/// which comfortably covers dither amplitudes. Throws ValidationError for a
/// non-finite argument or a negative order.
double bessel_j(int m, double x);

/// Same function through its integral representation
///   J_m(x) = (1/pi) * int_0^pi cos(x sin(tau) - m tau) dtau
/// using composite Simpson with a fixed panel count. Kept as an independent
/// cross-check of bessel_j.
double bessel_j_quadrature(int m, double x, int panels = 2048);

}  // namespace etssc
