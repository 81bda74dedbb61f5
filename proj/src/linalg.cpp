#include "etssc/linalg.hpp"

#include <algorithm>

namespace etssc {
namespace {

struct Cubic {
  // lambda^3 + c2 lambda^2 + c1 lambda + c0
  double c2, c1, c0;

  double operator()(double x) const { return ((x + c2) * x + c1) * x + c0; }
  double slope(double x) const { return (3.0 * x + 2.0 * c2) * x + c1; }
};

Cubic characteristic(const Mat3& a) {
  const double tr = a[0][0] + a[1][1] + a[2][2];
  const double minors = a[0][0] * a[1][1] - a[0][1] * a[1][0] +
                        a[0][0] * a[2][2] - a[0][2] * a[2][0] +
                        a[1][1] * a[2][2] - a[1][2] * a[2][1];
  const double det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                     a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                     a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  return {-tr, minors, -det};
}

// Newton steps that are only accepted while they shrink the residual.
double polish(const Cubic& p, double x) {
  for (int it = 0; it < 8; ++it) {
    const double d = p.slope(x);
    if (d == 0.0) break;
    const double next = x - p(x) / d;
    if (!(std::fabs(p(next)) < std::fabs(p(x)))) break;
    x = next;
  }
  return x;
}

double real_root(const Cubic& p) {
  const double bound =
      1.0 + std::max({std::fabs(p.c2), std::fabs(p.c1), std::fabs(p.c0)});
  double lo = -bound;
  double hi = bound;
  // p(-bound) < 0 < p(bound) for a monic cubic with Cauchy bound.
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (p(mid) < 0.0 ? lo : hi) = mid;
  }
  return polish(p, 0.5 * (lo + hi));
}

}  // namespace

std::array<std::complex<double>, 3> eigenvalues(const Mat3& a) {
  const Cubic p = characteristic(a);
  const double r = real_root(p);
  // Deflate: p(x) = (x - r)(x^2 + b x + c)
  const double b = p.c2 + r;
  const double c = p.c1 + r * b;
  const double disc = b * b - 4.0 * c;
  std::array<std::complex<double>, 3> out{};
  out[0] = {r, 0.0};
  if (disc >= 0.0) {
    const double s = std::sqrt(disc);
    // Stable quadratic roots.
    const double q = -0.5 * (b + (b >= 0.0 ? s : -s));
    const double r1 = q != 0.0 ? q : 0.0;
    const double r2 = q != 0.0 ? c / q : 0.0;
    out[1] = {polish(p, r1), 0.0};
    out[2] = {polish(p, r2), 0.0};
  } else {
    const double s = std::sqrt(-disc);
    out[1] = {-0.5 * b, 0.5 * s};
    out[2] = {-0.5 * b, -0.5 * s};
  }
  std::sort(out.begin(), out.end(),
            [](const auto& x, const auto& y) { return x.real() < y.real(); });
  return out;
}

Vec3 symmetric_eigenvalues(const Mat3& a) {
  // Cyclic Jacobi rotations. The cubic route loses ~sqrt(eps) on nearly
  // repeated roots, which Gram matrices of P*Acl hit structurally.
  Mat3 m = a;
  for (int sweep = 0; sweep < 64; ++sweep) {
    const double off = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
    const double diag = m[0][0] * m[0][0] + m[1][1] * m[1][1] + m[2][2] * m[2][2];
    if (off == 0.0 || off <= 1e-36 * diag) break;
    for (std::size_t p = 0; p < 2; ++p) {
      for (std::size_t q = p + 1; q < 3; ++q) {
        if (m[p][q] == 0.0) continue;
        const double theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < 3; ++k) {
          const double mkp = m[k][p];
          const double mkq = m[k][q];
          m[k][p] = c * mkp - s * mkq;
          m[k][q] = s * mkp + c * mkq;
        }
        for (std::size_t k = 0; k < 3; ++k) {
          const double mpk = m[p][k];
          const double mqk = m[q][k];
          m[p][k] = c * mpk - s * mqk;
          m[q][k] = s * mpk + c * mqk;
        }
      }
    }
  }
  Vec3 ev{m[0][0], m[1][1], m[2][2]};
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace etssc
