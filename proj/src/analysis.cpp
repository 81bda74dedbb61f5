#include "etssc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "etssc/errors.hpp"

namespace etssc {

bool hurwitz_check(const Mat3& acl) {
  if (!all_finite(acl)) return false;
  const auto ev = eigenvalues(acl);
  return std::all_of(ev.begin(), ev.end(), [](const auto& z) { return z.real() < -1e-9; });
}

LyapunovCertificate solve_lyapunov(const Mat3& acl, const Mat3& q) {
  if (max_abs(q - transpose(q)) > 1e-12 * std::fmax(1.0, max_abs(q)) ||
      symmetric_eigenvalues(q)[0] <= 0.0)
    throw ValidationError("solve_lyapunov: Q must be symmetric positive definite");
  if (!hurwitz_check(acl)) throw NumericalError("solve_lyapunov: closed loop is not Hurwitz");

  // Unknown P(k,l) lives at 3k+l. Row (i,j) encodes
  //   sum_k Acl(k,i) P(k,j) + sum_k P(i,k) Acl(k,j) = -Q(i,j).
  Mat<9, 9> lhs{};
  Vec<9> rhs{};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      const std::size_t row = 3 * i + j;
      for (std::size_t k = 0; k < 3; ++k) {
        lhs[row][3 * k + j] += acl[k][i];
        lhs[row][3 * i + k] += acl[k][j];
      }
      rhs[row] = -q[i][j];
    }
  }
  Vec<9> x{};
  if (!solve_dense<9>(lhs, rhs, x)) throw NumericalError("solve_lyapunov: singular system");

  LyapunovCertificate cert;
  cert.q = q;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) cert.p[i][j] = 0.5 * (x[3 * i + j] + x[3 * j + i]);
  cert.residual = max_abs(transpose(acl) * cert.p + cert.p * acl + q);

  if (!(cert.residual <= 1e-8 * spectral_norm(q)))
    throw NumericalError("solve_lyapunov: residual " + std::to_string(cert.residual) +
                         " exceeds tolerance");
  if (!(symmetric_eigenvalues(cert.p)[0] > 0.0))
    throw NumericalError("solve_lyapunov: P is not positive definite");
  return cert;
}

double alpha_lower_bound(const Mat3& p, const Mat3& acl, const Mat3& q) {
  return 2.0 * spectral_norm(p * acl) / symmetric_eigenvalues(q)[0];
}

double dwell_time_bound(double sigma, double acl_norm, double bk_norm) {
  if (!(sigma > 0.0 && sigma < 1.0))
    throw ValidationError("dwell_time_bound: sigma must lie in (0, 1)");
  const double total = acl_norm + bk_norm;
  if (!std::isfinite(total) || !(acl_norm >= 0.0) || !(bk_norm >= 0.0) || !(total > 0.0))
    throw ValidationError("dwell_time_bound: norms must be finite and positive");
  const double n = sigma / 2.0;
  const double m = 1.0 / (2.0 * sigma);
  const double ratio = m / n;
  return (1.0 / total) * ratio / (1.0 + std::sqrt(ratio));
}

double dwell_time_bound(double sigma, const Mat3& acl, const Mat3& bk) {
  return dwell_time_bound(sigma, spectral_norm(acl), spectral_norm(bk));
}

double decay_rate(const LyapunovCertificate& cert, double sigma) {
  return symmetric_eigenvalues(cert.q)[0] * (1.0 - sigma) / symmetric_eigenvalues(cert.p)[2];
}

std::size_t decay_envelope_check(std::span<const EnvelopePoint> points, double rate, double tol,
                                 double floor) {
  std::size_t violations = 0;
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    const EnvelopePoint& a = points[k];
    const EnvelopePoint& b = points[k + 1];
    if (!(a.g_norm > floor)) continue;
    const double limit = std::exp(-rate * (b.t - a.t)) * a.v * (1.0 + tol);
    if (!(b.v <= limit)) ++violations;
  }
  return violations;
}

std::vector<EnvelopePoint> event_envelope(const AverageTrace& trace, const Mat3& p,
                                          double t_final) {
  std::vector<EnvelopePoint> out;
  out.reserve(trace.events.size() + 1);
  auto point = [&](double t, const Vec3& g) {
    return EnvelopePoint{t, dot(g, p * g), norm(g)};
  };
  for (const auto& ev : trace.events) out.push_back(point(ev.t, ev.latched.value));
  if (out.empty() || t_final > out.back().t) out.push_back(point(t_final, trace.final_g));
  return out;
}

double averaging_error(std::span<const TimedVec3> full, std::span<const TimedVec3> avg) {
  if (full.size() != avg.size())
    throw ValidationError("averaging_error: traces have different lengths (" +
                          std::to_string(full.size()) + " vs " + std::to_string(avg.size()) + ")");
  double sup = 0.0;
  for (std::size_t k = 0; k < full.size(); ++k) {
    const double tol = 1e-9 * std::fmax(1.0, std::fabs(full[k].t));
    if (std::fabs(full[k].t - avg[k].t) > tol)
      throw ValidationError("averaging_error: time grids differ at sample " + std::to_string(k));
    sup = std::fmax(sup, norm(full[k].v - avg[k].v));
  }
  return sup;
}

double dither_residual_scale(const DitherParams& d) {
  return 0.5 * std::sqrt(d.a1 * d.a1 + d.a2 * d.a2 + d.a3 * d.a3);
}

double quoted_residual_scale(const DitherParams& d) { return 1.5 * d.a3; }

}  // namespace etssc
