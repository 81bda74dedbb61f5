#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "etssc/average_model.hpp"
#include "etssc/linalg.hpp"

namespace etssc {

/// Solution P of Acl^T P + P Acl = -Q together with the achieved residual
/// (max-abs entry of Acl^T P + P Acl + Q).
struct LyapunovCertificate {
  Mat3 p{};
  Mat3 q{};
  double residual = 0.0;
};

/// True iff every eigenvalue of `acl` has real part < -1e-9.
bool hurwitz_check(const Mat3& acl);

/// Solves the continuous Lyapunov equation through the vectorized 9x9 system.
/// P is symmetrized before return. Throws NumericalError if `acl` is not
/// Hurwitz, the solve is singular, the residual exceeds 1e-8*|Q|, or P is
/// not positive definite. Throws ValidationError if Q is not SPD.
LyapunovCertificate solve_lyapunov(const Mat3& acl, const Mat3& q = identity<3>());

/// 2 |P Acl|_2 / lambda_min(Q); the trigger's alpha has to exceed this for
/// the decay argument to go through.
double alpha_lower_bound(const Mat3& p, const Mat3& acl, const Mat3& q);

/// Minimum inter-event time with the O(1/omega) corrections dropped:
///   tau* = 1/(|Acl| + |BK|) * (m/n) / (1 + sqrt(m/n)),  n = sigma/2, m = 1/(2 sigma).
double dwell_time_bound(double sigma, double acl_norm, double bk_norm);
double dwell_time_bound(double sigma, const Mat3& acl, const Mat3& bk);

/// lambda_min(Q) (1 - sigma) / lambda_max(P), per second of original time.
double decay_rate(const LyapunovCertificate& cert, double sigma);

struct EnvelopePoint {
  double t = 0.0;
  double v = 0.0;       // G^T P G
  double g_norm = 0.0;  // |G|
};

/// Counts consecutive pairs (k, k+1) with |G_k| > floor that violate
///   V_{k+1} <= exp(-rate (t_{k+1} - t_k)) V_k (1 + tol).
std::size_t decay_envelope_check(std::span<const EnvelopePoint> points, double rate, double tol,
                                 double floor);

/// Lyapunov values at each event of an average run, closed by the final
/// state at t_final so the last inter-event interval is checked too.
std::vector<EnvelopePoint> event_envelope(const AverageTrace& trace, const Mat3& p,
                                          double t_final);

struct TimedVec3 {
  double t = 0.0;
  Vec3 v{};
};

/// sup_k |full_k - avg_k|. Throws ValidationError when the two series do not
/// share a time grid.
double averaging_error(std::span<const TimedVec3> full, std::span<const TimedVec3> avg);

/// Uniform bound on |S(t)|: 0.5*sqrt(a1^2 + a2^2 + a3^2).
double dither_residual_scale(const DitherParams& d);

/// The residual scale as quoted alongside the convergence bound, 1.5*a3.
double quoted_residual_scale(const DitherParams& d);

struct AveragingRecord {
  double omega3 = 0.0;
  double sup_error = 0.0;
};

struct TheoryReport {
  bool hurwitz = false;
  std::array<std::complex<double>, 3> eigenvalues{};
  std::optional<LyapunovCertificate> certificate;
  double alpha = 0.0;
  double alpha_min = 0.0;
  bool alpha_ok = false;
  double tau_star = 0.0;
  double min_inter_event = 0.0;  // average run; +inf with fewer than two events
  std::size_t average_events = 0;
  double decay_rate = 0.0;
  std::size_t envelope_violations = 0;
  double trigger_floor = 0.0;  // 2 (alpha/sigma) bias
  double delta_bar_norm = 0.0;
  double delta_bar_bound = 0.0;
  double residual_scale = 0.0;         // 0.5*sqrt(sum a_i^2)
  double residual_scale_quoted = 0.0;  // 1.5*a3
  std::vector<AveragingRecord> averaging_sup_error;
};

}  // namespace etssc
