#pragma once

#include <vector>

#include "etssc/event_controller.hpp"
#include "etssc/linalg.hpp"
#include "etssc/vehicle.hpp"

namespace etssc {

/// Period-averaged linear error dynamics
///   dG_av/dt = (A - B K) G_av - B K e_av + delta_bar
/// in original time t. Along this loop G_av equals q_tilde_av, so only G_av
/// is carried.
struct AverageModel {
  Mat3 a{};           // nonzero only at (0,2) and (1,2)
  Mat32 b{};          // column 1 is (0, 0, 1)
  Vec3 delta_bar{};   // (d, -d, 0)
  double period = 0;  // 2*pi/omega3
};

AverageModel build_average_matrices(double theta_star, const DitherParams& d);

struct DeltaBarBound {
  double norm = 0.0;   // |delta_bar|
  double bound = 0.0;  // a1*w3*|J2(a3)|
};

DeltaBarBound delta_bar_norm_bound(const AverageModel& model, const DitherParams& d);

Mat3 closed_loop(const AverageModel& model, const GainMatrix& gain);

Vec3 average_derivative(const Vec3& g_av, const Vec3& e_av, const AverageModel& model,
                        const GainMatrix& gain);

enum class AverageControl {
  event_triggered,  // average static trigger with ZOH
  continuous,       // u = -K G_av at every step
};

struct AverageSample {
  double t = 0.0;
  Vec3 g{};
  Vec3 e{};
  Vec2 u{};
  double xi = 0.0;
  bool event = false;
};

struct AverageTrace {
  double dt = 0.0;
  std::vector<AverageSample> samples;
  std::vector<TriggerEvent> events;
  Vec3 final_g{};  // state after the last step, at t_final
};

/// Integrates the average loop with RK4 on the grid k*dt, k = 0..n-1 where
/// n = round(t_final/dt). The trigger is sampled once per grid point.
AverageTrace run_average_loop(const AverageModel& model, const GainMatrix& gain,
                              const TriggerConstants& c, const Vec3& g0, double dt,
                              double t_final,
                              AverageControl control = AverageControl::event_triggered);

}  // namespace etssc
