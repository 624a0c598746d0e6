#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <variant>

#include "predsafe/core.hpp"
#include "predsafe/delayline.hpp"

namespace predsafe {

/// Classical fourth-order Runge-Kutta step. State needs `+` and scalar `*`.
template <typename State, typename Derivative>
State rk4_step(const Derivative& derivative, double t, const State& x,
               double dt) {
  const double half = 0.5 * dt;
  const State k1 = derivative(t, x);
  const State k2 = derivative(t + half, x + half * k1);
  const State k3 = derivative(t + half, x + half * k2);
  const State k4 = derivative(t + dt, x + dt * k3);
  State next = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if constexpr (std::is_floating_point_v<State>) {
    RequireFinite(next, "RK4 step result");
  }
  return next;
}

/// Vehicle state augmented with a first-order actuator lag state a.
struct LagAugmentedState {
  Vec3 x;
  double a = 0.0;

  friend LagAugmentedState operator+(const LagAugmentedState& l,
                                     const LagAugmentedState& r) {
    return {l.x + r.x, RequireFinite(l.a + r.a, "actuator state")};
  }
  friend LagAugmentedState operator*(double s, const LagAugmentedState& l) {
    return {s * l.x, RequireFinite(s * l.a, "actuator state")};
  }
};

/// One RK4 step of x' = f(t,x) + g(t,x) a, a' = (u_delayed - a) / xi with
/// u_delayed held constant. Shared by the plant and the ground-truth
/// predictor so the two agree bit for bit.
LagAugmentedState lag_augmented_step(const Dynamics& dyn, double xi,
                                     double u_delayed, double t,
                                     const LagAugmentedState& s, double dt);

enum class PredictorKind { None, Frozen, Nominal, GroundTruth };

std::string_view to_string(PredictorKind kind);
/// Accepts "none", "frozen", "nominal", "ground_truth"; throws ConfigError.
PredictorKind parse_predictor_kind(std::string_view name);

/// Disturbance known as a function of absolute time.
struct TimeDisturbance {
  std::function<double(double)> d;
};

/// Disturbance generated by an unmodeled first-order actuator lag,
/// d = a - u_delayed. `actuator_state` reports a at the prediction start.
struct LagDisturbance {
  double xi = 0.25;
  std::function<double()> actuator_state;
};

using DisturbanceOracle = std::variant<TimeDisturbance, LagDisturbance>;

/// Knowledge available to a predictor beyond the current time t.
struct PredictorOracles {
  /// Dynamics valid for future times t + s (e.g. lead intent over V2V).
  std::optional<Dynamics> future_dynamics;
  std::optional<DisturbanceOracle> disturbance;
};

struct Prediction {
  double t_p = 0.0;
  Vec3 x_p;
  PredictorKind kind = PredictorKind::None;
};

/// Throws ConfigError if `oracles` lacks what `kind` needs.
void require_oracles(PredictorKind kind, const PredictorOracles& oracles);

/// Predicts x(t + tau) by integrating the chosen semi-flow over [0, tau] in
/// n_sub RK4 sub-steps, tau = hist.tau(). The committed input is held at its
/// value at each sub-step's left endpoint.
///
///   None        -> (t, x), no integration
///   Frozen      -> f and g frozen at time t, zero disturbance
///   Nominal     -> future f and g, zero disturbance
///   GroundTruth -> future f and g plus the true disturbance
///
/// n_sub = 0 selects one sub-step per history cell.
Prediction predict(PredictorKind kind, const Dynamics& dyn,
                   const PredictorOracles& oracles, double t, const Vec3& x,
                   const InputHistory& hist, std::size_t n_sub = 0);

}  // namespace predsafe
