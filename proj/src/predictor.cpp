#include "predsafe/predictor.hpp"

#include <string>

namespace predsafe {

LagAugmentedState lag_augmented_step(const Dynamics& dyn, double xi,
                                     double u_delayed, double t,
                                     const LagAugmentedState& s, double dt) {
  const auto derivative = [&](double time, const LagAugmentedState& y) {
    return LagAugmentedState{dyn.f(time, y.x) + y.a * dyn.g(time, y.x),
                             (u_delayed - y.a) / xi};
  };
  return rk4_step(derivative, t, s, dt);
}

std::string_view to_string(PredictorKind kind) {
  switch (kind) {
    case PredictorKind::None: return "none";
    case PredictorKind::Frozen: return "frozen";
    case PredictorKind::Nominal: return "nominal";
    case PredictorKind::GroundTruth: return "ground_truth";
  }
  return "unknown";
}

PredictorKind parse_predictor_kind(std::string_view name) {
  if (name == "none") return PredictorKind::None;
  if (name == "frozen") return PredictorKind::Frozen;
  if (name == "nominal") return PredictorKind::Nominal;
  if (name == "ground_truth") return PredictorKind::GroundTruth;
  throw ConfigError("unknown predictor '" + std::string(name) +
                    "' (expected none|frozen|nominal|ground_truth)");
}

void require_oracles(PredictorKind kind, const PredictorOracles& oracles) {
  const bool needs_future =
      kind == PredictorKind::Nominal || kind == PredictorKind::GroundTruth;
  if (needs_future && !oracles.future_dynamics) {
    throw ConfigError(std::string(to_string(kind)) +
                      " predictor needs a future-dynamics oracle");
  }
  if (kind == PredictorKind::GroundTruth && !oracles.disturbance) {
    throw ConfigError("ground_truth predictor needs a disturbance oracle");
  }
  if (kind == PredictorKind::GroundTruth) {
    if (const auto* lag = std::get_if<LagDisturbance>(&*oracles.disturbance)) {
      if (!(lag->xi > 0.0) || !lag->actuator_state) {
        throw ConfigError("lag disturbance oracle needs xi > 0 and a state");
      }
    } else if (!std::get<TimeDisturbance>(*oracles.disturbance).d) {
      throw ConfigError("time disturbance oracle is empty");
    }
  }
}

Prediction predict(PredictorKind kind, const Dynamics& dyn,
                   const PredictorOracles& oracles, double t, const Vec3& x,
                   const InputHistory& hist, std::size_t n_sub) {
  RequireFinite(t, "prediction time");
  const double tau = hist.tau();
  if (kind == PredictorKind::None) return {t, x, kind};
  require_oracles(kind, oracles);
  if (tau == 0.0) return {t, x, kind};
  if (n_sub == 0) n_sub = hist.size();
  const double h = tau / static_cast<double>(n_sub);

  const auto input_at = [&](std::size_t j) {
    return hist.sample(static_cast<double>(j) * h - tau);
  };

  Vec3 y = x;
  switch (kind) {
    case PredictorKind::Frozen:
      for (std::size_t j = 0; j < n_sub; ++j) {
        const double u = input_at(j);
        // Time frozen at t; f(t, .) and g(t, .) still depend on the state.
        const auto derivative = [&](double, const Vec3& z) {
          return dyn.f(t, z) + u * dyn.g(t, z);
        };
        y = rk4_step(derivative, t + static_cast<double>(j) * h, y, h);
      }
      break;
    case PredictorKind::Nominal: {
      const Dynamics& fut = *oracles.future_dynamics;
      for (std::size_t j = 0; j < n_sub; ++j) {
        const double u = input_at(j);
        const auto derivative = [&](double s, const Vec3& z) {
          return fut.f(s, z) + u * fut.g(s, z);
        };
        y = rk4_step(derivative, t + static_cast<double>(j) * h, y, h);
      }
      break;
    }
    case PredictorKind::GroundTruth: {
      const Dynamics& fut = *oracles.future_dynamics;
      if (const auto* lag = std::get_if<LagDisturbance>(&*oracles.disturbance)) {
        LagAugmentedState s{y, lag->actuator_state()};
        for (std::size_t j = 0; j < n_sub; ++j) {
          s = lag_augmented_step(fut, lag->xi, input_at(j),
                                 t + static_cast<double>(j) * h, s, h);
        }
        y = s.x;
      } else {
        const auto& d = std::get<TimeDisturbance>(*oracles.disturbance).d;
        for (std::size_t j = 0; j < n_sub; ++j) {
          const double u = input_at(j);
          const auto derivative = [&](double s, const Vec3& z) {
            return fut.f(s, z) + (u + d(s)) * fut.g(s, z);
          };
          y = rk4_step(derivative, t + static_cast<double>(j) * h, y, h);
        }
      }
      break;
    }
    case PredictorKind::None:
      break;
  }
  return {t + tau, y, kind};
}

}  // namespace predsafe
