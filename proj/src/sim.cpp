#include "predsafe/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "predsafe/delayline.hpp"
#include "predsafe/safety.hpp"

namespace predsafe::sim {
namespace {

constexpr double kMarginTolerance = 1e-9;

ControllerSpec MakeSpec(const truck::TruckParams& p, bool robust,
                        PredictorKind kind) {
  return ControllerSpec{[p](const Vec3& x) { return truck::nominal_k(p, x); },
                        robust, kind};
}

}  // namespace

void SimConfig::validate() const {
  truck.validate();
  lead.validate();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
  if (!(t_end > truck.tau)) {
    std::ostringstream msg;
    msg << "t_end=" << t_end << " must exceed tau=" << truck.tau;
    throw ConfigError(msg.str());
  }
  if (input_limit && !(*input_limit > 0.0)) {
    throw ConfigError("input_limit must be positive");
  }
  // Throws with both values named when tau is off the dt grid.
  InputHistory probe(truck.tau, dt);
  if (n_sub != 0 && truck.tau == 0.0) {
    throw ConfigError("n_sub given but tau is zero");
  }
}

std::vector<std::pair<std::string, double>> metric_fields(const Metrics& m) {
  return {{"min_h", m.min_h},
          {"min_D", m.min_D},
          {"max_abs_u", m.max_abs_u},
          {"control_effort", m.control_effort},
          {"max_abs_d", m.max_abs_d},
          {"max_abs_d_hat", m.max_abs_d_hat},
          {"safety_violation_duration", m.safety_violation_duration},
          {"min_h_delta", m.min_h_delta}};
}

Metrics compute_metrics(const std::vector<StepRecord>& log, double dt) {
  Metrics m;
  if (log.empty()) return m;
  m.min_h = m.min_D = m.min_h_delta = std::numeric_limits<double>::infinity();
  long long violating = 0;
  for (const StepRecord& r : log) {
    m.min_h = std::min(m.min_h, r.h);
    m.min_D = std::min(m.min_D, r.D);
    m.min_h_delta = std::min(m.min_h_delta, r.h_delta);
    m.max_abs_u = std::max(m.max_abs_u, std::abs(r.u_cmd));
    m.control_effort += r.u_cmd * r.u_cmd * dt;
    m.max_abs_d = std::max(m.max_abs_d, std::abs(r.d));
    m.max_abs_d_hat = std::max(m.max_abs_d_hat, std::abs(r.d_hat));
    if (r.h < 0.0) ++violating;
  }
  m.safety_violation_duration = static_cast<double>(violating) * dt;
  return m;
}

SimResult run(const SimConfig& config) {
  config.validate();
  const truck::TruckParams& p = config.truck;
  const double dt = config.dt;
  const double tau = p.tau;
  const auto steps = static_cast<long long>(std::llround(config.t_end / dt));

  const Dynamics dyn = truck::truck_dynamics(p, config.lead);
  const Barrier bar = truck::truck_barrier(p);
  const SafetyConfig safety = truck::truck_safety(p);

  // Plant state: vehicle state plus the actuator lag (unused when disabled).
  LagAugmentedState plant{Vec3(config.D0, config.v0, config.lead.v0_L),
                          config.initial_input};

  // The controller only gets the oracles its predictor is entitled to; the
  // ideal law additionally knows the true disturbance.
  PredictorOracles controller_oracles;
  if (config.controller.predictor == PredictorKind::Nominal ||
      config.controller.predictor == PredictorKind::GroundTruth) {
    controller_oracles.future_dynamics = dyn;
  }
  PredictorOracles truth{dyn, std::nullopt};
  if (config.enable_lag) {
    truth.disturbance =
        LagDisturbance{p.xi, [&plant] { return plant.a; }};
  } else {
    truth.disturbance = TimeDisturbance{[](double) { return 0.0; }};
  }
  if (config.controller.predictor == PredictorKind::GroundTruth) {
    controller_oracles.disturbance = truth.disturbance;
  }

  const ControlLaw law = synthesize(
      MakeSpec(p, config.controller.robust, config.controller.predictor),
      safety, dyn, bar, controller_oracles, config.n_sub);
  const ControlLaw ideal_law =
      synthesize(MakeSpec(p, config.controller.robust, PredictorKind::GroundTruth),
                 safety, dyn, bar, truth, config.n_sub);

  InputHistory hist(tau, dt, config.initial_input);
  InputHistory ideal_hist(tau, dt, config.initial_input);

  SimResult result;
  result.log.reserve(static_cast<std::size_t>(steps + 1));
  for (long long k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const Vec3& x = plant.x;

    const ControlEvaluation eval = law.evaluate(t, x, hist);
    if (config.assertions && eval.margin < -kMarginTolerance) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "controller '" << config.controller.name
          << "' violates its barrier inequality at step " << k << " t=" << t
          << ": margin=" << eval.margin << " x=(" << x[0] << ", " << x[1]
          << ", " << x[2] << ") x_p=(" << eval.prediction.x_p[0] << ", "
          << eval.prediction.x_p[1] << ", " << eval.prediction.x_p[2]
          << ") u=" << eval.u;
      throw SafetyAssertionError(msg.str());
    }
    double u_cmd = eval.u;
    if (config.input_limit) {
      u_cmd = std::clamp(u_cmd, -*config.input_limit, *config.input_limit);
    }
    double u_ideal = ideal_law.evaluate(t, x, hist).u;
    if (config.input_limit) {
      u_ideal = std::clamp(u_ideal, -*config.input_limit, *config.input_limit);
    }

    const double u_delayed = tau > 0.0 ? hist.sample(-tau) : u_cmd;
    const double u_ideal_delayed = tau > 0.0 ? ideal_hist.sample(-tau) : u_ideal;
    const double d = config.enable_lag ? plant.a - u_delayed : 0.0;

    StepRecord& r = result.log.emplace_back();
    r.t = t;
    r.D = x[0];
    r.v = x[1];
    r.v_L = x[2];
    r.a_L = config.lead.acceleration(t);
    r.u_cmd = u_cmd;
    r.u_applied = config.enable_lag ? plant.a : u_delayed;
    r.d = d;
    r.d_hat = d + u_delayed - u_ideal_delayed;
    r.h = bar.h(x);
    r.Dp = eval.prediction.x_p[0];
    r.vp = eval.prediction.x_p[1];
    r.vLp = eval.prediction.x_p[2];
    r.u_ideal = u_ideal;
    r.margin = eval.margin;

    if (k == steps) break;

    if (config.enable_lag) {
      plant = lag_augmented_step(dyn, p.xi, u_delayed, t, plant, dt);
    } else {
      const auto derivative = [&](double s, const Vec3& z) {
        return dyn.f(s, z) + u_delayed * dyn.g(s, z);
      };
      plant.x = rk4_step(derivative, t, plant.x, dt);
    }
    if (config.clamp_speed && plant.x[1] < 0.0) {
      plant.x = Vec3(plant.x[0], 0.0, plant.x[2]);
    }
    if (tau > 0.0) {
      hist.push(t, u_cmd);
      ideal_hist.push(t, u_ideal);
    }
  }

  // h_delta is reported against the measured effective disturbance bound.
  double delta_hat = 0.0;
  for (const StepRecord& r : result.log) {
    delta_hat = std::max(delta_hat, std::abs(r.d_hat));
  }
  const SafetyConfig measured = safety.with_delta(delta_hat);
  for (StepRecord& r : result.log) r.h_delta = r.h + gamma(measured, r.h);

  result.metrics = compute_metrics(result.log, dt);
  return result;
}

}  // namespace predsafe::sim
