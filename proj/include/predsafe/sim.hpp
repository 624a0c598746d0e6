#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "predsafe/predictor.hpp"
#include "predsafe/truck.hpp"

namespace predsafe::sim {

/// Which car-following controller variant to close the loop with.
struct ControllerChoice {
  std::string name = "predictor_nominal";
  bool robust = false;
  PredictorKind predictor = PredictorKind::Nominal;
};

struct SimConfig {
  double dt = 1e-3;     // [s]
  double t_end = 20.0;  // [s]
  ControllerChoice controller;
  truck::TruckParams truck;
  truck::LeadProfile lead;
  bool enable_lag = false;
  bool assertions = true;

  double D0 = 45.0;            // initial distance [m]
  double v0 = 20.0;            // initial ego speed [m/s]
  double initial_input = 0.0;  // constant history on [-tau, 0) [m/s^2]
  bool clamp_speed = false;    // keep ego speed >= 0
  std::optional<double> input_limit;  // symmetric |u| clamp [m/s^2]
  std::size_t n_sub = 0;       // predictor sub-steps, 0 = tau / dt

  /// Throws ConfigError (tau not a multiple of dt, t_end <= tau, ...).
  void validate() const;
};

/// One row of the trajectory log at grid time t.
struct StepRecord {
  double t = 0.0;
  double D = 0.0;
  double v = 0.0;
  double v_L = 0.0;
  double a_L = 0.0;
  double u_cmd = 0.0;      // commanded at t
  double u_applied = 0.0;  // acting on the plant at t (delayed, after lag)
  double d = 0.0;          // lag disturbance a - u(t - tau)
  double d_hat = 0.0;      // effective disturbance d + u(t-tau) - u_ideal(t-tau)
  double h = 0.0;
  double h_delta = 0.0;    // h + gamma(h, delta_hat), delta_hat = max |d_hat|
  double Dp = 0.0;         // controller's predicted state
  double vp = 0.0;
  double vLp = 0.0;
  double u_ideal = 0.0;    // same law fed the ground-truth prediction
  double margin = 0.0;     // controller's own barrier inequality margin
};

struct Metrics {
  double min_h = 0.0;
  double min_D = 0.0;
  double max_abs_u = 0.0;
  double control_effort = 0.0;  // sum of u_cmd^2 dt
  double max_abs_d = 0.0;
  double max_abs_d_hat = 0.0;
  double safety_violation_duration = 0.0;  // [s] with h < 0
  double min_h_delta = 0.0;

  friend bool operator==(const Metrics&, const Metrics&) = default;
};

/// Ordered (name, value) pairs as printed by the CLI.
std::vector<std::pair<std::string, double>> metric_fields(const Metrics& m);

/// Computes the run metrics from a log sampled at period dt.
Metrics compute_metrics(const std::vector<StepRecord>& log, double dt);

struct SimResult {
  std::vector<StepRecord> log;
  Metrics metrics;
};

/// Fixed-step closed-loop simulation. Throws SafetyAssertionError when
/// assertions are on and the controller's margin drops below -1e-9.
SimResult run(const SimConfig& config);

}  // namespace predsafe::sim
