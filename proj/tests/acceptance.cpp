// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "predsafe/csv.hpp"
#include "predsafe/predictor.hpp"
#include "predsafe/safety.hpp"
#include "predsafe/sim.hpp"
#include "predsafe/truck.hpp"

namespace {

using namespace predsafe;
using sim::ControllerChoice;
using sim::SimConfig;
using sim::SimResult;

const ControllerChoice kBaseline{"baseline_no_predictor", false, PredictorKind::None};
const ControllerChoice kPredictor{"predictor_nominal", false, PredictorKind::Nominal};
const ControllerChoice kDelayAsDisturbance{"delay_as_disturbance_tissf", true,
                                           PredictorKind::None};
const ControllerChoice kPredictorTissf{"predictor_tissf", true, PredictorKind::Frozen};

// Pinned tolerances.
constexpr double kExactSafetyTol = 1e-6;
constexpr double kHDeltaTol = 1e-3;
constexpr double kMinHFloor = -0.5;
constexpr double kOrderingSlack = 1e-3;
constexpr double kChainTol = 1e-9;
constexpr double kClosedFormTol = 1e-9;
constexpr double kMarginTol = 1e-9;
constexpr double kGammaTol = 1e-12;

int failures = 0;

void Report(const std::string& name, bool pass, const std::string& details) {
  std::printf("[%s] %s: %s\n", pass ? "PASS" : "FAIL", name.c_str(), details.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string Num(double v) { return ShortestString(v); }

SimConfig With(const ControllerChoice& c, bool lag) {
  SimConfig cfg;
  cfg.controller = c;
  cfg.enable_lag = lag;
  return cfg;
}

std::vector<SimResult> RunAll(const std::vector<SimConfig>& configs) {
  std::vector<std::future<SimResult>> jobs;
  for (const SimConfig& c : configs) {
    jobs.push_back(std::async(std::launch::async, [c] { return sim::run(c); }));
  }
  std::vector<SimResult> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

// Runs `body` and reports a FAIL line instead of aborting on an exception.
void Guard(const std::string& name, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    Report(name, false, std::string("exception: ") + e.what());
  }
}

void BrakingViolationWithoutPredictor() {
  const std::string name = "braking_violation_and_exact_prediction";
  const auto r = RunAll({With(kBaseline, false), With(kPredictor, false)});
  const double base = r[0].metrics.min_h, pred = r[1].metrics.min_h;
  Report(name, base < 0.0 && pred >= -kExactSafetyTol,
         "a_brake=-6 baseline min_h=" + Num(base) + " (<0), predictor_nominal min_h=" +
             Num(pred) + " (>=-1e-6)");
}

void DelayFreeSafetyProperty() {
  const std::string name = "delay_free_nominal_safety_randomized";
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> speed(0, 20), lead_speed(0, 25), slack(0, 40),
      brake(-8, -1), onset(0, 5);
  std::vector<SimConfig> configs;
  for (int i = 0; i < 200; ++i) {
    SimConfig cfg = With(kBaseline, false);
    cfg.truck.tau = 0.0;
    cfg.t_end = 15.0;
    cfg.v0 = speed(rng);
    cfg.lead = truck::LeadProfile{lead_speed(rng), onset(rng), brake(rng)};
    cfg.D0 = cfg.truck.D_sf + cfg.truck.T * cfg.v0 + slack(rng);
    configs.push_back(cfg);
  }
  double worst = 1e300;
  for (std::size_t b = 0; b < configs.size(); b += 25) {
    const std::vector<SimConfig> batch(configs.begin() + b,
                                       configs.begin() + std::min(b + 25, configs.size()));
    for (const SimResult& r : RunAll(batch)) worst = std::min(worst, r.metrics.min_h);
  }
  Report(name, worst >= -kExactSafetyTol,
         "200 runs tau=0, worst min_h=" + Num(worst) + " (>=-1e-6)");
}

void LagTunableSafety() {
  const std::string name = "lag_frozen_predictor_tissf_safety";
  std::vector<SimConfig> configs;
  for (double a_brake : {-5.0, -6.0, -8.0}) {
    SimConfig cfg = With(kPredictorTissf, true);
    cfg.lead.a_brake = a_brake;
    configs.push_back(cfg);
  }
  bool pass = true;
  std::string details;
  const auto results = RunAll(configs);
  for (std::size_t i = 0; i < results.size(); ++i) {
    const sim::Metrics& m = results[i].metrics;
    const bool ok = m.min_h_delta >= -kHDeltaTol && m.min_h >= kMinHFloor;
    pass = pass && ok;
    details += "a_brake=" + Num(configs[i].lead.a_brake) + " delta_hat=" +
               Num(m.max_abs_d_hat) + " min_h_delta=" + Num(m.min_h_delta) +
               " min_h=" + Num(m.min_h) + "; ";
  }
  Report(name, pass, details + "(min_h_delta>=-1e-3, min_h>=-0.5)");
}

void PredictionOrdering() {
  const std::string name = "lag_prediction_vs_delay_as_disturbance_ordering";
  const auto r = RunAll({With(kPredictorTissf, true), With(kDelayAsDisturbance, true)});
  const sim::Metrics& p = r[0].metrics;
  const sim::Metrics& n = r[1].metrics;
  const bool pass = p.control_effort < n.control_effort &&
                    p.max_abs_d_hat < n.max_abs_d_hat &&
                    p.min_h >= n.min_h - kOrderingSlack;
  Report(name, pass,
         "effort " + Num(p.control_effort) + " < " + Num(n.control_effort) +
             ", max|d_hat| " + Num(p.max_abs_d_hat) + " < " + Num(n.max_abs_d_hat) +
             ", min_h " + Num(p.min_h) + " vs " + Num(n.min_h));
}

void CompletedSquareChain() {
  const std::string name = "robust_input_worst_case_disturbance_chain";
  const truck::TruckParams p;
  const Dynamics dyn = truck::truck_dynamics(p, truck::LeadProfile{});
  const Barrier bar = truck::truck_barrier(p);
  const SafetyConfig cfg = truck::truck_safety(p);
  const ControlLaw law = synthesize(
      ControllerSpec{[p](const Vec3& x) { return truck::nominal_k(p, x); }, true,
                     PredictorKind::None},
      cfg, dyn, bar);
  const InputHistory hist(p.tau, 1e-3, 0.0);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> D(-20, 150), v(-5, 25), vL(0, 30), t(0, 10),
      delta(0, 2);
  double worst = 1e300;
  for (int i = 0; i < 100000; ++i) {
    const Vec3 x(D(rng), v(rng), vL(rng));
    const double time = t(rng), dlt = delta(rng);
    const double u = law(time, x, hist);
    const double lgh = lie_derivatives(dyn, bar, time, x).lgh;
    const double d = -dlt * (lgh > 0 ? 1.0 : (lgh < 0 ? -1.0 : 0.0));
    const double h = bar.h(x);
    const double value = hdot(dyn, bar, time, x, u + d) + cfg.alpha()(h) +
                         dlt * dlt / (4.0 * cfg.sigma()(h));
    worst = std::min(worst, value);
  }
  Report(name, worst >= -kChainTol,
         "1e5 samples delta in [0,2], worst=" + Num(worst) + " (>=-1e-9)");
}

void PredictorOracle() {
  const std::string name = "predictor_closed_form_and_rk4_order";
  const truck::TruckParams p;
  const truck::LeadProfile cruise{20.0, 1e9, -6.0};
  const Dynamics dyn = truck::truck_dynamics(p, cruise);
  const InputHistory hist(0.5, 1e-3, -2.0);
  const PredictorOracles oracles{dyn, TimeDisturbance{[](double) { return 0.0; }}};
  double err = 0.0;
  for (PredictorKind kind :
       {PredictorKind::Frozen, PredictorKind::Nominal, PredictorKind::GroundTruth}) {
    const Vec3 xp = predict(kind, dyn, oracles, 0.0, Vec3(45, 20, 20), hist).x_p;
    err = std::max({err, std::abs(xp[0] - 45.25), std::abs(xp[1] - 19.0),
                    std::abs(xp[2] - 20.0)});
  }

  // Unsaturated closed loop is affine; oracle is the matrix exponential.
  const Vec3 x0(25, 15, 10);
  const double horizon = 0.5;
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m(0, 1) = -1;
  m(0, 2) = 1;
  m(1, 0) = p.A * p.kappa;
  m(1, 1) = -p.A - p.B;
  m(1, 2) = p.B;
  m(1, 3) = -p.A * p.kappa * p.D_st;
  const Eigen::Vector4d exact =
      (m * horizon).exp() * Eigen::Vector4d(x0[0], x0[1], x0[2], 1.0);
  const auto flow = [&](double, const Vec3& x) {
    return Vec3(x[2] - x[1], truck::nominal_k(p, x), 0.0);
  };
  const auto error = [&](int steps) {
    Vec3 x = x0;
    const double h = horizon / steps;
    for (int i = 0; i < steps; ++i) x = rk4_step(flow, i * h, x, h);
    return std::max({std::abs(x[0] - exact(0)), std::abs(x[1] - exact(1)),
                     std::abs(x[2] - exact(2))});
  };
  const double ratio = error(2) / error(4);
  Report(name, err <= kClosedFormTol && ratio >= 14.0 && ratio <= 18.0,
         "closed-form error=" + Num(err) + " (<=1e-9), halving ratio=" + Num(ratio) +
             " (in [14,18])");
}

void HandValues() {
  const std::string name = "tissf_margin_and_gamma_hand_values";
  const truck::TruckParams p;
  const Dynamics dyn = truck::truck_dynamics(p, truck::LeadProfile{});
  const Barrier bar = truck::truck_barrier(p);
  const SafetyConfig cfg = truck::truck_safety(p);
  const ControlLaw law = synthesize(
      ControllerSpec{[p](const Vec3& x) { return truck::nominal_k(p, x); }, true,
                     PredictorKind::None},
      cfg, dyn, bar);
  const InputHistory hist(p.tau, 1e-3, 0.0);
  const Vec3 x(45, 20, 20);
  const double u = law(0.0, x, hist);
  const double margin = tissf_margin(dyn, bar, cfg, 0.0, x, u);
  const double g = gamma(cfg.with_delta(1.0), 0.0);
  Report(name, std::abs(margin - 0.8) <= kMarginTol && std::abs(g - 0.625) <= kGammaTol,
         "u=" + Num(u) + " margin=" + Num(margin) + " (0.8 +-1e-9), gamma(0,1)=" + Num(g) +
             " (0.625 +-1e-12)");
}

void Determinism() {
  const std::string name = "determinism_byte_identical_csv";
  const SimConfig cfg = With(kPredictorTissf, true);
  const auto r = RunAll({cfg, cfg});
  std::ostringstream a, b;
  csv::write_trajectory(a, r[0].log);
  csv::write_trajectory(b, r[1].log);
  Report(name, a.str() == b.str() && !a.str().empty(),
         std::to_string(a.str().size()) + " bytes, identical=" +
             (a.str() == b.str() ? "yes" : "no"));
}

}  // namespace

int main() {
  Guard("braking_violation_and_exact_prediction", BrakingViolationWithoutPredictor);
  Guard("delay_free_nominal_safety_randomized", DelayFreeSafetyProperty);
  Guard("lag_frozen_predictor_tissf_safety", LagTunableSafety);
  Guard("lag_prediction_vs_delay_as_disturbance_ordering", PredictionOrdering);
  Guard("robust_input_worst_case_disturbance_chain", CompletedSquareChain);
  Guard("predictor_closed_form_and_rk4_order", PredictorOracle);
  Guard("tissf_margin_and_gamma_hand_values", HandValues);
  Guard("determinism_byte_identical_csv", Determinism);
  std::printf("%d failure(s)\n", failures);
  return failures == 0 ? 0 : 1;
}
