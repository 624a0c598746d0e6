#pragma once

#include <cstddef>
#include <functional>

#include "predsafe/core.hpp"
#include "predsafe/delayline.hpp"
#include "predsafe/predictor.hpp"

namespace predsafe {

/// Parameters of the (TISSf-)CBF conditions. delta is the disturbance bound
/// used for the inflated set S_delta; it never enters a control law.
class SafetyConfig {
 public:
  SafetyConfig(ClassKInfE alpha, SigmaFn sigma, double delta = 0.0);

  const ClassKInfE& alpha() const { return alpha_; }
  const SigmaFn& sigma() const { return sigma_; }
  double delta() const { return delta_; }
  SafetyConfig with_delta(double delta) const {
    return SafetyConfig(alpha_, sigma_, delta);
  }

 private:
  ClassKInfE alpha_;
  SigmaFn sigma_;
  double delta_;
};

/// hdot + alpha(h); nonnegative iff the CBF condition holds at (t, x, u).
double cbf_margin(const Dynamics& dyn, const Barrier& bar,
                  const SafetyConfig& cfg, double t, const Vec3& x, double u);

/// hdot + alpha(h) - sigma(h) Lgh^2; nonnegative iff the TISSf condition
/// holds at (t, x, u).
double tissf_margin(const Dynamics& dyn, const Barrier& bar,
                    const SafetyConfig& cfg, double t, const Vec3& x, double u);

/// Inflation gamma(h, delta) = -alpha^{-1}(-delta^2 / (4 sigma(h))) >= 0.
double gamma(const SafetyConfig& cfg, double h);

/// h_delta(x) = h(x) + gamma(h(x), delta).
double h_delta(const SafetyConfig& cfg, const Barrier& bar, const Vec3& x);

struct ControllerSpec {
  std::function<double(const Vec3&)> nominal;
  /// Adds sigma(h) Lgh to the nominal input.
  bool robust = false;
  PredictorKind predictor_kind = PredictorKind::None;
};

struct ControlEvaluation {
  double u = 0.0;
  Prediction prediction;
  /// Time at which the controller's model is evaluated: t for the None and
  /// Frozen predictors, t + tau otherwise.
  double model_time = 0.0;
  /// The controller's own satisfaction inequality at (model_time, x_p):
  /// tissf_margin when robust, cbf_margin otherwise.
  double margin = 0.0;
};

/// Closed-loop law u = k_n(x~) [+ sigma(h(x~)) Lgh(t~, x~)], where (t~, x~)
/// comes from the configured predictor.
class ControlLaw {
 public:
  ControlLaw(ControllerSpec spec, SafetyConfig cfg, Dynamics dyn, Barrier bar,
             PredictorOracles oracles, std::size_t n_sub);

  ControlEvaluation evaluate(double t, const Vec3& x,
                             const InputHistory& hist) const;
  double operator()(double t, const Vec3& x, const InputHistory& hist) const {
    return evaluate(t, x, hist).u;
  }

  const ControllerSpec& spec() const { return spec_; }

 private:
  ControllerSpec spec_;
  SafetyConfig cfg_;
  Dynamics dyn_;
  Barrier bar_;
  PredictorOracles oracles_;
  std::size_t n_sub_;
};

/// Validates the spec against the available oracles (throws ConfigError) and
/// returns the control law.
ControlLaw synthesize(const ControllerSpec& spec, const SafetyConfig& cfg,
                      const Dynamics& dyn, const Barrier& bar,
                      const PredictorOracles& oracles = {},
                      std::size_t n_sub = 0);

}  // namespace predsafe
