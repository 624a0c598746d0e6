#include "predsafe/safety.hpp"

#include <utility>

namespace predsafe {

SafetyConfig::SafetyConfig(ClassKInfE alpha, SigmaFn sigma, double delta)
    : alpha_(std::move(alpha)), sigma_(sigma), delta_(delta) {
  if (!(sigma_.sigma0 > 0.0)) throw ConfigError("sigma0 must be positive");
  if (!(sigma_.lambda >= 0.0)) throw ConfigError("lambda must be nonnegative");
  if (!(delta_ >= 0.0)) throw ConfigError("delta must be nonnegative");
}

double cbf_margin(const Dynamics& dyn, const Barrier& bar,
                  const SafetyConfig& cfg, double t, const Vec3& x, double u) {
  return hdot(dyn, bar, t, x, u) + cfg.alpha()(bar.h(x));
}

double tissf_margin(const Dynamics& dyn, const Barrier& bar,
                    const SafetyConfig& cfg, double t, const Vec3& x, double u) {
  const auto [lfh, lgh] = lie_derivatives(dyn, bar, t, x);
  const double h = bar.h(x);
  return RequireFinite(
      lfh + lgh * u + cfg.alpha()(h) - cfg.sigma()(h) * lgh * lgh,
      "TISSf margin");
}

double gamma(const SafetyConfig& cfg, double h) {
  const double delta = cfg.delta();
  return -cfg.alpha().inverse(-delta * delta / (4.0 * cfg.sigma()(h)));
}

double h_delta(const SafetyConfig& cfg, const Barrier& bar, const Vec3& x) {
  const double h = bar.h(x);
  return h + gamma(cfg, h);
}

ControlLaw::ControlLaw(ControllerSpec spec, SafetyConfig cfg, Dynamics dyn,
                       Barrier bar, PredictorOracles oracles, std::size_t n_sub)
    : spec_(std::move(spec)),
      cfg_(std::move(cfg)),
      dyn_(std::move(dyn)),
      bar_(std::move(bar)),
      oracles_(std::move(oracles)),
      n_sub_(n_sub) {}

ControlEvaluation ControlLaw::evaluate(double t, const Vec3& x,
                                       const InputHistory& hist) const {
  ControlEvaluation out;
  out.prediction =
      predict(spec_.predictor_kind, dyn_, oracles_, t, x, hist, n_sub_);
  const Vec3& xp = out.prediction.x_p;

  const bool future = spec_.predictor_kind == PredictorKind::Nominal ||
                      spec_.predictor_kind == PredictorKind::GroundTruth;
  const Dynamics& model = future ? *oracles_.future_dynamics : dyn_;
  out.model_time = future ? out.prediction.t_p : t;

  out.u = RequireFinite(spec_.nominal(xp), "nominal input");
  if (spec_.robust) {
    const double lgh = lie_derivatives(model, bar_, out.model_time, xp).lgh;
    out.u += cfg_.sigma()(bar_.h(xp)) * lgh;
    out.margin = tissf_margin(model, bar_, cfg_, out.model_time, xp, out.u);
  } else {
    out.margin = cbf_margin(model, bar_, cfg_, out.model_time, xp, out.u);
  }
  return out;
}

ControlLaw synthesize(const ControllerSpec& spec, const SafetyConfig& cfg,
                      const Dynamics& dyn, const Barrier& bar,
                      const PredictorOracles& oracles, std::size_t n_sub) {
  if (!spec.nominal) throw ConfigError("controller needs a nominal law");
  if (!dyn.f || !dyn.g) throw ConfigError("dynamics callables missing");
  if (!bar.h || !bar.grad) throw ConfigError("barrier callables missing");
  require_oracles(spec.predictor_kind, oracles);
  return ControlLaw(spec, cfg, dyn, bar, oracles, n_sub);
}

}  // namespace predsafe
