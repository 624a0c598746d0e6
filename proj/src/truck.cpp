#include "predsafe/truck.hpp"

#include <algorithm>
#include <sstream>

#include "predsafe/predictor.hpp"

namespace predsafe::truck {

void TruckParams::validate() const {
  const std::pair<const char*, double> positive[] = {
      {"A", A},         {"B", B},         {"D_st", D_st},     {"kappa", kappa},
      {"v_max", v_max}, {"D_sf", D_sf},   {"T", T},           {"sigma0", sigma0},
      {"lambda", lambda}, {"xi", xi}};
  for (const auto& [name, value] : positive) {
    if (!(value > 0.0) || !std::isfinite(value)) {
      std::ostringstream msg;
      msg << "truck parameter " << name << " must be positive, got " << value;
      throw ConfigError(msg.str());
    }
  }
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    throw ConfigError("truck parameter tau must be nonnegative");
  }
}

std::vector<std::string> TruckParams::safe_design_warnings() const {
  std::vector<std::string> out;
  const double inv_t = 1.0 / T;
  if (std::abs(B - inv_t) > 1e-12) out.push_back("B != 1/T");
  if (std::abs(kappa - inv_t) > 1e-12) out.push_back("kappa != 1/T");
  if (D_st < D_sf) out.push_back("D_st < D_sf");
  return out;
}

void LeadProfile::validate() const {
  if (!(v0_L >= 0.0)) throw ConfigError("lead v0_L must be nonnegative");
  if (!(a_brake < 0.0)) throw ConfigError("lead a_brake must be negative");
  if (!std::isfinite(t_brake)) throw ConfigError("lead t_brake must be finite");
}

double LeadProfile::acceleration(double t) const {
  return (t >= t_brake && t < stop_time()) ? a_brake : 0.0;
}

double LeadProfile::speed(double t) const {
  if (t < t_brake) return v0_L;
  return std::max(0.0, v0_L + a_brake * (t - t_brake));
}

std::pair<LagPlant, double> lag_step(const LagPlant& plant, double u_delayed,
                                     double dt) {
  if (!(dt > 0.0)) throw ConfigError("lag step needs dt > 0");
  const double xi = plant.xi;
  const double a = rk4_step(
      [&](double, double y) { return (u_delayed - y) / xi; }, 0.0, plant.a, dt);
  return {LagPlant{xi, a}, a - u_delayed};
}

double range_policy_V(const TruckParams& p, double D) {
  return std::min(p.kappa * (D - p.D_st), p.v_max);
}

double speed_policy_W(const TruckParams& p, double v_L) {
  return std::min(v_L, p.v_max);
}

double nominal_k(const TruckParams& p, const Vec3& x) {
  const double v = x[1];
  return p.A * (range_policy_V(p, x[0]) - v) +
         p.B * (speed_policy_W(p, x[2]) - v);
}

double truck_h(const TruckParams& p, const Vec3& x) {
  return x[0] - p.D_sf - p.T * x[1];
}

Barrier truck_barrier(const TruckParams& p) {
  const double headway = p.T;
  return Barrier{[p](const Vec3& x) { return truck_h(p, x); },
                 [headway](const Vec3&) { return Vec3(1.0, -headway, 0.0); }};
}

Dynamics truck_dynamics(const TruckParams&, const LeadProfile& lead) {
  return Dynamics{
      [lead](double t, const Vec3& x) {
        return Vec3(x[2] - x[1], 0.0, lead.acceleration(t));
      },
      [](double, const Vec3&) { return Vec3(0.0, 1.0, 0.0); }};
}

SafetyConfig truck_safety(const TruckParams& p, double delta) {
  return SafetyConfig(ClassKInfE::Linear(p.A), SigmaFn{p.sigma0, p.lambda},
                      delta);
}

}  // namespace predsafe::truck
