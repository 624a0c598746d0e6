#pragma once

#include <string>
#include <utility>
#include <vector>

#include "predsafe/core.hpp"
#include "predsafe/safety.hpp"

namespace predsafe::truck {

/// Longitudinal control parameters of a connected automated truck.
struct TruckParams {
  double tau = 0.5;     // input delay [s]
  double A = 0.4;       // distance gain [1/s]
  double B = 0.5;       // velocity gain [1/s]
  double D_st = 5.0;    // standstill distance [m]
  double kappa = 0.5;   // range policy gradient [1/s]
  double v_max = 20.0;  // speed limit [m/s]
  double D_sf = 3.0;    // safe standstill distance [m]
  double T = 2.0;       // safe time headway [s]
  double sigma0 = 1.0;  // [m/s^3]
  double lambda = 0.3;  // [1/m]
  double xi = 0.25;     // unmodeled actuator lag [s]

  /// Throws ConfigError unless every parameter is positive (tau may be 0).
  void validate() const;
  /// Deviations from B = kappa = 1/T and D_st >= D_sf, under which the
  /// nominal controller is provably safe without delay.
  std::vector<std::string> safe_design_warnings() const;
};

/// Lead vehicle that cruises at v0_L, brakes at a_brake from t_brake on and
/// then stays at standstill.
struct LeadProfile {
  double v0_L = 20.0;     // [m/s]
  double t_brake = 1.0;   // [s]
  double a_brake = -6.0;  // [m/s^2], negative

  void validate() const;
  double stop_time() const { return t_brake - v0_L / a_brake; }
  double acceleration(double t) const;
  /// Closed-form lead speed, clamped at standstill.
  double speed(double t) const;
};

/// First-order actuator lag a' = (u_delayed - a) / xi.
struct LagPlant {
  double xi = 0.25;
  double a = 0.0;
};

/// Advances the lag by one RK4 step; returns the new plant and the
/// disturbance d = a_new - u_delayed.
std::pair<LagPlant, double> lag_step(const LagPlant& plant, double u_delayed,
                                     double dt);

double range_policy_V(const TruckParams& p, double D);
double speed_policy_W(const TruckParams& p, double v_L);
/// Car-following law k_n(x) = A (V(D) - v) + B (W(v_L) - v).
double nominal_k(const TruckParams& p, const Vec3& x);

/// h(x) = D - D_sf - T v.
double truck_h(const TruckParams& p, const Vec3& x);
Barrier truck_barrier(const TruckParams& p);
/// f = (v_L - v, 0, a_L(t)), g = (0, 1, 0).
Dynamics truck_dynamics(const TruckParams& p, const LeadProfile& lead);
SafetyConfig truck_safety(const TruckParams& p, double delta = 0.0);

}  // namespace predsafe::truck
