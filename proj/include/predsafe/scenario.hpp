#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "predsafe/sim.hpp"

namespace predsafe {

/// A scenario file: shared simulation settings plus named controllers.
///
/// JSON layout (every key optional, unknown keys rejected):
///   {
///     "truck": {"tau": 0.5, "A": 0.4, "B": 0.5, "D_st": 5, "kappa": 0.5,
///               "v_max": 20, "D_sf": 3, "T": 2, "sigma0": 1,
///               "lambda": 0.3, "xi": 0.25},
///     "lead":  {"v0_L": 20, "t_brake": 1, "a_brake": -6},
///     "sim":   {"dt": 0.001, "t_end": 20, "enable_lag": false,
///               "assertions": true, "D0": 45, "v0": 20,
///               "initial_input": 0, "clamp_speed": false,
///               "input_limit": 8, "n_sub": 500},
///     "controllers": {
///       "predictor_tissf": {"nominal": "car_following", "robust": true,
///                           "predictor": "frozen"}
///     }
///   }
struct Scenario {
  sim::SimConfig base;
  std::vector<sim::ControllerChoice> controllers;

  /// Throws ConfigError listing the known names if `name` is absent.
  const sim::ControllerChoice& controller(std::string_view name) const;
  sim::SimConfig config_for(std::string_view name) const;
  // Parsing does not validate; sim::SimConfig::validate() runs before a
  // simulation so command-line overrides are applied first.
};

/// Controllers available when a scenario file has no "controllers" block.
std::vector<sim::ControllerChoice> default_controllers();

Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace predsafe
