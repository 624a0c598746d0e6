#include "predsafe/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "predsafe/errors.hpp"

namespace predsafe {
namespace {

using Json = nlohmann::ordered_json;

void RejectUnknown(const Json& obj, std::string_view section,
                   const std::set<std::string>& known) {
  if (!obj.is_object()) {
    throw ConfigError("scenario section '" + std::string(section) +
                      "' must be an object");
  }
  for (const auto& [key, value] : obj.items()) {
    if (!known.count(key)) {
      throw ConfigError("unknown key '" + key + "' in scenario section '" +
                        std::string(section) + "'");
    }
  }
}

void ReadNumber(const Json& obj, const char* key, double& out) {
  if (!obj.contains(key)) return;
  if (!obj[key].is_number()) {
    throw ConfigError(std::string("scenario key '") + key + "' must be a number");
  }
  out = obj[key].get<double>();
}

void ReadBool(const Json& obj, const char* key, bool& out) {
  if (!obj.contains(key)) return;
  if (!obj[key].is_boolean()) {
    throw ConfigError(std::string("scenario key '") + key + "' must be a boolean");
  }
  out = obj[key].get<bool>();
}

sim::ControllerChoice ParseController(const std::string& name, const Json& obj) {
  RejectUnknown(obj, "controllers." + name, {"nominal", "robust", "predictor"});
  sim::ControllerChoice c{name, false, PredictorKind::None};
  if (obj.contains("nominal")) {
    if (!obj["nominal"].is_string() ||
        obj["nominal"].get<std::string>() != "car_following") {
      throw ConfigError("controller '" + name +
                        "': nominal must be \"car_following\"");
    }
  }
  ReadBool(obj, "robust", c.robust);
  if (obj.contains("predictor")) {
    if (!obj["predictor"].is_string()) {
      throw ConfigError("controller '" + name + "': predictor must be a string");
    }
    c.predictor = parse_predictor_kind(obj["predictor"].get<std::string>());
  }
  return c;
}

}  // namespace

std::vector<sim::ControllerChoice> default_controllers() {
  return {
      {"baseline_no_predictor", false, PredictorKind::None},
      {"predictor_nominal", false, PredictorKind::Nominal},
      {"predictor_frozen", false, PredictorKind::Frozen},
      {"delay_as_disturbance_tissf", true, PredictorKind::None},
      {"predictor_tissf", true, PredictorKind::Frozen},
      {"predictor_ground_truth_tissf", true, PredictorKind::GroundTruth},
  };
}

const sim::ControllerChoice& Scenario::controller(std::string_view name) const {
  for (const auto& c : controllers) {
    if (c.name == name) return c;
  }
  std::string known;
  for (const auto& c : controllers) known += (known.empty() ? "" : ", ") + c.name;
  throw ConfigError("unknown controller '" + std::string(name) +
                    "' (available: " + known + ")");
}

sim::SimConfig Scenario::config_for(std::string_view name) const {
  sim::SimConfig cfg = base;
  cfg.controller = controller(name);
  return cfg;
}

Scenario parse_scenario(std::string_view json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("scenario is not valid JSON: ") + e.what());
  }
  RejectUnknown(doc, "<root>", {"truck", "lead", "sim", "controllers"});

  Scenario s;
  s.controllers = default_controllers();
  sim::SimConfig& cfg = s.base;

  if (doc.contains("truck")) {
    const Json& t = doc["truck"];
    RejectUnknown(t, "truck",
                  {"tau", "A", "B", "D_st", "kappa", "v_max", "D_sf", "T",
                   "sigma0", "lambda", "xi"});
    auto& p = cfg.truck;
    ReadNumber(t, "tau", p.tau);
    ReadNumber(t, "A", p.A);
    ReadNumber(t, "B", p.B);
    ReadNumber(t, "D_st", p.D_st);
    ReadNumber(t, "kappa", p.kappa);
    ReadNumber(t, "v_max", p.v_max);
    ReadNumber(t, "D_sf", p.D_sf);
    ReadNumber(t, "T", p.T);
    ReadNumber(t, "sigma0", p.sigma0);
    ReadNumber(t, "lambda", p.lambda);
    ReadNumber(t, "xi", p.xi);
  }
  if (doc.contains("lead")) {
    const Json& l = doc["lead"];
    RejectUnknown(l, "lead", {"v0_L", "t_brake", "a_brake"});
    ReadNumber(l, "v0_L", cfg.lead.v0_L);
    ReadNumber(l, "t_brake", cfg.lead.t_brake);
    ReadNumber(l, "a_brake", cfg.lead.a_brake);
  }
  if (doc.contains("sim")) {
    const Json& m = doc["sim"];
    RejectUnknown(m, "sim",
                  {"dt", "t_end", "enable_lag", "assertions", "D0", "v0",
                   "initial_input", "clamp_speed", "input_limit", "n_sub"});
    ReadNumber(m, "dt", cfg.dt);
    ReadNumber(m, "t_end", cfg.t_end);
    ReadBool(m, "enable_lag", cfg.enable_lag);
    ReadBool(m, "assertions", cfg.assertions);
    ReadNumber(m, "D0", cfg.D0);
    ReadNumber(m, "v0", cfg.v0);
    ReadNumber(m, "initial_input", cfg.initial_input);
    ReadBool(m, "clamp_speed", cfg.clamp_speed);
    if (m.contains("input_limit")) {
      double limit = 0.0;
      ReadNumber(m, "input_limit", limit);
      cfg.input_limit = limit;
    }
    if (m.contains("n_sub")) {
      if (!m["n_sub"].is_number_unsigned()) {
        throw ConfigError("scenario key 'n_sub' must be a nonnegative integer");
      }
      cfg.n_sub = m["n_sub"].get<std::size_t>();
    }
  }
  if (doc.contains("controllers")) {
    const Json& c = doc["controllers"];
    if (!c.is_object() || c.empty()) {
      throw ConfigError("'controllers' must be a non-empty object keyed by name");
    }
    s.controllers.clear();
    for (const auto& [name, spec] : c.items()) {
      s.controllers.push_back(ParseController(name, spec));
    }
  }
  cfg.controller = s.controllers.front();
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read scenario file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str());
}

}  // namespace predsafe
