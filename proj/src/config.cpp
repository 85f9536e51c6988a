#include "nullcone/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace nullcone {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key))
      throw std::invalid_argument("config: unknown key \"" + key + "\" in " +
                                  where);
  }
}

double require_finite(const json& v, const std::string& key) {
  if (!v.is_number())
    throw std::invalid_argument("config: \"" + key + "\" must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x))
    throw std::invalid_argument("config: \"" + key + "\" must be finite");
  return x;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: parse error: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("config: document must be an object");

  reject_unknown_keys(doc,
                      {"scenario", "mass", "grid", "cfl", "t_final", "data",
                       "probes", "lambdas", "sample_times", "state_stride",
                       "out"},
                      "the top level");

  RunConfig cfg;
  if (!doc.contains("scenario"))
    throw std::invalid_argument("config: missing \"scenario\"");
  cfg.scenario = doc["scenario"].get<std::string>();
  scenario_kind_from_string(cfg.scenario);  // validates the name

  if (doc.contains("mass")) cfg.mass = require_finite(doc["mass"], "mass");

  if (!doc.contains("grid")) throw std::invalid_argument("config: missing \"grid\"");
  const json& g = doc["grid"];
  if (!g.is_object()) throw std::invalid_argument("config: \"grid\" must be an object");
  reject_unknown_keys(g, {"min", "max", "cells"}, "\"grid\"");
  cfg.grid.xi_min = require_finite(g.at("min"), "grid.min");
  cfg.grid.xi_max = require_finite(g.at("max"), "grid.max");
  if (!g.contains("cells") || !g["cells"].is_number_integer())
    throw std::invalid_argument("config: \"grid.cells\" must be an integer");
  cfg.grid.n_cells = g["cells"].get<int>();

  if (doc.contains("cfl")) cfg.cfl = require_finite(doc["cfl"], "cfl");
  if (!(cfg.cfl > 0.0 && cfg.cfl <= 1.0))
    throw std::invalid_argument("config: \"cfl\" must lie in (0, 1]");

  if (!doc.contains("t_final"))
    throw std::invalid_argument("config: missing \"t_final\"");
  cfg.t_final = require_finite(doc["t_final"], "t_final");
  if (cfg.t_final < 0.0)
    throw std::invalid_argument("config: \"t_final\" must be >= 0");

  if (doc.contains("data")) {
    const json& d = doc["data"];
    if (!d.is_object()) throw std::invalid_argument("config: \"data\" must be an object");
    reject_unknown_keys(d, {"kind", "center", "width", "amplitude"}, "\"data\"");
    cfg.data.kind = d.at("kind").get<std::string>();
    if (cfg.data.kind != "gaussian" && cfg.data.kind != "bump" &&
        cfg.data.kind != "zero")
      throw std::invalid_argument("config: \"data.kind\" must be gaussian, bump or zero");
    if (d.contains("center")) cfg.data.center = require_finite(d["center"], "data.center");
    if (d.contains("width")) cfg.data.width = require_finite(d["width"], "data.width");
    if (d.contains("amplitude"))
      cfg.data.amplitude = require_finite(d["amplitude"], "data.amplitude");
    if (cfg.data.amplitude < 0.0)
      throw std::invalid_argument("config: \"data.amplitude\" must be >= 0");
    if (cfg.data.kind != "zero" && !(cfg.data.width > 0.0))
      throw std::invalid_argument("config: \"data.width\" must be positive");
  }

  if (doc.contains("probes")) {
    const json& p = doc["probes"];
    if (p.is_string()) {
      if (p.get<std::string>() != "auto")
        throw std::invalid_argument("config: \"probes\" must be \"auto\" or an array");
      cfg.probes_auto = true;
    } else if (p.is_array()) {
      cfg.probes_auto = false;
      for (const auto& v : p) cfg.probes.push_back(require_finite(v, "probes[]"));
    } else {
      throw std::invalid_argument("config: \"probes\" must be \"auto\" or an array");
    }
  }

  if (doc.contains("lambdas")) {
    if (!doc["lambdas"].is_array())
      throw std::invalid_argument("config: \"lambdas\" must be an array");
    for (const auto& v : doc["lambdas"])
      cfg.lambdas.push_back(require_finite(v, "lambdas[]"));
  }

  if (doc.contains("sample_times")) {
    if (!doc["sample_times"].is_array())
      throw std::invalid_argument("config: \"sample_times\" must be an array");
    for (const auto& v : doc["sample_times"])
      cfg.sample_times.push_back(require_finite(v, "sample_times[]"));
    for (std::size_t i = 1; i < cfg.sample_times.size(); ++i)
      if (!(cfg.sample_times[i] > cfg.sample_times[i - 1]))
        throw std::invalid_argument("config: \"sample_times\" must be increasing");
  }

  if (doc.contains("state_stride")) {
    if (!doc["state_stride"].is_number_integer())
      throw std::invalid_argument("config: \"state_stride\" must be an integer");
    cfg.state_stride = doc["state_stride"].get<int>();
    if (cfg.state_stride < 0)
      throw std::invalid_argument("config: \"state_stride\" must be >= 0");
  }

  if (doc.contains("out")) cfg.out = doc["out"].get<std::string>();

  // Semantic checks that do not need the grid cache.
  const Scenario sc = cfg.make_scenario_checked();
  cfg.grid.validate(sc);
  validate_initial_data(sc, cfg.grid, cfg.make_initial_data());
  if (!cfg.probes_auto) {
    const double margin = 10.0 * cfg.grid.h();
    for (double p : cfg.probes)
      if (p < cfg.grid.xi_min + margin || p > cfg.grid.xi_max - margin)
        throw std::invalid_argument(
            "config: probe within 10 h of the grid boundary");
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

Scenario RunConfig::make_scenario_checked() const {
  return make_scenario(scenario_kind_from_string(scenario), mass);
}

InitialData RunConfig::make_initial_data() const {
  RadialProfile phi;
  if (data.kind == "gaussian")
    phi = gaussian_profile(data.center, data.width, data.amplitude);
  else if (data.kind == "bump")
    phi = bump_profile(data.center, data.width, data.amplitude);
  else
    phi = zero_profile();
  return InitialData::make(std::move(phi), zero_profile());
}

std::vector<double> RunConfig::resolve_probes() const {
  if (!probes_auto) return probes;
  const Scenario sc = make_scenario_checked();
  const double span = grid.xi_max - grid.xi_min;
  std::vector<double> out;
  for (double f : {0.80, 0.85, 0.90})
    out.push_back(grid.xi_min + f * span);
  if (sc.channels == 2)
    for (double f : {0.20, 0.15, 0.10})
      out.push_back(grid.xi_min + f * span);
  return out;
}

}  // namespace nullcone
