#pragma once

#include <string>
#include <vector>

#include "nullcone/evolve.hpp"
#include "nullcone/geometry.hpp"
#include "nullcone/profile.hpp"

namespace nullcone {

struct DataSpec {
  std::string kind = "zero";  // gaussian | bump | zero
  double center = 0.0;
  double width = 1.0;
  double amplitude = 0.0;
};

struct RunConfig {
  std::string scenario = "wave1d";
  double mass = 0.0;
  RadialGrid grid;
  double cfl = 0.9;
  double t_final = 0.0;
  DataSpec data;
  bool probes_auto = true;
  std::vector<double> probes;  // explicit positions when probes_auto is false
  std::vector<double> lambdas;
  std::vector<double> sample_times;
  int state_stride = 0;
  std::string out;

  Scenario make_scenario_checked() const;
  InitialData make_initial_data() const;
  // Explicit positions, or three per end in the outer (and, for the
  // two-channel scenarios, inner) 20% of the grid.
  std::vector<double> resolve_probes() const;
};

// Parses and validates a JSON document. Unknown keys anywhere are rejected;
// schema violations name the offending key; semantic violations (mass,
// support, probes) are checked here too.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

}  // namespace nullcone
