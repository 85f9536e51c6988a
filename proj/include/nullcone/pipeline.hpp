#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nullcone/config.hpp"
#include "nullcone/diagnostics.hpp"
#include "nullcone/radiation.hpp"

namespace nullcone {

struct CheckFlag {
  std::string name;
  double value;
  double tolerance;
  bool pass;
};

struct RunArtifacts {
  RunConfig config;
  Scenario scenario;
  double t_final = 0.0;  // achieved final time
  EnergyLedger ledger;
  std::vector<RadiationSignal> channels;  // extrapolated, one per channel
  AngularAggregate agg;
  UnitarityResult unitarity{};
  std::optional<PropReport> prop;
  std::vector<CheckFlag> flags;

  bool all_pass() const;
};

// Full pipeline: evolve, extract, extrapolate, aggregate, diagnose.
RunArtifacts run_scenario(const RunConfig& cfg);

// Emits energies.csv, radiation.csv, cones.csv and report.json.
void write_outputs(const RunArtifacts& art, const std::string& out_dir);
std::string report_json(const RunArtifacts& art);
std::string energies_csv(const RunArtifacts& art);
std::string radiation_csv(const RunArtifacts& art);
std::string cones_csv(const RunArtifacts& art);

struct SweepLevel {
  int cells;
  double error;
  std::optional<double> order;  // empty on the first measurable row
  bool exact;                   // error at round-off
};

struct SweepResult {
  bool oracle_based;
  std::vector<SweepLevel> levels;
  std::vector<CheckFlag> flags;
  bool all_pass() const;
};

// Repeats the run at cells x {1, 2, 4, ...}; error against the closed-form
// solution where one exists, self-convergence against the next finer level
// otherwise. Probes and diagnostics are skipped.
SweepResult convergence_sweep(const RunConfig& cfg, int levels);

void write_sweep(const SweepResult& res, const std::string& out_dir);
std::string sweep_csv(const SweepResult& res);
std::string sweep_report_json(const SweepResult& res);

}  // namespace nullcone
