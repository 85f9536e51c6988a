#pragma once

#include <optional>
#include <vector>

#include "nullcone/evolve.hpp"
#include "nullcone/geometry.hpp"
#include "nullcone/radiation.hpp"

namespace nullcone {

// Kinetic and potential energy densities (physical formulas, uniform 1/2
// convention) plus the measure weight turning them into integrals over the
// evolution coordinate.
struct EnergyDensityField {
  std::vector<double> xi;
  std::vector<double> e_kinetic;
  std::vector<double> e_potential;
  std::vector<double> weight;
  // For the semilinear scenario, the |u|^6/6 part of e_potential.
  std::vector<double> e_sextic;
};

EnergyDensityField energy_densities(const ScenarioOnGrid& cache,
                                    const SampledState& state);

struct EnergyRow {
  double t;
  double e_kinetic;
  double e_potential;
  double e_total;
  double gap;      // e_kinetic - e_potential
  double e_sextic;  // nonlinear part of the energy (semilinear only)
};

// Cone partial energies over { s(t, .) <= lambda } at a sampled state.
struct ConeEnergies {
  double e_kinetic;
  double e_potential;
};

ConeEnergies cone_energies(const ScenarioOnGrid& cache,
                           const SampledState& state, double lambda);

// Energy over the complement { s(t, .) > lambda }; asserts agreement with
// E(t) - E_K(lambda) - E_P(lambda).
double tail_energy(const ScenarioOnGrid& cache, const SampledState& state,
                   double lambda);

// Time series plus the (lambda, T) tables needed by the limit checks.
struct EnergyLedger {
  std::vector<EnergyRow> rows;                   // one per step
  std::vector<double> sample_times;              // requested snapshot times
  std::vector<double> lambdas;
  // Indexed [sample][lambda].
  std::vector<std::vector<ConeEnergies>> cones;
  std::vector<std::vector<double>> tails;

  double initial_energy() const { return rows.empty() ? 0.0 : rows.front().e_total; }
  double max_drift() const;  // max |E(t) - E(0)| / E(0)
  const EnergyRow& row_at(double t) const;       // nearest recorded row
};

// Streaming ledger builder; attach `observer()` to RunOptions.
class LedgerBuilder {
 public:
  LedgerBuilder(const ScenarioOnGrid& cache, std::vector<double> lambdas,
                std::vector<double> sample_times);
  std::function<void(const StepView&)> observer();
  EnergyLedger take();

 private:
  const ScenarioOnGrid& cache_;
  EnergyLedger ledger_;
};

double equipartition_gap(const EnergyLedger& ledger, double t);

struct UnitarityResult {
  double defect;        // |E(0) - ||F||^2| / E(0)
  bool zero_energy;     // E(0) == 0; defect reported as 0
  bool plateau_ok;      // cumulative growth < 1e-4 over the last 10% of s
};

UnitarityResult unitarity_defect(const EnergyLedger& ledger,
                                 const AngularAggregate& agg);

// Checks of the two radiation-limit conditions over increasing T.
struct PropConditionRow {
  double lambda;
  double t;
  double err_kinetic;    // |E_K(lambda,T) - cumulative(lambda)/2|
  double err_potential;
  double half_cumulative;
};

struct PropReport {
  std::vector<PropConditionRow> rows;  // lambda-major, T increasing
  double defect_energy_identity;       // the total-energy identity defect
  double final_tolerance;              // applied to errors at the last T
  double decreasing_slack;
  bool pass;
};

// PASS requires each error sequence nonincreasing in T (up to the slack)
// and below `final_tol * E` at the largest T, plus the energy identity
// within `identity_tol`.
PropReport check_prop_conditions(const EnergyLedger& ledger,
                                 const AngularAggregate& agg,
                                 double final_tol, double identity_tol);

}  // namespace nullcone
