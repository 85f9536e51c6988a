#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nullcone/geometry.hpp"
#include "nullcone/profile.hpp"

namespace nullcone {

struct RadialGrid {
  double xi_min = 0.0;
  double xi_max = 0.0;
  int n_cells = 0;

  double h() const { return (xi_max - xi_min) / n_cells; }
  int n_points() const { return n_cells + 1; }
  double point(int i) const { return xi_min + h() * i; }
  // Nearest grid index to a position.
  int index_of(double xi) const;

  void validate(const Scenario& sc) const;
};

struct WaveState {
  double t = 0.0;
  double dt = 0.0;
  std::vector<double> w_curr;
  std::vector<double> w_prev;
};

// Thrown when the update produces a non-finite value.
struct InstabilityError : std::runtime_error {
  int index;
  double time;
  InstabilityError(int i, double t_)
      : std::runtime_error("instability: non-finite value at index " +
                           std::to_string(i) + ", t = " + std::to_string(t_)),
        index(i),
        time(t_) {}
};

// Grid-cached scenario coefficients so the hot loop never root-finds.
struct ScenarioOnGrid {
  Scenario scenario;
  RadialGrid grid;
  std::vector<double> potential;       // V at each point
  std::vector<double> rho;             // reduction weight
  std::vector<double> drho;            // d rho / d xi
  std::vector<double> weight;          // measure weight
  std::vector<double> xi;              // grid points

  ScenarioOnGrid(const Scenario& sc, const RadialGrid& g);
};

// Rejects data whose support escapes the grid or, for the radial kinds,
// straddles the origin off-center.
void validate_initial_data(const Scenario& sc, const RadialGrid& grid,
                           const InitialData& data);

// Initial two-level state: w_curr at t = 0 and w_prev at t = -dt.
// For the exactly free reductions w_prev is the exact d'Alembert shift of
// the reduced data; otherwise a 2nd-order Taylor step.
WaveState init_state(const Scenario& sc, const RadialGrid& grid,
                     const InitialData& data, double cfl);
WaveState init_state(const ScenarioOnGrid& cache, const InitialData& data,
                     double cfl);

// One leapfrog step. Aborts with InstabilityError on non-finite values.
WaveState step(const ScenarioOnGrid& cache, const WaveState& state);

// View of the three time levels around the current step, for observers.
struct StepView {
  double t;                       // time of the middle level
  double dt;
  std::span<const double> w_minus;  // t - dt
  std::span<const double> w;        // t
  std::span<const double> w_plus;   // t + dt
};

// A state snapshot carrying three time levels (enables centered d_t).
struct SampledState {
  double t = 0.0;
  double dt = 0.0;
  std::vector<double> w_minus, w, w_plus;
};

struct ProbeSeries {
  int index = 0;        // grid index
  double position = 0;  // snapped grid position
  std::vector<double> w;  // one sample per step, starting at t = 0
};

struct Trace {
  ScenarioKind kind;
  RadialGrid grid;
  double dt = 0.0;
  double t_final = 0.0;  // actual final time reached
  int steps = 0;
  std::vector<ProbeSeries> probes;
  std::vector<SampledState> states;  // at stride and at sample times
};

struct RunOptions {
  double cfl = 0.9;
  double t_final = 0.0;
  std::vector<double> probe_positions;
  int state_stride = 0;  // 0: no stride-based snapshots
  std::vector<double> sample_times;
  // Called once per completed step with the surrounding three levels.
  std::function<void(const StepView&)> observer;
};

Trace run(const Scenario& sc, const RadialGrid& grid, const InitialData& data,
          const RunOptions& opts);
Trace run(const ScenarioOnGrid& cache, const InitialData& data,
          const RunOptions& opts);

}  // namespace nullcone
