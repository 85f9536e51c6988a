#pragma once

#include <string>
#include <vector>

#include "nullcone/evolve.hpp"
#include "nullcone/geometry.hpp"

namespace nullcone {

// Radiation samples on a uniform retarded-time grid. Before boundary
// extrapolation a signal holds one series per extraction radius; after,
// a single series for its channel.
struct RadiationSignal {
  ScenarioKind kind;
  End end = End::outer;
  std::string label;                 // channel name, e.g. "infinity"
  double s0 = 0.0;                   // first s sample
  double ds = 0.0;                   // uniform spacing
  std::vector<std::vector<double>> series;  // one per extraction radius
  std::vector<double> extraction_radii;     // snapped probe positions
  double residual = 0.0;             // extrapolation residual estimate

  int n_samples() const {
    return series.empty() ? 0 : static_cast<int>(series.front().size());
  }
  double s_at(int k) const { return s0 + ds * k; }
};

// Rescaled boundary series d_s v at every probe on the requested end,
// resampled onto a common uniform s grid.
RadiationSignal extract_signal(const Scenario& sc, const Trace& trace, End end);

// Richardson extrapolation in the end's boundary defining variable
// (1/r toward infinity, r - 2M toward the horizon, e^-r for hyperbolic
// space). Fits value = A + B x per s and returns A with a residual bound.
RadiationSignal extrapolate_to_boundary(const Scenario& sc,
                                        const RadiationSignal& signal);

// All extrapolated channels of a run, ordered: outer(, inner).
std::vector<RadiationSignal> extract_channels(const Scenario& sc,
                                              const Trace& trace);

// Angular aggregate: F^2(s) = sum over channels of weight * channel(s)^2
// with the boundary weight (1 per S^0 point, 4 pi per sphere), plus its
// running integral.
struct AngularAggregate {
  double s0 = 0.0;
  double ds = 0.0;
  std::vector<double> f_sq;
  std::vector<double> cumulative;  // trapezoid running integral of f_sq

  double total() const { return cumulative.empty() ? 0.0 : cumulative.back(); }
  // Linear interpolation of the running integral at arbitrary s.
  double cumulative_at(double s) const;
};

AngularAggregate aggregate(const Scenario& sc,
                           const std::vector<RadiationSignal>& channels);

}  // namespace nullcone
