#pragma once

#include "nullcone/geometry.hpp"

namespace nullcone {

// Check thresholds applied by run reports and by the acceptance suite.
// Exactly reducible scenarios are held to the tight radiation budget; the
// potential/nonlinear ones to the resolution-limited one.
struct CheckTolerances {
  double unitarity;        // |E(0) - ||F||^2| / E(0)
  double final_gap;        // |E_K - E_P| / E at the end of the run
  double prop_final;       // limit-condition errors at the largest T
  double energy_drift;     // max |E(t) - E(0)| / E(0), closed-domain runs
};

inline CheckTolerances check_tolerances(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::wave1d:
    case ScenarioKind::euclidean3d:
      return {1e-3, 1e-6, 1e-2, 1e-4};
    case ScenarioKind::hyperbolic3d:
      return {1e-3, 1e-2, 1e-2, 1e-4};
    case ScenarioKind::schwarzschild:
      return {2e-2, 5e-2, 1e-2, 1e-4};
    case ScenarioKind::semilinear3d:
      return {2e-2, 5e-2, 1e-2, 1e-4};
  }
  return {1e-3, 1e-2, 1e-2, 1e-4};
}

}  // namespace nullcone
