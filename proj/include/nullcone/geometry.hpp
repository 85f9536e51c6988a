#pragma once

#include <string>

namespace nullcone {

// The five geometric settings. Every switch over this enum handles all cases.
enum class ScenarioKind {
  wave1d,         // free wave on the line, boundary S^0
  euclidean3d,    // radial wave on R^3
  hyperbolic3d,   // radial shifted wave on hyperbolic 3-space
  schwarzschild,  // spherically symmetric wave on the Schwarzschild exterior
  semilinear3d,   // radial energy-critical semilinear wave on R^3
};

const char* to_string(ScenarioKind kind);
ScenarioKind scenario_kind_from_string(const std::string& name);

// Radiation channel / asymptotic direction. `outer` is the end reached as
// xi -> +infinity (retarded time s = t - xi); `inner` is the opposite end
// (s = t + xi): the left ray for wave1d, the horizon for schwarzschild.
enum class End { outer = 0, inner = 1 };

// Tortoise coordinate rstar = r + 2M log(r - 2M) on the exterior r > 2M,
// and its inverse, solved to 1e-12 relative tolerance.
double tortoise_from_radius(double mass, double r);
double radius_from_tortoise(double mass, double rstar);
// r - 2M for a given rstar, computed without cancellation (stays positive
// arbitrarily close to the horizon).
double horizon_gap_from_tortoise(double mass, double rstar);

// A geometric setting reduced to one spatial dimension:
//   d_tt w = d_xixi w - V(xi) w - N(w, xi),  u = w / rho(xi).
struct Scenario {
  ScenarioKind kind = ScenarioKind::wave1d;
  double mass = 0.0;           // Schwarzschild mass, 0 otherwise
  double boundary_area = 2.0;  // area of the cross-section at infinity
  std::string coordinate;      // "x", "r", or "rstar"
  int ends = 1;                // asymptotic ends (2 only for schwarzschild)
  int channels = 1;            // radiation channels (2 for wave1d, schwarzschild)

  // Reduction weight rho and its derivative.
  double reduction_weight(double xi) const;
  double reduction_weight_deriv(double xi) const;
  double potential(double xi) const;
  double nonlinearity(double w, double xi) const;
  // Volume measure per unit evolution coordinate (includes the angular area
  // and, for schwarzschild, the Jacobian dr/drstar).
  double measure_weight(double xi) const;

  // Schwarzschild helpers (identity map / zero elsewhere).
  double area_radius(double xi) const;      // r(xi)
  double horizon_gap(double xi) const;      // r(xi) - 2M
  double lapse(double xi) const;            // 1 - 2M/r

  bool reduced_equation_is_free() const;    // V == 0 and N == 0
  bool has_origin() const;                  // Dirichlet wall at xi = 0
  bool valid_end(End e) const {
    return e == End::outer || channels == 2;
  }
};

// Builds the scenario table entry for a kind. `mass` must be positive for
// schwarzschild and zero otherwise.
Scenario make_scenario(ScenarioKind kind, double mass);

// Retarded/advanced time labeling outgoing wavefronts at the given end.
// Throws for an end the scenario does not have.
double cone_coordinate(const Scenario& sc, double t, double xi, End end);

}  // namespace nullcone
