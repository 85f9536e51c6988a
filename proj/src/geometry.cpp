#include "nullcone/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nullcone/numerics.hpp"

namespace nullcone {

namespace {
constexpr double four_pi = 4.0 * std::numbers::pi;
}

const char* to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::wave1d: return "wave1d";
    case ScenarioKind::euclidean3d: return "euclidean3d";
    case ScenarioKind::hyperbolic3d: return "hyperbolic3d";
    case ScenarioKind::schwarzschild: return "schwarzschild";
    case ScenarioKind::semilinear3d: return "semilinear3d";
  }
  throw std::logic_error("unknown scenario kind");
}

ScenarioKind scenario_kind_from_string(const std::string& name) {
  if (name == "wave1d") return ScenarioKind::wave1d;
  if (name == "euclidean3d") return ScenarioKind::euclidean3d;
  if (name == "hyperbolic3d") return ScenarioKind::hyperbolic3d;
  if (name == "schwarzschild") return ScenarioKind::schwarzschild;
  if (name == "semilinear3d") return ScenarioKind::semilinear3d;
  throw std::invalid_argument("unknown scenario \"" + name + "\"");
}

double tortoise_from_radius(double mass, double r) {
  if (!(mass > 0.0)) throw std::invalid_argument("tortoise map: mass must be positive");
  if (!(r > 2.0 * mass)) throw std::invalid_argument("tortoise map: r must exceed 2M");
  return r + 2.0 * mass * std::log(r - 2.0 * mass);
}

double horizon_gap_from_tortoise(double mass, double rstar) {
  if (!(mass > 0.0)) throw std::invalid_argument("tortoise map: mass must be positive");
  // Solve g(rho) = rho + 2M log(rho) + 2M - rstar = 0 for rho = r - 2M > 0.
  // g is strictly increasing from -inf to +inf.
  const double target = rstar - 2.0 * mass;
  auto g = [&](double rho) { return rho + 2.0 * mass * std::log(rho) - target; };
  auto dg = [&](double rho) { return 1.0 + 2.0 * mass / rho; };
  // Deep inside: rho ~ exp((rstar - 2M) / 2M); far out: rho ~ rstar - 2M.
  double guess = (target < 0.0) ? std::exp(target / (2.0 * mass))
                                : std::max(target, 2.0 * mass);
  guess = std::max(guess, 5e-300);
  double lo = guess, hi = guess;
  while (g(lo) > 0.0 && lo > 1e-300) lo *= 0.25;
  while (g(hi) < 0.0) hi *= 4.0;
  return solve_monotone(g, dg, lo, hi, guess, 1e-13);
}

double radius_from_tortoise(double mass, double rstar) {
  return 2.0 * mass + horizon_gap_from_tortoise(mass, rstar);
}

Scenario make_scenario(ScenarioKind kind, double mass) {
  if (kind == ScenarioKind::schwarzschild) {
    if (!(mass > 0.0))
      throw std::invalid_argument("schwarzschild scenario requires mass > 0");
  } else if (mass != 0.0) {
    throw std::invalid_argument("mass must be 0 except for schwarzschild");
  }
  Scenario sc;
  sc.kind = kind;
  sc.mass = mass;
  switch (kind) {
    case ScenarioKind::wave1d:
      sc.boundary_area = 2.0;  // S^0: two points
      sc.coordinate = "x";
      sc.ends = 1;
      sc.channels = 2;
      break;
    case ScenarioKind::euclidean3d:
    case ScenarioKind::semilinear3d:
      sc.boundary_area = four_pi;
      sc.coordinate = "r";
      sc.ends = 1;
      sc.channels = 1;
      break;
    case ScenarioKind::hyperbolic3d:
      sc.boundary_area = four_pi;
      sc.coordinate = "r";
      sc.ends = 1;
      sc.channels = 1;
      break;
    case ScenarioKind::schwarzschild:
      sc.boundary_area = four_pi;
      sc.coordinate = "rstar";
      sc.ends = 2;
      sc.channels = 2;
      break;
  }
  return sc;
}

double Scenario::reduction_weight(double xi) const {
  switch (kind) {
    case ScenarioKind::wave1d: return 1.0;
    case ScenarioKind::euclidean3d:
    case ScenarioKind::semilinear3d: return xi;
    case ScenarioKind::hyperbolic3d: return std::sinh(xi);
    case ScenarioKind::schwarzschild: return area_radius(xi);
  }
  throw std::logic_error("unknown scenario kind");
}

double Scenario::reduction_weight_deriv(double xi) const {
  switch (kind) {
    case ScenarioKind::wave1d: return 0.0;
    case ScenarioKind::euclidean3d:
    case ScenarioKind::semilinear3d: return 1.0;
    case ScenarioKind::hyperbolic3d: return std::cosh(xi);
    case ScenarioKind::schwarzschild: return lapse(xi);  // dr/drstar
  }
  throw std::logic_error("unknown scenario kind");
}

double Scenario::potential(double xi) const {
  switch (kind) {
    case ScenarioKind::wave1d:
    case ScenarioKind::euclidean3d:
    case ScenarioKind::hyperbolic3d:
    case ScenarioKind::semilinear3d:
      return 0.0;
    case ScenarioKind::schwarzschild: {
      const double r = area_radius(xi);
      return lapse(xi) * 2.0 * mass / (r * r * r);
    }
  }
  throw std::logic_error("unknown scenario kind");
}

double Scenario::nonlinearity(double w, double xi) const {
  if (kind != ScenarioKind::semilinear3d) return 0.0;
  // w^5 / r^4 evaluated as r * (w/r)^5; w vanishes linearly at the origin.
  if (xi == 0.0) return 0.0;
  const double u = w / xi;
  const double u2 = u * u;
  return xi * u2 * u2 * u;
}

double Scenario::measure_weight(double xi) const {
  switch (kind) {
    case ScenarioKind::wave1d: return 1.0;
    case ScenarioKind::euclidean3d:
    case ScenarioKind::semilinear3d: return four_pi * xi * xi;
    case ScenarioKind::hyperbolic3d: {
      const double s = std::sinh(xi);
      return four_pi * s * s;
    }
    case ScenarioKind::schwarzschild: {
      // 4 pi r^2 dr/drstar, with dr/drstar = 1 - 2M/r.
      const double r = area_radius(xi);
      return four_pi * r * r * lapse(xi);
    }
  }
  throw std::logic_error("unknown scenario kind");
}

double Scenario::area_radius(double xi) const {
  if (kind != ScenarioKind::schwarzschild) return xi;
  return 2.0 * mass + horizon_gap_from_tortoise(mass, xi);
}

double Scenario::horizon_gap(double xi) const {
  if (kind != ScenarioKind::schwarzschild) return xi;
  return horizon_gap_from_tortoise(mass, xi);
}

double Scenario::lapse(double xi) const {
  if (kind != ScenarioKind::schwarzschild) return 1.0;
  const double rho = horizon_gap_from_tortoise(mass, xi);
  return rho / (rho + 2.0 * mass);
}

bool Scenario::reduced_equation_is_free() const {
  switch (kind) {
    case ScenarioKind::wave1d:
    case ScenarioKind::euclidean3d:
    case ScenarioKind::hyperbolic3d:
      return true;
    case ScenarioKind::schwarzschild:
    case ScenarioKind::semilinear3d:
      return false;
  }
  throw std::logic_error("unknown scenario kind");
}

bool Scenario::has_origin() const {
  switch (kind) {
    case ScenarioKind::euclidean3d:
    case ScenarioKind::hyperbolic3d:
    case ScenarioKind::semilinear3d:
      return true;
    case ScenarioKind::wave1d:
    case ScenarioKind::schwarzschild:
      return false;
  }
  throw std::logic_error("unknown scenario kind");
}

double cone_coordinate(const Scenario& sc, double t, double xi, End end) {
  if (!sc.valid_end(end))
    throw std::invalid_argument("cone_coordinate: scenario has a single end");
  return (end == End::outer) ? t - xi : t + xi;
}

}  // namespace nullcone
