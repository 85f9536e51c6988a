#include "nullcone/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "nullcone/quadrature.hpp"

namespace nullcone {

namespace {

// Odd extension of a half-line profile product w(xi) = rho(xi) * p(xi).
double odd_value(const RadialProfile& p, double xi) {
  return xi < 0.0 ? -p.value(-xi) : p.value(xi);
}

// Integral of the odd extension of p over [a, b].
double odd_integral(const RadialProfile& p, double a, double b) {
  if (p.is_zero()) return 0.0;
  // Oddness: Int_a^b = Int_{|a| sign stuff} ... reduce to positive half-line.
  auto prim = [&](double x) {
    // Int_0^x of the odd extension = sign-free integral on [0, |x|].
    return profile_integral(p, 0.0, std::fabs(x));
  };
  return prim(b) - prim(a);
}

}  // namespace

double dalembert(const RadialProfile& phi, const RadialProfile& psi,
                 Extension ext, double t, double xi, double split_constant) {
  const double C = split_constant;
  auto value = [&](double x) {
    return ext == Extension::odd ? odd_value(phi, x) : phi.value(x);
  };
  auto accum = [&](double x) {
    // Int_0^x of the (possibly odd-extended) psi.
    return ext == Extension::odd ? odd_integral(psi, 0.0, x)
                                 : profile_integral(psi, 0.0, x);
  };
  const double fwd = 0.5 * value(xi + t) + 0.5 * accum(xi + t) + C;  // F
  const double bwd = 0.5 * value(xi - t) - 0.5 * accum(xi - t) - C;  // G
  return fwd + bwd;
}

double radiation_1d_exact(const RadialProfile& phi, const RadialProfile& psi,
                          double s, int theta) {
  if (theta != 1 && theta != -1)
    throw std::invalid_argument("radiation_1d_exact: theta must be +1 or -1");
  const double dphi = phi.deriv(s);
  const double p = psi.value(s);
  return (theta == -1) ? 0.5 * dphi + 0.5 * p : 0.5 * dphi - 0.5 * p;
}

double radon_radial(const RadialProfile& f, double s, double abs_tol) {
  if (f.is_zero()) return 0.0;
  const double lo = std::fabs(s);
  const double hi = f.center + f.support;
  if (lo >= hi) return 0.0;
  auto integrand = [&](double r) { return f.value(r) * r; };
  return 2.0 * std::numbers::pi * integrate(integrand, lo, hi, abs_tol);
}

double friedlander_r3(const RadialProfile& phi, const RadialProfile& psi,
                      double s) {
  const double a = std::fabs(s);
  // d/ds [ s phi(|s|) ] = phi(|s|) + |s| phi'(|s|), on either sign of s.
  const double phi_part = phi.value(a) + a * phi.deriv(a);
  const double psi_part = s * psi.value(a);
  return -0.5 * (phi_part + psi_part);
}

double friedlander_r3_radon_route(const RadialProfile& phi,
                                  const RadialProfile& psi, double s) {
  // (1/4pi) [ d_s^2 (R phi) + d_s (R psi) ] by centered differences of the
  // quadrature Radon transform. Step sized against the support scale.
  const double scale =
      std::max({phi.is_zero() ? 0.0 : phi.support, psi.is_zero() ? 0.0 : psi.support, 1.0});
  const double h = 1e-4 * scale;
  const double inv4pi = 1.0 / (4.0 * std::numbers::pi);
  double out = 0.0;
  if (!phi.is_zero()) {
    const double d2 = (radon_radial(phi, s + h) - 2.0 * radon_radial(phi, s) +
                       radon_radial(phi, s - h)) /
                      (h * h);
    out += d2;
  }
  if (!psi.is_zero()) {
    const double d1 =
        (radon_radial(psi, s + h) - radon_radial(psi, s - h)) / (2.0 * h);
    out += d1;
  }
  return inv4pi * out;
}

double free_outgoing_signal(const Scenario& sc, const InitialData& data,
                            double s) {
  if (!sc.reduced_equation_is_free())
    throw std::invalid_argument("free_outgoing_signal: scenario is not exactly reducible");
  if (sc.kind == ScenarioKind::wave1d) {
    // Outgoing limit at the right end: -G'(-s).
    return -radiation_1d_exact(data.phi, data.psi, -s, +1);
  }
  // Half-line reduced data w0 = rho phi, w1 = rho psi, odd-extended:
  // -G~'(-s) = -(w0'(s) + w1(s)) / 2 using w0' even, w1 odd.
  const double a = std::fabs(s);
  const double rho = sc.reduction_weight(a);
  const double drho = sc.reduction_weight_deriv(a);
  const double w0d = drho * data.phi.value(a) + rho * data.phi.deriv(a);
  const double w1 = rho * data.psi.value(a);
  return -0.5 * (w0d + (s < 0.0 ? -w1 : w1));
}

double exact_reduced_solution(const Scenario& sc, const InitialData& data,
                              double t, double xi) {
  switch (sc.kind) {
    case ScenarioKind::wave1d:
      return dalembert(data.phi, data.psi, Extension::none, t, xi);
    case ScenarioKind::euclidean3d:
    case ScenarioKind::hyperbolic3d: {
      // Evolve the odd-extended reduced data by the free wave.
      auto w0 = [&](double x) {
        const double a = std::fabs(x);
        const double v = sc.reduction_weight(a) * data.phi.value(a);
        return x < 0.0 ? -v : v;
      };
      auto w1 = [&](double x) {
        const double a = std::fabs(x);
        const double v = sc.reduction_weight(a) * data.psi.value(a);
        return x < 0.0 ? -v : v;
      };
      double val = 0.5 * (w0(xi + t) + w0(xi - t));
      if (!data.psi.is_zero()) {
        const double R = data.support_radius;
        double a = xi - t, b = xi + t;
        const double sign = a <= b ? 1.0 : -1.0;
        if (a > b) std::swap(a, b);
        a = std::max(a, -R);
        b = std::min(b, R);
        if (a < b) {
          // Split at the origin where the odd extension has a kink.
          val += sign * 0.5 * integrate_split(w1, a, std::clamp(0.0, a, b), b, 1e-11);
        }
      }
      return val;
    }
    case ScenarioKind::schwarzschild:
    case ScenarioKind::semilinear3d:
      throw std::invalid_argument("no closed form for this scenario");
  }
  throw std::logic_error("unknown scenario kind");
}

double exact_solution(const Scenario& sc, const InitialData& data, double t,
                      double xi) {
  if (sc.kind == ScenarioKind::wave1d)
    return exact_reduced_solution(sc, data, t, xi);
  if (xi == 0.0) {
    // u = w / rho at the origin by one-sided 2nd-order extrapolation.
    const double d = 1e-3;
    auto u = [&](double x) {
      return exact_reduced_solution(sc, data, t, x) / sc.reduction_weight(x);
    };
    return 2.0 * u(d) - u(2.0 * d);
  }
  return exact_reduced_solution(sc, data, t, xi) / sc.reduction_weight(xi);
}

}  // namespace nullcone
