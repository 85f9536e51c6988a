#pragma once

#include "nullcone/geometry.hpp"
#include "nullcone/profile.hpp"

namespace nullcone {

enum class Extension { none, odd };

// d'Alembert solution u(t, xi) of the free 1D wave with data (phi, psi).
// With the odd extension the formula solves the half-line problem with a
// Dirichlet wall at xi = 0. The splitting constant between the left- and
// right-moving waveforms cancels in the sum; `split_constant` exists so
// tests can verify that.
double dalembert(const RadialProfile& phi, const RadialProfile& psi,
                 Extension ext, double t, double xi,
                 double split_constant = 0.0);

// The two-point radiation field of the 1D wave:
//   theta = -1:  (phi' + psi)/2,   theta = +1:  (phi' - psi)/2.
double radiation_1d_exact(const RadialProfile& phi, const RadialProfile& psi,
                          double s, int theta);

// Plane integral of a radial function on R^3: 2 pi Int_{|s|}^{inf} f(r) r dr.
double radon_radial(const RadialProfile& f, double s, double abs_tol = 1e-10);

// Radiation field of the radial wave on R^3 in terms of the data, equal to
// (1/4pi) d_s [ d_s(R phi) + R psi ] with R the radial Radon transform.
// Evaluated in closed form as -[d/ds(s phi(|s|)) + s psi(|s|)] / 2.
double friedlander_r3(const RadialProfile& phi, const RadialProfile& psi,
                      double s);
// Same value computed through the Radon transform by quadrature and
// finite differences; the independent route used to validate the closed form.
double friedlander_r3_radon_route(const RadialProfile& phi,
                                  const RadialProfile& psi, double s);

// Outgoing signal lim ( d_t w ) along s = t - xi for the free reduced wave
// with odd-extended data (w0, w1) = (rho phi, rho psi). This is what probe
// extraction converges to for the exactly solvable scenarios.
double free_outgoing_signal(const Scenario& sc, const InitialData& data,
                            double s);

// Closed-form solution u(t, xi) for the exactly reducible scenarios
// (wave1d, euclidean3d, hyperbolic3d). Throws for the other two.
double exact_solution(const Scenario& sc, const InitialData& data, double t,
                      double xi);
// The reduced field w(t, xi) = rho * u for the same scenarios.
double exact_reduced_solution(const Scenario& sc, const InitialData& data,
                              double t, double xi);

}  // namespace nullcone
