#pragma once

#include <functional>
#include <string>
#include <vector>

namespace nullcone {

// A radial data profile: an evaluation rule with a declared support radius
// (measured from the profile's center). Values are hard-truncated to zero
// outside [center - support, center + support]; the truncation level is
// below 1e-14 of the peak for the smooth families.
struct RadialProfile {
  std::function<double(double)> value = [](double) { return 0.0; };
  std::function<double(double)> deriv = [](double) { return 0.0; };
  double center = 0.0;
  double support = 0.0;        // half-width about center
  double amplitude = 0.0;      // peak scale, used for validation messages
  std::string family = "zero";

  double operator()(double xi) const { return value(xi); }
  // Outermost extent of the support, measured from the origin.
  double support_radius() const;
  bool is_zero() const { return family == "zero"; }
};

RadialProfile zero_profile();
// amp * exp(-((xi-center)/width)^2), truncated at |xi-center| >= 6*width.
RadialProfile gaussian_profile(double center, double width, double amplitude);
// amp * exp(1 - 1/(1-y^2)), y=(xi-center)/width; support exactly [c-w, c+w].
RadialProfile bump_profile(double center, double width, double amplitude);
// Cubic interpolation of uniform samples; derivative by centered differences.
RadialProfile sampled_profile(std::vector<double> values, double xi0, double dx);

// Definite integral of the profile over [a, b] by adaptive quadrature.
double profile_integral(const RadialProfile& p, double a, double b,
                        double abs_tol = 1e-12);

// The Cauchy pair (phi, psi) for the field u.
struct InitialData {
  RadialProfile phi;
  RadialProfile psi;
  double support_radius = 0.0;  // both profiles vanish for |xi| >= this

  static InitialData make(RadialProfile phi, RadialProfile psi);
};

}  // namespace nullcone
