#include "nullcone/profile.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <utility>

#include "nullcone/numerics.hpp"
#include "nullcone/quadrature.hpp"

namespace nullcone {

double RadialProfile::support_radius() const {
  if (is_zero()) return 0.0;
  return std::max(std::fabs(center - support), std::fabs(center + support));
}

RadialProfile zero_profile() {
  RadialProfile p;
  p.value = [](double) { return 0.0; };
  p.deriv = [](double) { return 0.0; };
  p.family = "zero";
  return p;
}

RadialProfile gaussian_profile(double center, double width, double amplitude) {
  if (!(width > 0.0)) throw std::invalid_argument("gaussian profile: width must be positive");
  RadialProfile p;
  p.center = center;
  p.support = 6.0 * width;  // exp(-36) ~ 2e-16 relative at the cut
  p.amplitude = amplitude;
  p.family = "gaussian";
  p.value = [=](double xi) {
    const double y = (xi - center) / width;
    if (std::fabs(y) >= 6.0) return 0.0;
    return amplitude * std::exp(-y * y);
  };
  p.deriv = [=](double xi) {
    const double y = (xi - center) / width;
    if (std::fabs(y) >= 6.0) return 0.0;
    return amplitude * std::exp(-y * y) * (-2.0 * y / width);
  };
  return p;
}

RadialProfile bump_profile(double center, double width, double amplitude) {
  if (!(width > 0.0)) throw std::invalid_argument("bump profile: width must be positive");
  RadialProfile p;
  p.center = center;
  p.support = width;
  p.amplitude = amplitude;
  p.family = "bump";
  p.value = [=](double xi) {
    const double y = (xi - center) / width;
    const double d = 1.0 - y * y;
    if (d <= 1e-12) return 0.0;
    return amplitude * std::exp(1.0 - 1.0 / d);
  };
  p.deriv = [=](double xi) {
    const double y = (xi - center) / width;
    const double d = 1.0 - y * y;
    if (d <= 1e-12) return 0.0;
    return amplitude * std::exp(1.0 - 1.0 / d) * (-2.0 * y / (d * d)) / width;
  };
  return p;
}

RadialProfile sampled_profile(std::vector<double> values, double xi0, double dx) {
  if (values.size() < 4) throw std::invalid_argument("sampled profile: need >= 4 samples");
  if (!(dx > 0.0)) throw std::invalid_argument("sampled profile: dx must be positive");
  const double xi1 = xi0 + dx * static_cast<double>(values.size() - 1);
  auto data = std::make_shared<std::vector<double>>(std::move(values));
  double peak = 0.0;
  for (double v : *data) peak = std::max(peak, std::fabs(v));
  RadialProfile p;
  p.center = 0.5 * (xi0 + xi1);
  p.support = 0.5 * (xi1 - xi0);
  p.amplitude = peak;
  p.family = "sampled";
  p.value = [=](double xi) {
    if (xi <= xi0 || xi >= xi1) return 0.0;
    return interp_cubic(*data, xi0, dx, xi);
  };
  p.deriv = [=](double xi) {
    if (xi <= xi0 || xi >= xi1) return 0.0;
    const double h = 0.5 * dx;
    double lo = std::max(xi - h, xi0), hi = std::min(xi + h, xi1);
    return (interp_cubic(*data, xi0, dx, hi) - interp_cubic(*data, xi0, dx, lo)) /
           (hi - lo);
  };
  return p;
}

double profile_integral(const RadialProfile& p, double a, double b,
                        double abs_tol) {
  if (p.is_zero()) return 0.0;
  // Clip to the support; outside it the profile is identically zero.
  const double lo = p.center - p.support, hi = p.center + p.support;
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  a = std::max(a, lo);
  b = std::min(b, hi);
  if (a >= b) return 0.0;
  return sign * integrate(p.value, a, b, abs_tol);
}

InitialData InitialData::make(RadialProfile phi, RadialProfile psi) {
  InitialData d;
  d.support_radius = std::max(phi.is_zero() ? 0.0 : phi.support_radius(),
                              psi.is_zero() ? 0.0 : psi.support_radius());
  d.phi = std::move(phi);
  d.psi = std::move(psi);
  return d;
}

}  // namespace nullcone
