#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace nullcone {

// Safeguarded Newton/bisection for a strictly monotone function on [lo, hi].
// Converges to relative tolerance rel_tol on the root.
inline double solve_monotone(const std::function<double(double)>& f,
                             const std::function<double(double)>& df,
                             double lo, double hi, double x0,
                             double rel_tol = 1e-12) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw std::invalid_argument("solve_monotone: root not bracketed");
  const bool increasing = fhi > flo;
  double x = std::clamp(x0, lo, hi);
  for (int it = 0; it < 200; ++it) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx > 0.0) == increasing)
      hi = x;
    else
      lo = x;
    const double d = df(x);
    double next = (d != 0.0) ? x - fx / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - x) <= rel_tol * (std::fabs(next) + 1e-300)) return next;
    x = next;
  }
  return x;
}

// Centered 2nd-order derivative of a uniformly sampled series; one-sided
// 2nd-order at the ends.
inline std::vector<double> differentiate_series(std::span<const double> y,
                                                double dx) {
  const std::size_t n = y.size();
  if (n < 3) throw std::invalid_argument("differentiate_series: need >= 3 samples");
  std::vector<double> d(n);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i - 1]) / (2.0 * dx);
  d[0] = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * dx);
  d[n - 1] = (3.0 * y[n - 1] - 4.0 * y[n - 2] + y[n - 3]) / (2.0 * dx);
  return d;
}

// Cubic (4-point Lagrange) interpolation of a uniform series y sampled at
// x0 + k*dx, evaluated at x. Falls back to the one-sided stencil near ends.
inline double interp_cubic(std::span<const double> y, double x0, double dx,
                           double x) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(y.size());
  if (n < 4) throw std::invalid_argument("interp_cubic: need >= 4 samples");
  const double u = (x - x0) / dx;
  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(std::floor(u));
  i = std::clamp<std::ptrdiff_t>(i - 1, 0, n - 4);
  const double t = u - static_cast<double>(i);
  // Lagrange basis on nodes {0,1,2,3} in local units.
  const double l0 = -(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0;
  const double l1 = t * (t - 2.0) * (t - 3.0) / 2.0;
  const double l2 = -t * (t - 1.0) * (t - 3.0) / 2.0;
  const double l3 = t * (t - 1.0) * (t - 2.0) / 6.0;
  return l0 * y[i] + l1 * y[i + 1] + l2 * y[i + 2] + l3 * y[i + 3];
}

// Trapezoid rule over a uniformly gridded sample set.
inline double trapezoid(std::span<const double> y, double dx) {
  if (y.size() < 2) return 0.0;
  double s = 0.5 * (y.front() + y.back());
  for (std::size_t i = 1; i + 1 < y.size(); ++i) s += y[i];
  return s * dx;
}

}  // namespace nullcone
