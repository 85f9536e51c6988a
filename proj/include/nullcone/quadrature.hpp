#pragma once

#include <functional>

namespace nullcone {

// Adaptive Gauss-Kronrod (7,15) integration on a finite interval.
// Subdivides until the local Kronrod error estimate meets the absolute
// tolerance, distributed across subintervals.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10);

// Convenience: integrate with an interior breakpoint (e.g. a kink at 0).
double integrate_split(const std::function<double(double)>& f, double a,
                       double mid, double b, double abs_tol = 1e-10);

}  // namespace nullcone
