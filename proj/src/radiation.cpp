#include "nullcone/radiation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nullcone/numerics.hpp"

namespace nullcone {

namespace {

std::string channel_label(ScenarioKind kind, End end) {
  switch (kind) {
    case ScenarioKind::wave1d:
      return end == End::outer ? "theta=+1" : "theta=-1";
    case ScenarioKind::schwarzschild:
      return end == End::outer ? "infinity" : "horizon";
    default:
      return "infinity";
  }
}

// Boundary defining variable for Richardson extrapolation toward the end.
double boundary_variable(const Scenario& sc, End end, double xi) {
  switch (sc.kind) {
    case ScenarioKind::wave1d:
      return 1.0 / std::fabs(xi);
    case ScenarioKind::euclidean3d:
    case ScenarioKind::semilinear3d:
      return 1.0 / xi;
    case ScenarioKind::hyperbolic3d:
      return std::exp(-xi);
    case ScenarioKind::schwarzschild:
      return end == End::outer ? 1.0 / sc.area_radius(xi) : sc.horizon_gap(xi);
  }
  throw std::logic_error("unknown scenario kind");
}

}  // namespace

RadiationSignal extract_signal(const Scenario& sc, const Trace& trace, End end) {
  if (!sc.valid_end(end))
    throw std::invalid_argument("extract_signal: scenario has a single end");

  // Probes belonging to this end: upper half of the grid for the outer end,
  // lower half for the inner one.
  const double mid = 0.5 * (trace.grid.xi_min + trace.grid.xi_max);
  std::vector<const ProbeSeries*> probes;
  for (const auto& ps : trace.probes) {
    const bool outer_side = ps.position > mid;
    if ((end == End::outer) == outer_side || sc.channels == 1)
      probes.push_back(&ps);
  }
  if (probes.size() < 3)
    throw std::invalid_argument("extract_signal: need >= 3 probes near the end");

  const double h = trace.grid.h();
  for (const auto* ps : probes) {
    const double gap = std::min(ps->position - trace.grid.xi_min,
                                trace.grid.xi_max - ps->position);
    if (gap < 10.0 * h)
      throw std::invalid_argument(
          "extract_signal: probe within 10 h of an outflow boundary");
  }
  // Sort from the boundary inward: first probe is the most asymptotic one.
  std::sort(probes.begin(), probes.end(),
            [&](const ProbeSeries* a, const ProbeSeries* b) {
              return end == End::outer ? a->position > b->position
                                       : a->position < b->position;
            });

  const double dt = trace.dt;
  const double t_end = trace.t_final;

  // Common retarded-time window covered by every probe, trimmed by one
  // sample at each end for the derivative stencil.
  double s_lo = -1e300, s_hi = 1e300;
  for (const auto* ps : probes) {
    const double a = cone_coordinate(sc, 0.0, ps->position, end);
    const double b = cone_coordinate(sc, t_end, ps->position, end);
    s_lo = std::max(s_lo, a);
    s_hi = std::min(s_hi, b);
  }
  s_lo += 2.0 * dt;
  s_hi -= 2.0 * dt;
  if (s_hi - s_lo < 8.0 * dt)
    throw std::invalid_argument("extract_signal: insufficient probe span");

  const int n = static_cast<int>(std::floor((s_hi - s_lo) / dt)) + 1;

  RadiationSignal sig;
  sig.kind = sc.kind;
  sig.end = end;
  sig.label = channel_label(sc.kind, end);
  sig.s0 = s_lo;
  sig.ds = dt;

  for (const auto* ps : probes) {
    // The rescaled boundary series: v(t) = w(t, xi_p) at the outer ends;
    // the horizon channel carries the 2M/r weight of d_tau u.
    std::vector<double> v = ps->w;
    if (sc.kind == ScenarioKind::schwarzschild && end == End::inner) {
      const double scale = 2.0 * sc.mass / sc.area_radius(ps->position);
      for (double& x : v) x *= scale;
    }
    // d_s v along the probe: s and t advance together, so d_s = d_t.
    std::vector<double> dv = differentiate_series(v, dt);
    // Resample onto the common s grid by cubic interpolation.
    const double s_first = cone_coordinate(sc, 0.0, ps->position, end);
    std::vector<double> res(n);
    for (int k = 0; k < n; ++k)
      res[k] = interp_cubic(dv, s_first, dt, sig.s_at(k));
    sig.series.push_back(std::move(res));
    sig.extraction_radii.push_back(ps->position);
  }
  return sig;
}

RadiationSignal extrapolate_to_boundary(const Scenario& sc,
                                        const RadiationSignal& signal) {
  const std::size_t m = signal.series.size();
  if (m < 3)
    throw std::invalid_argument("extrapolate_to_boundary: need >= 3 radii");
  const int n = signal.n_samples();

  std::vector<double> x(m);
  for (std::size_t p = 0; p < m; ++p)
    x[p] = boundary_variable(sc, signal.end, signal.extraction_radii[p]);

  RadiationSignal out;
  out.kind = signal.kind;
  out.end = signal.end;
  out.label = signal.label;
  out.s0 = signal.s0;
  out.ds = signal.ds;
  out.extraction_radii = signal.extraction_radii;

  double xbar = 0.0;
  for (double v : x) xbar += v;
  xbar /= static_cast<double>(m);
  double sxx = 0.0;
  for (double v : x) sxx += (v - xbar) * (v - xbar);

  const double spread =
      *std::max_element(x.begin(), x.end()) - *std::min_element(x.begin(), x.end());
  const double scale = 1.0 + std::fabs(xbar);

  std::vector<double> a(n);
  double residual = 0.0;
  if (spread < 1e-9 * scale) {
    // Degenerate radii (e.g. probes exponentially close to a horizon):
    // take the most asymptotic probe and report the cross-probe spread.
    std::size_t best = 0;
    for (std::size_t p = 1; p < m; ++p)
      if (x[p] < x[best]) best = p;
    a = signal.series[best];
    for (int k = 0; k < n; ++k)
      for (std::size_t p = 0; p < m; ++p)
        residual = std::max(residual, std::fabs(signal.series[p][k] - a[k]));
  } else {
    for (int k = 0; k < n; ++k) {
      double ybar = 0.0;
      for (std::size_t p = 0; p < m; ++p) ybar += signal.series[p][k];
      ybar /= static_cast<double>(m);
      double sxy = 0.0;
      for (std::size_t p = 0; p < m; ++p)
        sxy += (x[p] - xbar) * (signal.series[p][k] - ybar);
      const double slope = sxy / sxx;
      a[k] = ybar - slope * xbar;
      for (std::size_t p = 0; p < m; ++p) {
        const double fit = a[k] + slope * x[p];
        residual = std::max(residual, std::fabs(fit - signal.series[p][k]));
      }
    }
  }
  out.series.push_back(std::move(a));
  out.residual = residual;
  return out;
}

std::vector<RadiationSignal> extract_channels(const Scenario& sc,
                                              const Trace& trace) {
  std::vector<RadiationSignal> out;
  out.push_back(extrapolate_to_boundary(sc, extract_signal(sc, trace, End::outer)));
  if (sc.channels == 2)
    out.push_back(extrapolate_to_boundary(sc, extract_signal(sc, trace, End::inner)));
  return out;
}

double AngularAggregate::cumulative_at(double s) const {
  if (cumulative.empty()) return 0.0;
  if (s <= s0) return 0.0;
  const double u = (s - s0) / ds;
  const auto n = static_cast<std::ptrdiff_t>(cumulative.size());
  const auto i = static_cast<std::ptrdiff_t>(std::floor(u));
  if (i >= n - 1) return cumulative.back();
  const double t = u - static_cast<double>(i);
  return cumulative[i] * (1.0 - t) + cumulative[i + 1] * t;
}

AngularAggregate aggregate(const Scenario& sc,
                           const std::vector<RadiationSignal>& channels) {
  AngularAggregate agg;
  if (channels.empty()) return agg;
  if (static_cast<int>(channels.size()) != sc.channels)
    throw std::invalid_argument("aggregate: wrong channel count for scenario");

  // Per-channel boundary weight: each S^0 point counts 1; spherical
  // channels carry the full 4 pi.
  const double weight =
      (sc.kind == ScenarioKind::wave1d) ? 1.0 : sc.boundary_area;

  // Common uniform grid spanning all channels.
  double s_lo = 1e300, s_hi = -1e300, ds = 0.0;
  for (const auto& ch : channels) {
    if (ch.series.size() != 1)
      throw std::invalid_argument("aggregate: channels must be extrapolated first");
    s_lo = std::min(s_lo, ch.s0);
    s_hi = std::max(s_hi, ch.s0 + ch.ds * (ch.n_samples() - 1));
    if (ds == 0.0)
      ds = ch.ds;
    else if (std::fabs(ds - ch.ds) > 1e-12 * ds)
      throw std::invalid_argument("aggregate: mismatched s grids");
  }
  const int n = static_cast<int>(std::floor((s_hi - s_lo) / ds)) + 1;
  agg.s0 = s_lo;
  agg.ds = ds;
  agg.f_sq.assign(n, 0.0);

  for (const auto& ch : channels) {
    const auto& y = ch.series.front();
    const double lo = ch.s0, hi = ch.s0 + ch.ds * (ch.n_samples() - 1);
    for (int k = 0; k < n; ++k) {
      const double s = agg.s0 + ds * k;
      if (s < lo || s > hi) continue;  // outside the measured window
      const double v = interp_cubic(y, ch.s0, ch.ds, s);
      agg.f_sq[k] += weight * v * v;
    }
  }

  agg.cumulative.assign(n, 0.0);
  for (int k = 1; k < n; ++k)
    agg.cumulative[k] =
        agg.cumulative[k - 1] + 0.5 * ds * (agg.f_sq[k - 1] + agg.f_sq[k]);
  return agg;
}

}  // namespace nullcone
