#include "nullcone/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "nullcone/quadrature.hpp"

namespace nullcone {

int RadialGrid::index_of(double pos) const {
  const int i = static_cast<int>(std::lround((pos - xi_min) / h()));
  return std::clamp(i, 0, n_cells);
}

void RadialGrid::validate(const Scenario& sc) const {
  if (!(xi_min < xi_max)) throw std::invalid_argument("grid: xi_min must be < xi_max");
  if (n_cells < 16) throw std::invalid_argument("grid: need at least 16 cells");
  if (sc.has_origin() && xi_min != 0.0)
    throw std::invalid_argument("grid: radial scenarios start at xi = 0");
  if (sc.kind == ScenarioKind::schwarzschild && !(xi_min < 0.0 && xi_max > 0.0))
    throw std::invalid_argument("grid: tortoise grid must span both signs");
}

ScenarioOnGrid::ScenarioOnGrid(const Scenario& sc, const RadialGrid& g)
    : scenario(sc), grid(g) {
  grid.validate(sc);
  const int n = grid.n_points();
  potential.resize(n);
  rho.resize(n);
  drho.resize(n);
  weight.resize(n);
  xi.resize(n);
  if (sc.kind == ScenarioKind::schwarzschild) {
    // One horizon-gap solve per point; everything else follows from it.
    const double four_pi = 4.0 * std::numbers::pi;
    for (int i = 0; i < n; ++i) {
      const double x = grid.point(i);
      const double gap = horizon_gap_from_tortoise(sc.mass, x);
      const double r = 2.0 * sc.mass + gap;
      const double f = gap / r;
      xi[i] = x;
      rho[i] = r;
      drho[i] = f;
      potential[i] = f * 2.0 * sc.mass / (r * r * r);
      weight[i] = four_pi * r * r * f;
    }
    return;
  }
  for (int i = 0; i < n; ++i) {
    const double x = grid.point(i);
    xi[i] = x;
    potential[i] = sc.potential(x);
    rho[i] = sc.reduction_weight(x);
    drho[i] = sc.reduction_weight_deriv(x);
    weight[i] = sc.measure_weight(x);
  }
}

namespace {

// Int_0^y of the reduced momentum rho * psi on the half line, support-clipped.
double reduced_momentum_prim(const Scenario& sc, const RadialProfile& psi,
                             double y) {
  if (psi.is_zero()) return 0.0;
  double lo = std::max(0.0, psi.center - psi.support);
  double hi = std::min(y, psi.center + psi.support);
  if (lo >= hi) return 0.0;
  auto f = [&](double r) { return sc.reduction_weight(r) * psi.value(r); };
  return integrate(f, lo, hi, 1e-13);
}

// Int_a^b of the odd extension of rho * psi (even primitive).
double reduced_momentum_integral(const Scenario& sc, const RadialProfile& psi,
                                 double a, double b) {
  return reduced_momentum_prim(sc, psi, std::fabs(b)) -
         reduced_momentum_prim(sc, psi, std::fabs(a));
}

// Line integral for the full-line wave1d case.
double line_momentum_integral(const RadialProfile& psi, double a, double b) {
  return profile_integral(psi, a, b, 1e-13);
}

void check_support_inside_impl(const Scenario& sc, const RadialGrid& grid,
                               const InitialData& data) {
  const double margin = 2.0 * grid.h();
  double lo, hi;
  if (sc.has_origin()) {
    lo = 0.0;
    hi = data.support_radius;
  } else {
    // Extremes over both profiles on the line (wave1d, schwarzschild).
    lo = 1e300;
    hi = -1e300;
    for (const RadialProfile* p : {&data.phi, &data.psi}) {
      if (p->is_zero()) continue;
      lo = std::min(lo, p->center - p->support);
      hi = std::max(hi, p->center + p->support);
    }
    if (lo > hi) {  // zero data
      lo = grid.xi_min;
      hi = grid.xi_min;
    }
  }
  if (lo < grid.xi_min - 1e-12 || hi > grid.xi_max - margin)
    throw std::invalid_argument("initial data support escapes the grid");
}

void check_origin_regularity_impl(const Scenario& sc, const InitialData& data) {
  if (!sc.has_origin()) return;
  for (const RadialProfile* p : {&data.phi, &data.psi}) {
    if (p->is_zero() || p->center == 0.0) continue;
    if (p->center - p->support < -1e-9)
      throw std::invalid_argument(
          "radial data must be centered at 0 or supported away from the origin");
  }
}

double reduced_value(const Scenario& sc, const RadialProfile& p, double x) {
  const double a = std::fabs(x);
  const double v = sc.reduction_weight(a) * p.value(a);
  return x < 0.0 ? -v : v;
}

}  // namespace

void validate_initial_data(const Scenario& sc, const RadialGrid& grid,
                           const InitialData& data) {
  check_support_inside_impl(sc, grid, data);
  check_origin_regularity_impl(sc, data);
}

WaveState init_state(const ScenarioOnGrid& cache, const InitialData& data,
                     double cfl) {
  const Scenario& sc = cache.scenario;
  const RadialGrid& grid = cache.grid;
  if (!(cfl > 0.0 && cfl <= 1.0))
    throw std::invalid_argument("cfl must lie in (0, 1]");
  validate_initial_data(sc, grid, data);

  const int n = grid.n_points();
  const double h = grid.h();
  const double dt = cfl * h;
  WaveState st;
  st.t = 0.0;
  st.dt = dt;
  st.w_curr.resize(n);
  st.w_prev.resize(n);

  for (int i = 0; i < n; ++i)
    st.w_curr[i] = cache.rho[i] * data.phi.value(cache.xi[i]);
  if (sc.has_origin()) st.w_curr[0] = 0.0;

  if (sc.reduced_equation_is_free()) {
    // Exact level at t = -dt from the d'Alembert representation of the
    // (odd-extended) reduced data; keeps unit-Courant runs exact.
    const bool line = (sc.kind == ScenarioKind::wave1d);
    for (int i = 0; i < n; ++i) {
      const double x = cache.xi[i];
      double v;
      if (line) {
        v = 0.5 * (data.phi.value(x - dt) + data.phi.value(x + dt)) -
            0.5 * line_momentum_integral(data.psi, x - dt, x + dt);
      } else {
        v = 0.5 * (reduced_value(sc, data.phi, x - dt) +
                   reduced_value(sc, data.phi, x + dt)) -
            0.5 * reduced_momentum_integral(sc, data.psi, x - dt, x + dt);
      }
      st.w_prev[i] = v;
    }
    if (sc.has_origin()) st.w_prev[0] = 0.0;
    return st;
  }

  // Generic 2nd-order Taylor step backwards:
  //   w(-dt) = w0 - dt rho psi + dt^2/2 (w0'' - V w0 - N(w0)).
  for (int i = 0; i < n; ++i) {
    const double x = cache.xi[i];
    double lap = 0.0;
    if (i > 0 && i < n - 1)
      lap = (st.w_curr[i + 1] - 2.0 * st.w_curr[i] + st.w_curr[i - 1]) / (h * h);
    const double rhs = lap - cache.potential[i] * st.w_curr[i] -
                       sc.nonlinearity(st.w_curr[i], x);
    st.w_prev[i] = st.w_curr[i] - dt * cache.rho[i] * data.psi.value(x) +
                   0.5 * dt * dt * rhs;
  }
  if (sc.has_origin()) st.w_prev[0] = 0.0;
  return st;
}

WaveState init_state(const Scenario& sc, const RadialGrid& grid,
                     const InitialData& data, double cfl) {
  return init_state(ScenarioOnGrid(sc, grid), data, cfl);
}

namespace {

// Core update into `next`; throws on non-finite output.
void advance(const ScenarioOnGrid& cache, const std::vector<double>& wm,
             const std::vector<double>& w, std::vector<double>& next,
             double dt, double t_next) {
  const Scenario& sc = cache.scenario;
  const int n = cache.grid.n_points();
  const double h = cache.grid.h();
  const double r2 = dt * dt / (h * h);
  const double dt2 = dt * dt;
  const bool nonlinear = (sc.kind == ScenarioKind::semilinear3d);

  for (int i = 1; i < n - 1; ++i) {
    const double lap = w[i + 1] - 2.0 * w[i] + w[i - 1];
    double rhs = r2 * lap - dt2 * cache.potential[i] * w[i];
    if (nonlinear) rhs -= dt2 * sc.nonlinearity(w[i], cache.xi[i]);
    next[i] = 2.0 * w[i] - wm[i] + rhs;
  }

  // Boundary closure: Dirichlet wall at the origin for the radial kinds,
  // first-order characteristic outflow elsewhere.
  const double lam = dt / h;
  if (sc.has_origin())
    next[0] = 0.0;
  else
    next[0] = w[0] + lam * (w[1] - w[0]);
  next[n - 1] = w[n - 1] - lam * (w[n - 1] - w[n - 2]);

  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(next[i])) throw InstabilityError(i, t_next);
  }
}

}  // namespace

WaveState step(const ScenarioOnGrid& cache, const WaveState& state) {
  WaveState out;
  out.dt = state.dt;
  out.t = state.t + state.dt;
  out.w_prev = state.w_curr;
  out.w_curr.resize(state.w_curr.size());
  advance(cache, state.w_prev, state.w_curr, out.w_curr, state.dt, out.t);
  return out;
}

Trace run(const Scenario& sc, const RadialGrid& grid, const InitialData& data,
          const RunOptions& opts) {
  return run(ScenarioOnGrid(sc, grid), data, opts);
}

Trace run(const ScenarioOnGrid& cache, const InitialData& data,
          const RunOptions& opts) {
  const Scenario& sc = cache.scenario;
  const RadialGrid& grid = cache.grid;
  if (opts.t_final < 0.0) throw std::invalid_argument("t_final must be >= 0");
  WaveState st = init_state(cache, data, opts.cfl);
  const double dt = st.dt;

  const int total =
      (opts.t_final == 0.0)
          ? 0
          : static_cast<int>(std::ceil(opts.t_final / dt - 1e-9));

  Trace tr;
  tr.kind = sc.kind;
  tr.grid = grid;
  tr.dt = dt;
  tr.steps = total;
  tr.t_final = total * dt;

  tr.probes.reserve(opts.probe_positions.size());
  for (double p : opts.probe_positions) {
    if (p < grid.xi_min || p > grid.xi_max)
      throw std::invalid_argument("probe position outside the grid");
    ProbeSeries ps;
    ps.index = grid.index_of(p);
    ps.position = grid.point(ps.index);
    ps.w.reserve(total + 1);
    tr.probes.push_back(std::move(ps));
  }

  // Steps at which to keep a full three-level snapshot.
  std::set<int> snap;
  snap.insert(total);
  if (opts.state_stride > 0)
    for (int k = 0; k <= total; k += opts.state_stride) snap.insert(k);
  for (double T : opts.sample_times) {
    if (T < 0.0 || T > tr.t_final + 1e-9)
      throw std::invalid_argument("sample time outside the run");
    const int k = std::min(total, static_cast<int>(std::ceil(T / dt - 1e-9)));
    snap.insert(k);
  }

  std::vector<double> w_next(grid.n_points());
  for (int k = 0; k <= total; ++k) {
    const double t = k * dt;
    advance(cache, st.w_prev, st.w_curr, w_next, dt, t + dt);
    for (auto& ps : tr.probes) ps.w.push_back(st.w_curr[ps.index]);
    if (snap.count(k)) {
      SampledState s;
      s.t = t;
      s.dt = dt;
      s.w_minus = st.w_prev;
      s.w = st.w_curr;
      s.w_plus = w_next;
      tr.states.push_back(std::move(s));
    }
    if (opts.observer) {
      StepView view{t, dt, st.w_prev, st.w_curr, w_next};
      opts.observer(view);
    }
    if (k < total) {
      std::swap(st.w_prev, st.w_curr);
      std::swap(st.w_curr, w_next);
      st.t = t + dt;
    }
  }
  return tr;
}

}  // namespace nullcone
