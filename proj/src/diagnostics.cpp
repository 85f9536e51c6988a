#include "nullcone/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nullcone {

namespace {

// Reconstructions of u, d_t u, d_xi u from the reduced field triple.
struct FieldSlices {
  std::vector<double> u;
  std::vector<double> u_t;
  std::vector<double> u_xi;
};

FieldSlices reconstruct(const ScenarioOnGrid& cache, const SampledState& st) {
  const int n = cache.grid.n_points();
  const double h = cache.grid.h();
  FieldSlices f;
  f.u.resize(n);
  f.u_t.resize(n);
  f.u_xi.resize(n);

  // w derivatives: centered in time across the stored triple, centered in
  // space in the interior, one-sided 2nd order at the ends.
  std::vector<double> w_t(n), w_xi(n);
  for (int i = 0; i < n; ++i)
    w_t[i] = (st.w_plus[i] - st.w_minus[i]) / (2.0 * st.dt);
  for (int i = 1; i < n - 1; ++i)
    w_xi[i] = (st.w[i + 1] - st.w[i - 1]) / (2.0 * h);
  w_xi[0] = (-3.0 * st.w[0] + 4.0 * st.w[1] - st.w[2]) / (2.0 * h);
  w_xi[n - 1] = (3.0 * st.w[n - 1] - 4.0 * st.w[n - 2] + st.w[n - 3]) / (2.0 * h);

  const bool origin = cache.scenario.has_origin();
  for (int i = 0; i < n; ++i) {
    const double rho = cache.rho[i];
    if (origin && i == 0) {
      // Regular-origin limits: u = w_xi / rho', u_t likewise, u_xi -> 0 by
      // evenness of u.
      const double w_t_xi = ((st.w_plus[1] - st.w_minus[1]) -
                             (st.w_plus[0] - st.w_minus[0])) /
                            (2.0 * st.dt * h);
      f.u[0] = w_xi[0] / cache.drho[0];
      f.u_t[0] = w_t_xi / cache.drho[0];
      f.u_xi[0] = 0.0;
      continue;
    }
    f.u[i] = st.w[i] / rho;
    f.u_t[i] = w_t[i] / rho;
    f.u_xi[i] = (w_xi[i] - f.u[i] * cache.drho[i]) / rho;
  }
  return f;
}

}  // namespace

EnergyDensityField energy_densities(const ScenarioOnGrid& cache,
                                    const SampledState& state) {
  const Scenario& sc = cache.scenario;
  const int n = cache.grid.n_points();
  FieldSlices f = reconstruct(cache, state);

  EnergyDensityField out;
  out.xi = cache.xi;
  out.weight = cache.weight;
  out.e_kinetic.resize(n);
  out.e_potential.resize(n);
  out.e_sextic.assign(n, 0.0);

  for (int i = 0; i < n; ++i) {
    const double ut = f.u_t[i];
    const double ux = f.u_xi[i];
    const double u = f.u[i];
    switch (sc.kind) {
      case ScenarioKind::wave1d:
      case ScenarioKind::euclidean3d:
        out.e_kinetic[i] = 0.5 * ut * ut;
        out.e_potential[i] = 0.5 * ux * ux;
        break;
      case ScenarioKind::hyperbolic3d:
        // Shifted Hamiltonian: the |u|^2 counterterm makes e_P indefinite
        // pointwise; only integrated statements hold.
        out.e_kinetic[i] = 0.5 * ut * ut;
        out.e_potential[i] = 0.5 * (ux * ux - u * u);
        break;
      case ScenarioKind::schwarzschild: {
        // e_K = (1/2) f^{-1} |u_t|^2 and e_P = (1/2) f |u_r|^2 with
        // u_r = u_rstar / f; written in u_rstar to stay finite at the
        // horizon (the measure weight carries the matching factor of f).
        const double lapse = cache.drho[i];  // dr/drstar = 1 - 2M/r
        out.e_kinetic[i] = 0.5 * ut * ut / lapse;
        out.e_potential[i] = 0.5 * ux * ux / lapse;
        break;
      }
      case ScenarioKind::semilinear3d: {
        const double u2 = u * u;
        const double u6 = u2 * u2 * u2;
        out.e_kinetic[i] = 0.5 * ut * ut;
        out.e_sextic[i] = u6 / 6.0;
        out.e_potential[i] = 0.5 * ux * ux + out.e_sextic[i];
        break;
      }
    }
  }
  return out;
}

namespace {

double integrate_weighted(const EnergyDensityField& d,
                          const std::vector<double>& density, double h) {
  const std::size_t n = density.size();
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double a = density[i] * d.weight[i];
    const double b = density[i + 1] * d.weight[i + 1];
    sum += 0.5 * h * (a + b);
  }
  return sum;
}

// Fraction of the cell [xi_i, xi_i+1] lying inside { s <= lambda }, with the
// region the union over ends of { cone_coordinate <= lambda }. The boundary
// cell is split linearly at the crossing.
struct RegionMask {
  // in[i]: grid point inside the region. cut[i]: crossing position within
  // cell i in [0,1] when exactly one endpoint is inside.
  std::vector<bool> in;
  std::vector<double> cut;
};

RegionMask cone_region(const ScenarioOnGrid& cache, double t, double lambda) {
  const Scenario& sc = cache.scenario;
  const int n = cache.grid.n_points();
  RegionMask m;
  m.in.resize(n);
  std::vector<double> s_min(n);
  for (int i = 0; i < n; ++i) {
    double s = cone_coordinate(sc, t, cache.xi[i], End::outer);
    if (sc.channels == 2)
      s = std::min(s, cone_coordinate(sc, t, cache.xi[i], End::inner));
    s_min[i] = s;
    m.in[i] = s <= lambda;
  }
  m.cut.assign(n - 1 > 0 ? n - 1 : 0, 0.0);
  for (int i = 0; i + 1 < n; ++i) {
    if (m.in[i] != m.in[i + 1]) {
      const double a = s_min[i], b = s_min[i + 1];
      m.cut[i] = (b != a) ? std::clamp((lambda - a) / (b - a), 0.0, 1.0) : 0.5;
    }
  }
  return m;
}

double integrate_region(const EnergyDensityField& d,
                        const std::vector<double>& density, double h,
                        const RegionMask& m, bool inside) {
  const std::size_t n = density.size();
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double a = density[i] * d.weight[i];
    const double b = density[i + 1] * d.weight[i + 1];
    const bool ia = m.in[i] == inside, ib = m.in[i + 1] == inside;
    if (ia && ib) {
      sum += 0.5 * h * (a + b);
    } else if (ia || ib) {
      double f = m.cut[i];  // crossing measured from point i
      const double vc = a + (b - a) * f;
      if (ia)
        sum += 0.5 * h * f * (a + vc);
      else
        sum += 0.5 * h * (1.0 - f) * (vc + b);
    }
  }
  return sum;
}

}  // namespace

ConeEnergies cone_energies(const ScenarioOnGrid& cache,
                           const SampledState& state, double lambda) {
  const EnergyDensityField d = energy_densities(cache, state);
  const RegionMask m = cone_region(cache, state.t, lambda);
  const double h = cache.grid.h();
  return {integrate_region(d, d.e_kinetic, h, m, true),
          integrate_region(d, d.e_potential, h, m, true)};
}

double tail_energy(const ScenarioOnGrid& cache, const SampledState& state,
                   double lambda) {
  const EnergyDensityField d = energy_densities(cache, state);
  const RegionMask m = cone_region(cache, state.t, lambda);
  const double h = cache.grid.h();
  const double ek_in = integrate_region(d, d.e_kinetic, h, m, true);
  const double ep_in = integrate_region(d, d.e_potential, h, m, true);
  const double ek_out = integrate_region(d, d.e_kinetic, h, m, false);
  const double ep_out = integrate_region(d, d.e_potential, h, m, false);
  const double total = integrate_weighted(d, d.e_kinetic, h) +
                       integrate_weighted(d, d.e_potential, h);
  const double tail = ek_out + ep_out;
  const double alt = total - ek_in - ep_in;
  const double scale = std::max(1e-300, std::fabs(total));
  if (std::fabs(tail - alt) > 1e-10 * scale)
    throw std::logic_error("tail_energy: split does not add up");
  return tail;
}

double EnergyLedger::max_drift() const {
  if (rows.empty()) return 0.0;
  const double e0 = rows.front().e_total;
  if (e0 == 0.0) return 0.0;
  double m = 0.0;
  for (const auto& r : rows) m = std::max(m, std::fabs(r.e_total - e0) / e0);
  return m;
}

const EnergyRow& EnergyLedger::row_at(double t) const {
  if (rows.empty()) throw std::out_of_range("ledger is empty");
  const EnergyRow* best = &rows.front();
  for (const auto& r : rows)
    if (std::fabs(r.t - t) < std::fabs(best->t - t)) best = &r;
  return *best;
}

LedgerBuilder::LedgerBuilder(const ScenarioOnGrid& cache,
                             std::vector<double> lambdas,
                             std::vector<double> sample_times)
    : cache_(cache) {
  ledger_.lambdas = std::move(lambdas);
  ledger_.sample_times = std::move(sample_times);
}

std::function<void(const StepView&)> LedgerBuilder::observer() {
  return [this](const StepView& view) {
    SampledState st;
    st.t = view.t;
    st.dt = view.dt;
    st.w_minus.assign(view.w_minus.begin(), view.w_minus.end());
    st.w.assign(view.w.begin(), view.w.end());
    st.w_plus.assign(view.w_plus.begin(), view.w_plus.end());

    const EnergyDensityField d = energy_densities(cache_, st);
    const double h = cache_.grid.h();
    EnergyRow row;
    row.t = view.t;
    row.e_kinetic = integrate_weighted(d, d.e_kinetic, h);
    row.e_potential = integrate_weighted(d, d.e_potential, h);
    row.e_sextic = integrate_weighted(d, d.e_sextic, h);
    row.e_total = row.e_kinetic + row.e_potential;
    row.gap = row.e_kinetic - row.e_potential;
    ledger_.rows.push_back(row);

    // Cone tables at the requested sample times (first step at or past T).
    if (!ledger_.lambdas.empty()) {
      const std::size_t k = ledger_.cones.size();
      if (k < ledger_.sample_times.size() &&
          view.t >= ledger_.sample_times[k] - 1e-9 * view.dt) {
        std::vector<ConeEnergies> ce;
        std::vector<double> tl;
        for (double lam : ledger_.lambdas) {
          ce.push_back(cone_energies(cache_, st, lam));
          tl.push_back(tail_energy(cache_, st, lam));
        }
        ledger_.cones.push_back(std::move(ce));
        ledger_.tails.push_back(std::move(tl));
        ledger_.sample_times[k] = view.t;  // snap to the achieved time
      }
    }
  };
}

EnergyLedger LedgerBuilder::take() { return std::move(ledger_); }

double equipartition_gap(const EnergyLedger& ledger, double t) {
  return ledger.row_at(t).gap;
}

UnitarityResult unitarity_defect(const EnergyLedger& ledger,
                                 const AngularAggregate& agg) {
  UnitarityResult res{};
  const double e0 = ledger.initial_energy();
  const double f2 = agg.total();
  if (e0 == 0.0) {
    res.defect = 0.0;
    res.zero_energy = true;
    res.plateau_ok = true;
    return res;
  }
  res.defect = std::fabs(e0 - f2) / e0;
  res.zero_energy = false;
  // Plateau: relative growth of the cumulative over the final 10% of s.
  res.plateau_ok = true;
  if (!agg.cumulative.empty() && f2 > 0.0) {
    const std::size_t n = agg.cumulative.size();
    const std::size_t i90 = n - 1 - n / 10;
    const double grow = (agg.cumulative.back() - agg.cumulative[i90]) / f2;
    res.plateau_ok = grow < 1e-4;
  }
  return res;
}

PropReport check_prop_conditions(const EnergyLedger& ledger,
                                 const AngularAggregate& agg, double final_tol,
                                 double identity_tol) {
  PropReport rep;
  rep.final_tolerance = final_tol;
  rep.decreasing_slack = 0.25 * final_tol;
  const std::size_t n_t = ledger.cones.size();
  if (ledger.lambdas.empty() || n_t < 3)
    throw std::invalid_argument(
        "check_prop_conditions: need lambdas and >= 3 sample times");

  const double e0 = ledger.initial_energy();
  if (e0 == 0.0) {
    rep.defect_energy_identity = 0.0;
    rep.pass = true;
    for (std::size_t j = 0; j < ledger.lambdas.size(); ++j)
      for (std::size_t k = 0; k < n_t; ++k)
        rep.rows.push_back({ledger.lambdas[j], ledger.sample_times[k], 0.0, 0.0, 0.0});
    return rep;
  }

  rep.defect_energy_identity = std::fabs(e0 - agg.total()) / e0;
  bool pass = rep.defect_energy_identity <= identity_tol;

  for (std::size_t j = 0; j < ledger.lambdas.size(); ++j) {
    const double lam = ledger.lambdas[j];
    const double half_cum = 0.5 * agg.cumulative_at(lam);
    double prev_k = 0.0, prev_p = 0.0;
    for (std::size_t k = 0; k < n_t; ++k) {
      const ConeEnergies& ce = ledger.cones[k][j];
      PropConditionRow row;
      row.lambda = lam;
      row.t = ledger.sample_times[k];
      row.half_cumulative = half_cum;
      row.err_kinetic = std::fabs(ce.e_kinetic - half_cum) / e0;
      row.err_potential = std::fabs(ce.e_potential - half_cum) / e0;
      if (k > 0) {
        const double slack = rep.decreasing_slack;
        if (row.err_kinetic > prev_k + slack) pass = false;
        if (row.err_potential > prev_p + slack) pass = false;
      }
      if (k + 1 == n_t) {
        if (row.err_kinetic > final_tol) pass = false;
        if (row.err_potential > final_tol) pass = false;
      }
      prev_k = row.err_kinetic;
      prev_p = row.err_potential;
      rep.rows.push_back(row);
    }
  }
  rep.pass = pass;
  return rep;
}

}  // namespace nullcone
