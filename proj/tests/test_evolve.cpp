#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "nullcone/evolve.hpp"
#include "nullcone/oracle.hpp"

using namespace nullcone;

namespace {

double max_error_vs_oracle(const Scenario& sc, const RadialGrid& grid,
                           const InitialData& data, double cfl, double t_final) {
  RunOptions opts;
  opts.cfl = cfl;
  opts.t_final = t_final;
  const Trace tr = run(sc, grid, data, opts);
  const auto& w = tr.states.back().w;
  double err = 0.0;
  for (int i = 0; i <= grid.n_cells; ++i) {
    const double ref = exact_reduced_solution(sc, data, tr.t_final, grid.point(i));
    err = std::max(err, std::fabs(w[i] - ref));
  }
  return err;
}

}  // namespace

TEST_CASE("initial state") {
  const Scenario w1 = make_scenario(ScenarioKind::wave1d, 0.0);
  const RadialGrid grid{-20.0, 20.0, 512};

  SUBCASE("zero data stays zero") {
    const InitialData zero = InitialData::make(zero_profile(), zero_profile());
    const WaveState st = init_state(w1, grid, zero, 1.0);
    for (double v : st.w_curr) CHECK(v == 0.0);
    for (double v : st.w_prev) CHECK(v == 0.0);
  }

  SUBCASE("previous level matches the closed form") {
    const InitialData d = InitialData::make(gaussian_profile(0.0, 1.0, 1.0),
                                            gaussian_profile(1.0, 1.2, 0.5));
    const WaveState st = init_state(w1, grid, d, 1.0);
    for (int i = 0; i <= grid.n_cells; i += 37) {
      const double ref =
          dalembert(d.phi, d.psi, Extension::none, -st.dt, grid.point(i));
      CHECK(st.w_prev[i] == doctest::Approx(ref).epsilon(1e-12));
    }
  }

  SUBCASE("regularity pin at the origin") {
    const Scenario euc = make_scenario(ScenarioKind::euclidean3d, 0.0);
    const RadialGrid rg{0.0, 30.0, 512};
    const InitialData d =
        InitialData::make(gaussian_profile(5.0, 0.8, 1.0), zero_profile());
    const WaveState st = init_state(euc, rg, d, 0.9);
    CHECK(st.w_curr[0] == 0.0);
    CHECK(st.w_prev[0] == 0.0);
  }

  SUBCASE("validation") {
    const InitialData wide =
        InitialData::make(gaussian_profile(0.0, 4.0, 1.0), zero_profile());
    CHECK_THROWS(init_state(w1, RadialGrid{-10.0, 10.0, 64}, wide, 0.9));
    const InitialData d = InitialData::make(gaussian_profile(0.0, 1.0, 1.0),
                                            zero_profile());
    CHECK_THROWS(init_state(w1, grid, d, 0.0));
    CHECK_THROWS(init_state(w1, grid, d, 1.5));
    // Radial data must respect the origin.
    const Scenario euc = make_scenario(ScenarioKind::euclidean3d, 0.0);
    const InitialData bad =
        InitialData::make(gaussian_profile(2.0, 1.0, 1.0), zero_profile());
    CHECK_THROWS(init_state(euc, RadialGrid{0.0, 30.0, 512}, bad, 0.9));
  }
}

TEST_CASE("unit courant runs track the closed form to round-off") {
  const Scenario w1 = make_scenario(ScenarioKind::wave1d, 0.0);
  const RadialGrid grid{-20.0, 20.0, 1024};
  const InitialData d =
      InitialData::make(gaussian_profile(0.0, 1.0, 1.0), zero_profile());
  CHECK(max_error_vs_oracle(w1, grid, d, 1.0, 6.0) < 1e-12);

  // Also with a velocity component and the Dirichlet wall.
  const InitialData dv = InitialData::make(gaussian_profile(0.0, 1.0, 1.0),
                                           gaussian_profile(0.5, 1.0, 0.4));
  CHECK(max_error_vs_oracle(w1, grid, dv, 1.0, 6.0) < 1e-11);

  const Scenario euc = make_scenario(ScenarioKind::euclidean3d, 0.0);
  const RadialGrid rg{0.0, 30.0, 1024};
  const InitialData dr =
      InitialData::make(gaussian_profile(5.0, 0.8, 1.0), zero_profile());
  CHECK(max_error_vs_oracle(euc, rg, dr, 1.0, 12.0) < 1e-12);
}

TEST_CASE("second order convergence at half courant") {
  const Scenario w1 = make_scenario(ScenarioKind::wave1d, 0.0);
  const InitialData d =
      InitialData::make(gaussian_profile(0.0, 1.0, 1.0), zero_profile());
  const double e1 =
      max_error_vs_oracle(w1, RadialGrid{-16.0, 16.0, 256}, d, 0.5, 4.0);
  const double e2 =
      max_error_vs_oracle(w1, RadialGrid{-16.0, 16.0, 512}, d, 0.5, 4.0);
  const double ratio = e1 / e2;
  CHECK(ratio > 3.5);
  CHECK(ratio < 4.5);
}

TEST_CASE("step basics") {
  const Scenario w1 = make_scenario(ScenarioKind::wave1d, 0.0);
  const RadialGrid grid{-10.0, 10.0, 64};
  const ScenarioOnGrid cache(w1, grid);

  SUBCASE("zero state stays zero") {
    WaveState st;
    st.dt = 0.9 * grid.h();
    st.w_curr.assign(grid.n_points(), 0.0);
    st.w_prev.assign(grid.n_points(), 0.0);
    const WaveState next = step(cache, st);
    for (double v : next.w_curr) CHECK(v == 0.0);
    CHECK(next.t == doctest::Approx(st.dt));
  }

  SUBCASE("overflow aborts with a located diagnostic") {
    WaveState st;
    st.dt = 0.9 * grid.h();
    st.w_curr.assign(grid.n_points(), 1e308);
    st.w_prev.assign(grid.n_points(), -1e308);
    CHECK_THROWS_AS(step(cache, st), InstabilityError);
    try {
      step(cache, st);
    } catch (const InstabilityError& e) {
      CHECK(e.index == 1);
      CHECK(e.time == doctest::Approx(st.dt));
    }
  }
}

TEST_CASE("probe series record the passing pulse") {
  const Scenario w1 = make_scenario(ScenarioKind::wave1d, 0.0);
  const RadialGrid grid{-20.0, 20.0, 1024};
  const InitialData d =
      InitialData::make(gaussian_profile(0.0, 1.0, 1.0), zero_profile());
  RunOptions opts;
  opts.cfl = 1.0;
  opts.t_final = 16.0;
  opts.probe_positions = {8.0};
  const Trace tr = run(w1, grid, d, opts);
  REQUIRE(tr.probes.size() == 1);
  const auto& series = tr.probes[0].w;

  int peak = 0;
  for (std::size_t k = 0; k < series.size(); ++k)
    if (std::fabs(series[k]) > std::fabs(series[peak])) peak = static_cast<int>(k);
  const double t_peak = peak * tr.dt;
  CHECK(t_peak > 7.0);
  CHECK(t_peak < 9.0);
  // Quiet before arrival and after passage: a single right-moving pulse.
  for (std::size_t k = 0; k < series.size(); ++k) {
    const double t = k * tr.dt;
    if (t < 1.5 || t > 15.0) CHECK(std::fabs(series[k]) < 1e-12);
  }
}

TEST_CASE("outflow lets the pulse leave") {
  const Scenario w1 = make_scenario(ScenarioKind::wave1d, 0.0);
  const RadialGrid grid{-12.0, 12.0, 512};
  const InitialData d =
      InitialData::make(gaussian_profile(0.0, 1.0, 1.0), zero_profile());
  RunOptions opts;
  opts.cfl = 0.9;
  opts.t_final = 40.0;
  const Trace tr = run(w1, grid, d, opts);
  double worst = 0.0;
  for (double v : tr.states.back().w) worst = std::max(worst, std::fabs(v));
  // First-order outflow: small residual reflection is acceptable.
  CHECK(worst < 0.05);
}

TEST_CASE("runs are deterministic") {
  const Scenario ss = make_scenario(ScenarioKind::schwarzschild, 1.0);
  const RadialGrid grid{-40.0, 60.0, 512};
  const InitialData d =
      InitialData::make(gaussian_profile(15.0, 1.0, 1.0), zero_profile());
  RunOptions opts;
  opts.cfl = 0.9;
  opts.t_final = 20.0;
  opts.probe_positions = {40.0, 45.0, 50.0};
  const Trace a = run(ss, grid, d, opts);
  const Trace b = run(ss, grid, d, opts);
  CHECK(a.states.back().w == b.states.back().w);  // bitwise
  for (std::size_t p = 0; p < a.probes.size(); ++p)
    CHECK(a.probes[p].w == b.probes[p].w);
}

TEST_CASE("small amplitudes reproduce the linear scenario at fifth order") {
  const RadialGrid grid{0.0, 30.0, 2048};
  const Scenario lin = make_scenario(ScenarioKind::euclidean3d, 0.0);
  const Scenario non = make_scenario(ScenarioKind::semilinear3d, 0.0);
  const ScenarioOnGrid lin_cache(lin, grid);
  const ScenarioOnGrid non_cache(non, grid);

  // Shared initial state, so the runs differ only through the quintic term.
  auto diff_at = [&](double amp) {
    const InitialData d =
        InitialData::make(gaussian_profile(6.0, 1.0, amp), zero_profile());
    WaveState a = init_state(lin_cache, d, 0.9);
    WaveState b = a;
    const int steps = static_cast<int>(std::ceil(1.0 / a.dt));
    for (int k = 0; k < steps; ++k) {
      a = step(lin_cache, a);
      b = step(non_cache, b);
    }
    double worst = 0.0;
    for (int i = 0; i <= grid.n_cells; ++i)
      worst = std::max(worst, std::fabs(a.w_curr[i] - b.w_curr[i]));
    return worst;
  };
  const double e1 = diff_at(0.1);
  const double e2 = diff_at(0.01);
  const double order = std::log10(e1 / e2);
  CHECK(order > 4.2);
  CHECK(order < 5.8);
}
