#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "nullcone/geometry.hpp"
#include "nullcone/oracle.hpp"
#include "nullcone/profile.hpp"
#include "nullcone/quadrature.hpp"

using namespace nullcone;

namespace {
const double sqrt_pi_half = std::sqrt(M_PI / 2.0);  // 1.2533141373155003

RadialProfile unit_gaussian() { return gaussian_profile(0.0, 1.0, 1.0); }

// L2 norm over a sampled s-range.
template <typename F>
double l2(F&& f, double lo, double hi, int n = 2000) {
  double acc = 0.0;
  const double ds = (hi - lo) / n;
  for (int k = 0; k <= n; ++k) {
    const double s = lo + ds * k;
    const double v = f(s);
    acc += (k == 0 || k == n ? 0.5 : 1.0) * v * v;
  }
  return std::sqrt(acc * ds);
}
}  // namespace

TEST_CASE("dalembert closed forms") {
  const RadialProfile zero = zero_profile();
  const RadialProfile g = unit_gaussian();

  CHECK(dalembert(zero, zero, Extension::none, 5.0, 1.0) == 0.0);

  // phi-only data splits into two half-amplitude travelers.
  for (double t : {0.3, 1.0, 2.7})
    for (double x : {-2.0, 0.0, 0.5, 3.0}) {
      const double want =
          0.5 * std::exp(-(x + t) * (x + t)) + 0.5 * std::exp(-(x - t) * (x - t));
      CHECK(dalembert(g, zero, Extension::none, t, x) ==
            doctest::Approx(want).epsilon(1e-12));
    }

  // psi-only value at the center after unit time: half the Gaussian integral.
  const double v = dalembert(zero, g, Extension::none, 1.0, 0.0);
  CHECK(v == doctest::Approx(0.746824132812427).epsilon(1e-9));
  // Cross-check via the error-function identity.
  CHECK(v == doctest::Approx(0.5 * std::sqrt(M_PI) * std::erf(1.0)).epsilon(1e-10));

  // The splitting constant cancels between the two waveforms.
  for (double C : {-2.0, 0.5, 3.0})
    CHECK(dalembert(g, g, Extension::none, 1.3, 0.4, C) ==
          doctest::Approx(dalembert(g, g, Extension::none, 1.3, 0.4)).epsilon(1e-12));

  // Odd extension keeps the wall pinned.
  const RadialProfile off = gaussian_profile(5.0, 0.8, 1.0);
  for (double t : {0.5, 2.0, 5.0, 9.0})
    CHECK(std::fabs(dalembert(off, zero, Extension::odd, t, 0.0)) < 1e-12);
}

TEST_CASE("1d radiation closed form") {
  const RadialProfile zero = zero_profile();
  const RadialProfile g = unit_gaussian();

  CHECK(radiation_1d_exact(zero, zero, 0.7, +1) == 0.0);
  CHECK(radiation_1d_exact(g, zero, 1.0, +1) ==
        doctest::Approx(-std::exp(-1.0)).epsilon(1e-12));
  CHECK(radiation_1d_exact(g, zero, 1.0, -1) ==
        doctest::Approx(-std::exp(-1.0)).epsilon(1e-12));
  CHECK(radiation_1d_exact(zero, g, 0.0, -1) == doctest::Approx(0.5));
  CHECK(radiation_1d_exact(zero, g, 0.0, +1) == doctest::Approx(-0.5));
  CHECK_THROWS(radiation_1d_exact(g, g, 0.0, 2));

  // Unitarity of the two-point radiation field: sum over theta of the
  // L2 norm squared equals (1/2) Int (phi'^2 + psi^2).
  auto energy_side = [&](const RadialProfile& phi, const RadialProfile& psi) {
    auto e = [&](double x) {
      const double dp = phi.deriv(x);
      const double p = psi.value(x);
      return 0.5 * (dp * dp + p * p);
    };
    return integrate(e, -12.0, 12.0, 1e-12);
  };
  auto radiation_side = [&](const RadialProfile& phi, const RadialProfile& psi) {
    auto f = [&](double s) {
      const double a = radiation_1d_exact(phi, psi, s, -1);
      const double b = radiation_1d_exact(phi, psi, s, +1);
      return a * a + b * b;
    };
    return integrate(f, -12.0, 12.0, 1e-12);
  };
  const double e_g = energy_side(g, zero);
  CHECK(e_g == doctest::Approx(0.5 * sqrt_pi_half).epsilon(1e-10));
  CHECK(radiation_side(g, zero) == doctest::Approx(e_g).epsilon(1e-10));

  const RadialProfile mix_phi = gaussian_profile(1.0, 1.3, 0.7);
  const RadialProfile mix_psi = gaussian_profile(-0.5, 0.9, 1.1);
  CHECK(radiation_side(mix_phi, mix_psi) ==
        doctest::Approx(energy_side(mix_phi, mix_psi)).epsilon(1e-10));
}

TEST_CASE("radial radon transform") {
  // Indicator of the unit ball: plane section area pi (1 - s^2).
  RadialProfile ind;
  ind.value = [](double r) { return std::fabs(r) <= 1.0 ? 1.0 : 0.0; };
  ind.deriv = [](double) { return 0.0; };
  ind.center = 0.0;
  ind.support = 1.0;
  ind.amplitude = 1.0;
  ind.family = "sampled";
  CHECK(radon_radial(ind, 0.5) == doctest::Approx(M_PI * 0.75).epsilon(1e-8));

  const RadialProfile g = unit_gaussian();
  for (double s : {0.0, 0.4, 1.0, 2.3})
    CHECK(radon_radial(g, s) ==
          doctest::Approx(M_PI * std::exp(-s * s)).epsilon(1e-9));
  // Even in s, and zero beyond the support by construction.
  CHECK(radon_radial(g, -1.1) == doctest::Approx(radon_radial(g, 1.1)));
  CHECK(radon_radial(g, 6.0) == 0.0);
  CHECK(radon_radial(ind, 2.0) == 0.0);
}

TEST_CASE("radiation field from radon data") {
  const RadialProfile zero = zero_profile();
  const RadialProfile g = unit_gaussian();

  CHECK(friedlander_r3(zero, zero, 0.3) == 0.0);

  // psi-only Gaussian: -(s/2) exp(-s^2). phi-only: -(1 - 2 s^2) exp(-s^2) / 2.
  for (double s : {-1.5, -0.3, 0.0, 0.7, 2.0}) {
    CHECK(friedlander_r3(zero, g, s) ==
          doctest::Approx(-0.5 * s * std::exp(-s * s)).epsilon(1e-12));
    CHECK(friedlander_r3(g, zero, s) ==
          doctest::Approx(-0.5 * (1.0 - 2.0 * s * s) * std::exp(-s * s))
              .epsilon(1e-12));
  }

  // Independent route: quadrature Radon transform, differentiated.
  const RadialProfile b = bump_profile(2.0, 1.5, 0.8);
  for (double s : {-2.8, -1.0, 0.2, 1.4, 3.1}) {
    CHECK(friedlander_r3(g, b, s) ==
          doctest::Approx(friedlander_r3_radon_route(g, b, s)).epsilon(5e-6));
    CHECK(friedlander_r3(b, g, s) ==
          doctest::Approx(friedlander_r3_radon_route(b, g, s)).epsilon(5e-6));
  }

  // Unitarity against the physical energy: 4 pi Int |R|^2 ds equals
  // (1/2) Int (|grad phi|^2 + psi^2) 4 pi r^2 dr.
  auto check_unitary = [&](const RadialProfile& phi, const RadialProfile& psi) {
    auto f2 = [&](double s) {
      const double v = friedlander_r3(phi, psi, s);
      return v * v;
    };
    const double lhs = 4.0 * M_PI * integrate(f2, -15.0, 15.0, 1e-12);
    auto e = [&](double r) {
      const double dp = phi.deriv(r);
      const double p = psi.value(r);
      return 0.5 * (dp * dp + p * p) * 4.0 * M_PI * r * r;
    };
    const double rhs = integrate(e, 0.0, 15.0, 1e-12);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
    return rhs;
  };
  const double e_phi = check_unitary(g, zero);
  CHECK(e_phi == doctest::Approx(0.75 * M_PI * sqrt_pi_half).epsilon(1e-10));
  const double e_psi = check_unitary(zero, g);
  CHECK(e_psi == doctest::Approx(0.25 * M_PI * sqrt_pi_half).epsilon(1e-10));
  check_unitary(gaussian_profile(3.0, 0.7, 1.2), bump_profile(2.0, 1.5, 0.8));
}

TEST_CASE("exact solutions") {
  const RadialProfile zero = zero_profile();
  const RadialProfile g = unit_gaussian();

  const Scenario w1 = make_scenario(ScenarioKind::wave1d, 0.0);
  const InitialData d1 = InitialData::make(g, zero);
  CHECK(exact_solution(w1, d1, 2.0, 0.0) ==
        doctest::Approx(std::exp(-4.0)).epsilon(1e-12));

  // Initial condition reproduced.
  const Scenario hyp = make_scenario(ScenarioKind::hyperbolic3d, 0.0);
  const InitialData dh = InitialData::make(gaussian_profile(4.0, 0.6, 1.0), zero);
  for (double r : {2.5, 4.0, 5.5})
    CHECK(exact_solution(hyp, dh, 0.0, r) ==
          doctest::Approx(dh.phi.value(r)).epsilon(1e-10));

  // Sharp Huygens principle: the reduced wave clears compact data.
  const Scenario euc = make_scenario(ScenarioKind::euclidean3d, 0.0);
  const InitialData de =
      InitialData::make(gaussian_profile(3.0, 0.5, 1.0), bump_profile(2.5, 1.0, 0.6));
  const double R = de.support_radius;
  for (double xi : {0.5, 2.0, 4.0})
    CHECK(std::fabs(exact_solution(euc, de, xi + R + 1.0, xi)) < 1e-10);

  // Origin limit is finite and matches nearby values.
  const double u0 = exact_solution(euc, de, 1.7, 0.0);
  CHECK(std::isfinite(u0));
  CHECK(u0 == doctest::Approx(exact_solution(euc, de, 1.7, 1e-4)).epsilon(1e-4));

  const Scenario ss = make_scenario(ScenarioKind::schwarzschild, 1.0);
  CHECK_THROWS(exact_solution(ss, d1, 1.0, 5.0));
  const Scenario sl = make_scenario(ScenarioKind::semilinear3d, 0.0);
  CHECK_THROWS(exact_solution(sl, d1, 1.0, 5.0));
}

TEST_CASE("radon consistency of the far-field limit") {
  // The extraction limit d_t w along s = t - r at large radius agrees with
  // the Radon-transform form of the radiation field.
  const Scenario euc = make_scenario(ScenarioKind::euclidean3d, 0.0);
  struct Pair {
    RadialProfile phi, psi;
  };
  std::vector<Pair> datasets = {
      {gaussian_profile(3.0, 0.8, 1.0), zero_profile()},
      {zero_profile(), gaussian_profile(2.0, 0.7, 0.9)},
      {bump_profile(2.5, 1.5, 1.0), gaussian_profile(3.5, 0.6, 0.4)},
  };
  for (const auto& ds : datasets) {
    const InitialData data = InitialData::make(ds.phi, ds.psi);
    const double R = data.support_radius;
    const double rp = 1000.0 * R;
    const double dt = 1e-4;
    auto extracted = [&](double s) {
      const double t = s + rp;
      return (exact_reduced_solution(euc, data, t + dt, rp) -
              exact_reduced_solution(euc, data, t - dt, rp)) /
             (2.0 * dt);
    };
    auto reference = [&](double s) { return friedlander_r3(ds.phi, ds.psi, s); };
    double num = 0.0;
    const double lo = -R - 1.0, hi = R + 1.0;
    const int n = 400;
    for (int k = 0; k <= n; ++k) {
      const double s = lo + (hi - lo) * k / n;
      const double d = extracted(s) - reference(s);
      num += d * d;
    }
    const double den = l2(reference, lo, hi, n);
    CHECK(std::sqrt(num * (hi - lo) / n) / den < 1e-3);

    // And the free-signal form agrees with the Radon form identically.
    for (double s : {-2.0, 0.0, 1.5})
      CHECK(free_outgoing_signal(euc, data, s) ==
            doctest::Approx(friedlander_r3(ds.phi, ds.psi, s)).epsilon(1e-12));
  }
}
