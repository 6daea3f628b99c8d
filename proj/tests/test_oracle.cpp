#include <gsl/gsl_integration.h>

#include <cmath>
#include <complex>

#include "doctest.h"
#include "sobodecay/oracle.hpp"

using namespace sobodecay;
using C = std::complex<double>;

TEST_CASE("heat norm matches the Gaussian closed form") {
  // rho = e^{-r^2}: int r^{2l+2} e^{-(1+8pi^2 t) r^2} dr = Gamma(l+3/2) / (2 a^{l+3/2})
  const auto p = RadialProfile::gaussian(1.0);
  for (double ell : {0.0, 1.0, 2.0, 0.5})
    for (double t : {0.0, 0.1, 10.0, 1000.0}) {
      const double a = 1.0 + 8.0 * M_PI * M_PI * t;
      const double exact =
          std::sqrt(4.0 * M_PI * std::tgamma(ell + 1.5) / (2.0 * std::pow(a, ell + 1.5)));
      CHECK(heat_norm_exact(p, ell, t) == doctest::Approx(exact).epsilon(1e-8));
    }
}

TEST_CASE("heat norm agrees with fixed-order Gauss-Legendre quadrature") {
  const auto p = RadialProfile::power_gaussian(1.0, 2.0);
  const double ell = 1.0, t = 0.3;
  gsl_integration_glfixed_table* table = gsl_integration_glfixed_table_alloc(200);
  double sum = 0.0;
  const double w = 8.0 * M_PI * M_PI * t;
  for (std::size_t i = 0; i < 200; ++i) {
    double x, wi;
    gsl_integration_glfixed_point(0.0, p.r_max, i, &x, &wi, table);
    sum += wi * std::pow(x, 2.0 * ell + 2.0) * p.density(x) * std::exp(-w * x * x);
  }
  gsl_integration_glfixed_table_free(table);
  CHECK(heat_norm_exact(p, ell, t) ==
        doctest::Approx(std::sqrt(4.0 * M_PI * sum)).epsilon(1e-8));
}

TEST_CASE("radial profiles reject divergent parameters") {
  CHECK_THROWS(RadialProfile::power_gaussian(-1.5, 1.0));
  const auto p = RadialProfile::gaussian(1.0);
  CHECK_THROWS(heat_norm_exact(p, -1.6, 1.0));  // ell + sigma <= -3/2
  CHECK_THROWS(heat_norm_exact(p, 0.0, -1.0));
}

TEST_CASE("cns parameter validation") {
  CHECK_THROWS(CnsParams(0.0, 0.0, 1.0, 1.0));
  CHECK_THROWS(CnsParams(1.0, -1.0, 1.0, 1.0));   // lambda + 2mu/3 < 0
  CHECK_THROWS(CnsParams(1.0, 0.0, -1.0, 1.0));
  CHECK_THROWS(CnsParams(1.0, 0.0, 1.0, 0.0));
  const CnsParams prm(2.0, 0.5, 4.0, 1.6);
  CHECK(prm.mu_bar() == doctest::Approx(0.5));
  CHECK(prm.gamma() == doctest::Approx(0.1));
  CHECK(prm.sound_speed() == doctest::Approx(std::sqrt(1.6)));
}

TEST_CASE("linear mode evolution basics") {
  const CnsParams prm(1.0, 0.2, 1.0, 1.4);
  const std::array<double, 3> xi = {0.7, -0.3, 0.5};
  const std::array<C, 4> state = {C(0.4, 0.1), C(-0.2, 0.3), C(0.1, 0.0), C(0.5, -0.4)};

  SUBCASE("t = 0 is the identity") {
    const auto out = linear_cns_mode_evolve(xi, state, 0.0, prm);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(out[i] - state[i]) < 1e-14);
  }

  SUBCASE("zero mode is frozen") {
    const auto out = linear_cns_mode_evolve({0.0, 0.0, 0.0}, state, 5.0, prm);
    for (int i = 0; i < 4; ++i) CHECK(out[i] == state[i]);
  }

  SUBCASE("solenoidal component decays by pure shear") {
    // velocity orthogonal to xi = r e1, no density perturbation
    const double r = 0.8, t = 0.6;
    const std::array<C, 4> sol = {C(0.0, 0.0), C(0.0, 0.0), C(0.3, -0.1), C(0.2, 0.4)};
    const auto out = linear_cns_mode_evolve({r, 0.0, 0.0}, sol, t, prm);
    const double shear = std::exp(-4.0 * M_PI * M_PI * prm.mu_bar() * r * r * t);
    CHECK(std::abs(out[0]) < 1e-14);
    CHECK(std::abs(out[1]) < 1e-14);
    CHECK(std::abs(out[2] - shear * sol[2]) < 1e-12);
    CHECK(std::abs(out[3] - shear * sol[3]) < 1e-12);
  }

  SUBCASE("energy decays") {
    const double e0 = mode_energy(state, prm);
    double prev = e0;
    for (double t : {0.1, 0.5, 2.0, 10.0}) {
      const double e = mode_energy(linear_cns_mode_evolve(xi, state, t, prm), prm);
      CHECK(e < prev * (1.0 + 1e-12));
      prev = e;
    }
  }

  SUBCASE("dissipation is the energy derivative") {
    const double t = 0.25, h = 1e-4;
    auto e_at = [&](double tau) {
      return mode_energy(linear_cns_mode_evolve(xi, state, tau, prm), prm);
    };
    const double dEdt = (e_at(t + h) - e_at(t - h)) / (2.0 * h);
    const auto now = linear_cns_mode_evolve(xi, state, t, prm);
    CHECK(dEdt == doctest::Approx(-mode_dissipation(xi, now, prm)).epsilon(1e-5));
  }
}

TEST_CASE("radial linear norm reduces to heat decay scaling") {
  const CnsParams prm(1.0, 0.0, 1.0, 1.4);
  const auto p = RadialProfile::gaussian(1.0);
  const EnergyPartition partition{1.0, 1.0, 1.0};
  // over a decade at large t the energy norm halves like t^{-3/4}
  const double v1 = linear_cns_norm_exact(p, partition, 0.0, 1000.0, prm);
  const double v2 = linear_cns_norm_exact(p, partition, 0.0, 10000.0, prm);
  const double slope = std::log(v2 / v1) / std::log(10.0);
  CHECK(slope == doctest::Approx(-0.75).epsilon(0.03));
}
