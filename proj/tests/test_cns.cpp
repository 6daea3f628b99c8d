#include <cmath>
#include <complex>

#include "doctest.h"
#include "sobodecay/cns.hpp"
#include "sobodecay/inequalities.hpp"

using namespace sobodecay;
using C = std::complex<double>;

namespace {

SpectralField spectral(const SpectralField& f) {
  return f.space == Space::spectral ? f : transform(f, Space::spectral);
}

SpectralField physical(const SpectralField& f) {
  return f.space == Space::physical ? f : transform(f, Space::physical);
}

CnsState single_mode_state(const GridSpec& g, const CnsParams& prm, const PressureLaw& law,
                           double amp) {
  CnsState st(g, prm, law);
  // Hermitian pair so the physical fields are real
  st.rho.coeff(1, 0, 0) = {amp, 0.5 * amp};
  st.rho.coeff(-1, 0, 0) = {amp, -0.5 * amp};
  st.u[0].coeff(0, 1, 0) = {0.7 * amp, 0.0};
  st.u[0].coeff(0, -1, 0) = {0.7 * amp, 0.0};
  st.u[2].coeff(1, 1, 0) = {0.0, 0.3 * amp};
  st.u[2].coeff(-1, -1, 0) = {0.0, -0.3 * amp};
  return st;
}

}  // namespace

TEST_CASE("pressure law derivative") {
  const PressureLaw law{1.4, 2.0};
  const double rho = 1.3, h = 1e-6;
  const double p1 = 2.0 * std::pow(rho + h, 1.4), p0 = 2.0 * std::pow(rho - h, 1.4);
  CHECK(law.p_prime(rho) == doctest::Approx((p1 - p0) / (2.0 * h)).epsilon(1e-8));
  const CnsParams prm = make_cns_params(1.0, 0.0, 1.5, law);
  CHECK(prm.p_prime == doctest::Approx(law.p_prime(1.5)));
  CHECK(prm.gamma() == doctest::Approx(law.p_prime(1.5) / 2.25));
}

TEST_CASE("nonlinear coefficients") {
  const GridSpec g(8, 1.0);
  const PressureLaw law{1.4, 1.0};

  SUBCASE("constant density perturbation") {
    SpectralField rho(g, Space::physical);
    const double c = 0.2;
    for (auto& v : rho.data) v = c;
    auto [h, f] = nonlinear_coefficients(rho, 1.0, law);
    const SpectralField hp = physical(h);
    const SpectralField fp = physical(f);
    const double h_exact = c / (1.0 + c);
    const double f_exact = law.p_prime(1.0 + c) / (1.0 + c) - law.p_prime(1.0);
    CHECK(hp.data[0].real() == doctest::Approx(h_exact).epsilon(1e-12));
    CHECK(fp.data[0].real() == doctest::Approx(f_exact).epsilon(1e-12));
  }

  SUBCASE("density floor violation names the cell count") {
    SpectralField rho(g, Space::physical);
    rho.data[5] = -0.8;  // rho + rho_bar = 0.2 < 0.5
    rho.data[9] = -0.9;
    try {
      nonlinear_coefficients(rho, 1.0, law);
      FAIL("expected a density-floor error");
    } catch (const std::exception& e) {
      CHECK(std::string(e.what()).find("2") != std::string::npos);
    }
  }
}

TEST_CASE("tendency matches a direct convolution on a tiny grid") {
  // quadratic terms via the dealiased pseudospectral product against an
  // explicit truncated convolution sum
  const GridSpec g(8, 1.0);
  const PressureLaw law{1.4, 1.0};
  const CnsParams prm = make_cns_params(1.0, 0.1, 1.0, law);
  CnsState st = single_mode_state(g, prm, law, 1e-3);
  const CnsTendency tend = rhs(st);
  const SpectralField drho = spectral(tend.drho);

  // continuity: d rho = -rho_bar div u - div(rho u); build the convolution
  const int cut = (g.n - 1) / 3;
  auto coeff = [&](const SpectralField& f, int kx, int ky, int kz) -> C {
    if (std::abs(kx) > cut || std::abs(ky) > cut || std::abs(kz) > cut) return {0.0, 0.0};
    return f.coeff(kx, ky, kz);
  };
  const SpectralField rho_s = spectral(st.rho);
  std::array<SpectralField, 3> u_s = {spectral(st.u[0]), spectral(st.u[1]),
                                      spectral(st.u[2])};
  double worst = 0.0;
  for (int kx = -cut; kx <= cut; ++kx)
    for (int ky = -cut; ky <= cut; ++ky)
      for (int kz = -cut; kz <= cut; ++kz) {
        const double xi[3] = {kx / g.L, ky / g.L, kz / g.L};
        C lin = 0.0;
        for (int a = 0; a < 3; ++a)
          lin += C(0.0, 2.0 * M_PI * xi[a]) * coeff(u_s[a], kx, ky, kz);
        lin *= -prm.rho_bar;
        C conv = 0.0;
        for (int mx = -cut; mx <= cut; ++mx)
          for (int my = -cut; my <= cut; ++my)
            for (int mz = -cut; mz <= cut; ++mz)
              for (int a = 0; a < 3; ++a)
                conv += coeff(rho_s, kx - mx, ky - my, kz - mz) *
                        coeff(u_s[a], mx, my, mz) *
                        C(0.0, 2.0 * M_PI * (a == 0 ? xi[0] : a == 1 ? xi[1] : xi[2]));
        // -div(rho u): i 2 pi xi . sum rho(k-m) u(m)
        C expected = lin;
        for (int a = 0; a < 3; ++a) {
          C conv_a = 0.0;
          for (int mx = -cut; mx <= cut; ++mx)
            for (int my = -cut; my <= cut; ++my)
              for (int mz = -cut; mz <= cut; ++mz)
                conv_a += coeff(rho_s, kx - mx, ky - my, kz - mz) * coeff(u_s[a], mx, my, mz);
          expected -= C(0.0, 2.0 * M_PI * xi[a]) * conv_a;
        }
        worst = std::max(worst, std::abs(drho.coeff(kx, ky, kz) - expected));
      }
  CHECK(worst < 1e-10);
}

TEST_CASE("continuity tendency has exactly zero mean") {
  const GridSpec g(16, 1.0);
  const PressureLaw law{1.4, 1.0};
  const CnsParams prm = make_cns_params(1.0, 0.0, 1.0, law);
  CnsState st = single_mode_state(g, prm, law, 1e-2);
  const CnsTendency tend = rhs(st);
  CHECK(std::abs(spectral(tend.drho).coeff(0, 0, 0)) == 0.0);
}

TEST_CASE("cfl step size scales with the grid") {
  const PressureLaw law{1.4, 1.0};
  const CnsParams prm = make_cns_params(1.0, 0.0, 1.0, law);
  CnsState a(GridSpec(16, 1.0), prm, law);
  CnsState b(GridSpec(32, 1.0), prm, law);
  const double dta = cfl_dt(a, 0.5), dtb = cfl_dt(b, 0.5);
  CHECK(dta > 0.0);
  CHECK(dta / dtb == doctest::Approx((21.0 / 2.0) / (10.0 / 2.0)).epsilon(0.3));
  CHECK(dta > dtb);
}

TEST_CASE("energy functional hand sum on a single mode") {
  const GridSpec g(16, 1.0);
  const PressureLaw law{1.4, 1.0};
  const CnsParams prm = make_cns_params(1.0, 0.0, 1.0, law);
  CnsState st(g, prm, law);
  const double a = 0.3, b = 0.4;
  st.rho.coeff(2, 0, 0) = {a, 0.0};
  st.rho.coeff(-2, 0, 0) = {a, 0.0};
  st.u[1].coeff(2, 0, 0) = {0.0, b};
  st.u[1].coeff(-2, 0, 0) = {0.0, -b};

  // |xi| = 2: ||grad^k rho||^2 = 2 a^2 4^k, ||grad^k u||^2 = 2 b^2 4^k
  const int ell = 0, m = 2;
  const double beta = 0.1;
  const auto rep = energy_functional(st, ell, m, beta);
  double sob = 0.0;
  for (int k = ell; k <= m; ++k)
    sob += std::pow(4.0, k) * 2.0 * (prm.gamma() * a * a + b * b);
  CHECK(rep.sobolev_sum == doctest::Approx(sob).epsilon(1e-12));
  // cross term: Re(conj(u_hat) . i xi rho_hat) summed over k = ell..m-1;
  // u_1 carries no xi_1 component here, so it vanishes for this mode pair
  CHECK(rep.cross == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(rep.E == doctest::Approx(sob + beta * rep.cross).epsilon(1e-12));
  // rho orders 1..2, u orders 1..3 at |xi| = 2
  const double D_exact = 2.0 * a * a * (4.0 + 16.0) + 2.0 * b * b * (4.0 + 16.0 + 64.0);
  CHECK(rep.D == doctest::Approx(D_exact).epsilon(1e-12));

  CHECK_THROWS(energy_functional(st, 2, 1, beta));   // ell > m - 1
  CHECK_THROWS(energy_functional(st, 0, 2, 0.9));    // beta > 1/2
}

TEST_CASE("negative norm pair rejects s outside (0, 3/2)") {
  const GridSpec g(8, 1.0);
  const PressureLaw law{1.4, 1.0};
  const CnsParams prm = make_cns_params(1.0, 0.0, 1.0, law);
  CnsState st(g, prm, law);
  st.rho.coeff(1, 0, 0) = {1e-3, 0.0};
  st.rho.coeff(-1, 0, 0) = {1e-3, 0.0};
  CHECK_THROWS(negative_norm_pair(st, 1.5));
  CHECK_THROWS(negative_norm_pair(st, 0.0));
  const auto [nr, nu] = negative_norm_pair(st, 0.5);
  CHECK(nr > 0.0);
  CHECK(nu == 0.0);
}

TEST_CASE("short run conserves mass and decays energy") {
  CnsExperimentSpec spec;
  spec.grid = GridSpec(16, 1.0);
  spec.amplitude = 1e-2;
  spec.seed = 3;
  spec.T = 0.5;
  const auto res = run_cns_experiment(spec);
  CHECK(res.mass_drift <= 1e-13);
  CHECK(res.max_energy_step_increase <= spec.monotonicity_tol);
  CHECK(res.density_floor_ok);
  CHECK(res.events.empty());
  CHECK(res.steps > 0);
  const auto& e = res.trajectories.at("E_0^3");
  CHECK(e.samples.back().value < e.samples.front().value);
}
