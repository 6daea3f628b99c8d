#include <cmath>

#include "doctest.h"
#include "sobodecay/heat.hpp"
#include "sobodecay/inequalities.hpp"

using namespace sobodecay;

TEST_CASE("geometric time schedule") {
  const auto t = HeatExperiment::geometric_times(1.0, 100.0, 5);
  REQUIRE(t.size() == 5);
  CHECK(t.front() == doctest::Approx(1.0));
  CHECK(t.back() == doctest::Approx(100.0));
  CHECK(t[1] / t[0] == doctest::Approx(t[2] / t[1]).epsilon(1e-12));
  CHECK_THROWS(HeatExperiment::geometric_times(10.0, 1.0, 5));
}

TEST_CASE("window rule") {
  HeatExperiment exp;
  const GridSpec g(16, 4.0);
  TrialSpec trial;
  trial.seed = 1;
  trial.k_max = 4;
  exp.field = random_field(trial, g);
  exp.s = 1.0;
  exp.ell_list = {0.0};
  exp.times = {0.001, 0.005, 1.0};
  exp.window_eta = 0.02;
  const double t_max = exp.window_t_max();
  CHECK(t_max == doctest::Approx(0.02 * std::pow(4.0 / (2.0 * M_PI), 2)));

  const auto traj = decay_trajectory(exp);
  const auto& l2 = traj.at("Hl:0");
  REQUIRE(l2.samples.size() == 3);
  CHECK_FALSE(l2.samples[0].flagged);
  CHECK(l2.samples[2].flagged);  // beyond the spectral-gap window
  CHECK(traj.count("Linf") == 1);
  CHECK(traj.count("H-s") == 1);
}

TEST_CASE("evolve_heat damps a single mode by the exact symbol") {
  const GridSpec g(16, 1.0);
  SpectralField f(g, Space::spectral);
  f.coeff(2, -1, 0) = {1.0, 0.5};
  const double t = 0.03;
  const SpectralField ft = evolve_heat(f, t);
  const double sym = std::exp(-4.0 * M_PI * M_PI * 5.0 * t);  // |k|^2 = 5
  CHECK(std::abs(ft.coeff(2, -1, 0) - std::complex<double>(1.0, 0.5) * sym) < 1e-14);
}

TEST_CASE("lyapunov bound closed form") {
  const double E0 = 3.0, C0 = 0.9, ell = 1.0, s = 0.5;
  CHECK(lyapunov_bound(E0, C0, ell, s, 0.0) == doctest::Approx(E0).epsilon(1e-14));
  double prev = E0;
  for (double t : {0.1, 1.0, 10.0, 100.0}) {
    const double e = lyapunov_bound(E0, C0, ell, s, t);
    CHECK(e < prev);
    prev = e;
  }
  // large-time power law (1 + C0 t / q)^{-q}
  const double q = ell + s;
  const double t = 1e6;
  const double expected = std::pow(C0 * t / q, -q);
  CHECK(lyapunov_bound(E0, C0, ell, s, t) == doctest::Approx(expected).epsilon(1e-3));
}

TEST_CASE("oracle theorem verification passes on Gaussian data") {
  HeatExperiment exp;
  exp.profile = RadialProfile::gaussian(1.0);
  exp.s = 1.4;  // close to the sharp endpoint for sigma = 0
  exp.ell_list = {0.0, 1.0};
  exp.times = HeatExperiment::geometric_times(100.0, 1e4, 20);
  const auto report = verify_heat_theorem(exp, 100.0, 1e4, 0.03);
  CHECK(report.all_pass());
  bool found_rate = false;
  for (const auto& c : report.claims)
    if (c.claim_id == "decay_exponent_l=0") {
      found_rate = true;
      CHECK(c.measured == doctest::Approx(-0.75).epsilon(0.05));
    }
  CHECK(found_rate);
}

TEST_CASE("experiment validation") {
  HeatExperiment exp;
  CHECK_THROWS(exp.validate());  // neither profile nor field
  exp.profile = RadialProfile::gaussian(1.0);
  const GridSpec g(16, 1.0);
  TrialSpec trial;
  trial.k_max = 4;
  exp.field = random_field(trial, g);
  exp.ell_list = {0.0};
  exp.times = {1.0};
  CHECK_THROWS(exp.validate());  // both set
}
