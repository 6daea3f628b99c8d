#include <cmath>
#include <complex>

#include "doctest.h"
#include "sobodecay/inequalities.hpp"

using namespace sobodecay;

TEST_CASE("random trial fields are real, mean-zero, band-limited") {
  const GridSpec g(32, 1.0);
  TrialSpec spec;
  spec.seed = 11;
  spec.k_min = 2;
  spec.k_max = 6;
  spec.spectrum_slope = -1.0;
  const SpectralField f = random_field(spec, g);
  const SpectralField fs = f.space == Space::spectral ? f : transform(f, Space::spectral);
  CHECK(std::abs(fs.coeff(0, 0, 0)) == 0.0);
  for (int kx : {0, 1, 3, 7})
    for (int ky : {0, 2, 5}) {
      const auto c = fs.coeff(kx, ky, 0);
      const double k = std::sqrt(double(kx * kx + ky * ky));
      if (k < 2.0 - 1e-9 || k > 6.0 + 1e-9) CHECK(std::abs(c) == 0.0);
      // Hermitian symmetry
      CHECK(std::abs(std::conj(c) - fs.coeff(-kx, -ky, 0)) < 1e-15);
    }
  const SpectralField fp = transform(fs, Space::physical);
  double imag_max = 0.0;
  for (const auto& v : fp.data) imag_max = std::max(imag_max, std::abs(v.imag()));
  CHECK(imag_max < 1e-13);

  // deterministic given the seed
  const SpectralField f2 = random_field(spec, g);
  for (std::size_t i = 0; i < fs.data.size(); ++i) CHECK(fs.data[i] == f2.data[i]);

  TrialSpec bad = spec;
  bad.k_max = 20;  // beyond n/3
  CHECK_THROWS(random_field(bad, g));
}

TEST_CASE("negative interpolation is an identity on a single shell") {
  // all spectral mass at one radius: Holder holds with equality
  const GridSpec g(32, 1.0);
  SpectralField f(g, Space::spectral);
  f.coeff(3, 0, 0) = {0.4, 0.1};
  f.coeff(-3, 0, 0) = {0.4, -0.1};
  f.coeff(0, 3, 0) = {0.0, 0.7};
  f.coeff(0, -3, 0) = {0.0, -0.7};
  for (double ell : {0.0, 1.0, 2.0})
    for (double s : {0.5, 1.0, 1.4})
      CHECK(check_neg_interp(f, ell, s) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("negative interpolation never exceeds one") {
  const GridSpec g(32, 1.0);
  TrialSpec spec;
  spec.count = 25;
  spec.spectrum_slope = -1.5;
  const auto report = sweep_neg_interp(spec, g, 1.0, 0.5);
  CHECK(report.max_ratio <= 1.0 + 1e-10);
  CHECK(report.mean_ratio <= report.max_ratio);
  CHECK(report.mean_ratio > 0.0);
}

TEST_CASE("gn degenerate family is an identity") {
  const GridSpec g(32, 1.0);
  TrialSpec spec;
  spec.seed = 4;
  const SpectralField f = random_field(spec, g);
  // m == ell == 0, p = 2: theta immaterial, ratio is exactly 1
  CHECK(check_gn(f, 2.0, 0.0, 0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  // scaling identity violated at m == ell
  CHECK_THROWS(check_gn(f, 4.0, 0.0, 0.0, 0.0));
  // theta would fall outside [0,1]
  CHECK_THROWS(check_gn(f, 1.0, 0.0, 0.0, 2.0));
}

TEST_CASE("riesz exponents must satisfy the scaling identity") {
  const GridSpec g(32, 1.0);
  TrialSpec spec;
  spec.seed = 5;
  const SpectralField f = random_field(spec, g);
  CHECK(check_riesz(f, 1.0, 1.5, 3.0) > 0.0);          // 1/3 + 1/3 = 2/3
  CHECK_THROWS(check_riesz(f, 1.0, 1.5, 4.0));
  CHECK_THROWS(check_riesz(f, 3.5, 1.5, 3.0));         // s outside (0,3)
}

TEST_CASE("commutator with a constant multiplier vanishes") {
  const GridSpec g(16, 1.0);
  SpectralField f(g, Space::spectral);
  f.coeff(0, 0, 0) = {2.0, 0.0};  // constant field: [grad^m, f] g = 0
  TrialSpec spec;
  spec.seed = 6;
  spec.k_max = 4;
  const SpectralField gfield = random_field(spec, g);
  CHECK(check_commutator(f, gfield, 2) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS(check_commutator(f, gfield, 0));
}

TEST_CASE("minkowski mixed norms") {
  const std::vector<double> wy = {0.5, 0.5}, wz = {0.25, 0.75};
  const std::vector<double> F = {1.0, -2.0, 3.0, 0.5};

  SUBCASE("p = q collapses to a single norm") {
    const auto [lhs, rhs] = check_minkowski(F, wy, wz, 2.0, 2.0);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
  }

  SUBCASE("ordering holds and is strict off the degenerate case") {
    const auto [lhs, rhs] = check_minkowski(F, wy, wz, 1.0, 2.0);
    CHECK(lhs <= rhs + 1e-14);
  }

  SUBCASE("infinite outer exponent") {
    const auto [lhs, rhs] = check_minkowski(F, wy, wz, 1.0, INFINITY);
    CHECK(lhs <= rhs + 1e-14);
  }

  CHECK_THROWS(check_minkowski(F, wy, wz, 3.0, 2.0));  // p > q
}

TEST_CASE("sweeps are deterministic") {
  const GridSpec g(32, 1.0);
  TrialSpec spec;
  spec.seed = 21;
  spec.count = 5;
  const auto a = sweep_neg_interp(spec, g, 0.0, 1.0);
  const auto b = sweep_neg_interp(spec, g, 0.0, 1.0);
  CHECK(a.max_ratio == b.max_ratio);
  CHECK(a.mean_ratio == b.mean_ratio);
  CHECK(a.argmax_seed == b.argmax_seed);
}
