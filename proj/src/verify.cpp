#include "sobodecay/verify.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_odeiv2.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "sobodecay/cns.hpp"
#include "sobodecay/harness.hpp"
#include "sobodecay/inequalities.hpp"
#include "sobodecay/kinetic.hpp"

namespace sobodecay {

namespace {

using clock_type = std::chrono::steady_clock;

struct Timer {
  clock_type::time_point t0 = clock_type::now();
  double seconds() const {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
  }
};

ClaimResult two_sided(const std::string& id, double measured, double predicted, double tol,
                      const std::string& detail, const std::string& ref) {
  ClaimResult c;
  c.claim_id = id;
  c.measured = measured;
  c.predicted = predicted;
  c.tol = tol;
  c.detail = detail;
  c.mode = "two-sided";
  c.ref = ref;
  c.verdict = std::abs(measured - predicted) <= tol ? Verdict::pass : Verdict::fail;
  return c;
}

ClaimResult upper_bound(const std::string& id, double measured, double bound, double tol,
                        const std::string& detail, const std::string& ref) {
  ClaimResult c;
  c.claim_id = id;
  c.measured = measured;
  c.predicted = bound;
  c.tol = tol;
  c.detail = detail;
  c.mode = "one-sided";
  c.ref = ref;
  c.verdict = measured <= bound + tol ? Verdict::pass : Verdict::fail;
  return c;
}

NormTrajectory oracle_trajectory(const RadialProfile& p, double ell,
                                 const std::vector<double>& times) {
  NormTrajectory traj;
  std::ostringstream lbl;
  lbl << "Hl:" << ell;
  traj.label = lbl.str();
  for (double t : times) traj.add(t, heat_norm_exact(p, ell, t));
  return traj;
}

DecayFit oracle_fit(const RadialProfile& p, double ell, double t_lo, double t_hi,
                    int count = 40) {
  const auto times = HeatExperiment::geometric_times(t_lo, t_hi, count);
  return fit_exponent(oracle_trajectory(p, ell, times), t_lo, t_hi);
}

}  // namespace

SuiteResult verify_heat_sharp_rates() {
  Timer timer;
  SuiteResult out;
  out.suite = "heat_sharp_rates";
  const auto profile = RadialProfile::gaussian(1.0);
  for (int ell : {0, 1, 2}) {
    const auto fit = oracle_fit(profile, ell, 100.0, 1e4);
    const double predicted = -(2.0 * ell + 3.0) / 4.0;
    std::ostringstream id;
    id << "sharp_rate_l=" << ell;
    auto claim = two_sided(id.str(), fit.exponent, predicted, 0.03,
                           "log-log fit on t in [1e2, 1e4]",
                           "sharp heat decay for generic data");
    if (!fit.verdict_eligible()) claim.verdict = Verdict::inconclusive;
    out.report.claims.push_back(claim);
  }
  out.seconds = timer.seconds();
  return out;
}

SuiteResult verify_heat_sigma_family() {
  Timer timer;
  SuiteResult out;
  out.suite = "heat_sigma_family";
  for (double sigma : {0.0, 1.0}) {
    const auto profile = RadialProfile::power_gaussian(sigma, 1.0);
    for (int ell : {0, 1, 2}) {
      const auto fit = oracle_fit(profile, ell, 100.0, 1e4);
      const double predicted = -(2.0 * ell + 2.0 * sigma + 3.0) / 4.0;
      std::ostringstream id;
      id << "sigma_rate_sigma=" << sigma << "_l=" << ell;
      auto claim = two_sided(id.str(), fit.exponent, predicted, 0.03,
                             "low-frequency exponent controls the rate",
                             "rate as a function of the data's low-frequency strength");
      if (!fit.verdict_eligible()) claim.verdict = Verdict::inconclusive;
      out.report.claims.push_back(claim);
    }
  }
  out.seconds = timer.seconds();
  return out;
}

SuiteResult verify_heat_negative_norm() {
  Timer timer;
  SuiteResult out;
  out.suite = "heat_negative_norm";
  const GridSpec grid(32, 1.0);
  TrialSpec trial;
  trial.seed = 2024;
  trial.k_max = 8;
  trial.spectrum_slope = -1.0;
  SpectralField f = random_field(trial, grid);
  const auto times = HeatExperiment::geometric_times(1e-4, 10.0, 500);
  for (double s : {0.5, 1.0, 1.4}) {
    double worst = 0.0;
    double prev = sobolev_norm(f, -s);
    for (double t : times) {
      const double cur = sobolev_norm(evolve_heat(f, t), -s);
      worst = std::max(worst, cur / prev - 1.0);
      prev = cur;
    }
    std::ostringstream id;
    id << "neg_norm_monotone_s=" << s;
    out.report.claims.push_back(upper_bound(id.str(), worst, 0.0, 1e-10,
                                            "max relative increase over 500 samples",
                                            "low-frequency information is conserved"));
  }
  out.seconds = timer.seconds();
  return out;
}

SuiteResult verify_lyapunov() {
  Timer timer;
  SuiteResult out;
  out.suite = "lyapunov";

  // (a) the closed form solves dE/dt + C0 E^{1+1/q} = 0, by finite differences
  {
    const double E0 = 2.5, C0 = 0.7, ell = 1.0, s = 1.0;
    const double q = ell + s;
    double worst = 0.0;
    for (double t : {0.5, 2.0, 10.0, 50.0}) {
      const double h = 1e-4 * (1.0 + t);
      const double dEdt = (lyapunov_bound(E0, C0, ell, s, t + h) -
                           lyapunov_bound(E0, C0, ell, s, t - h)) /
                          (2.0 * h);
      const double E = lyapunov_bound(E0, C0, ell, s, t);
      const double residual = std::abs(dEdt + C0 * std::pow(E, 1.0 + 1.0 / q)) /
                              std::max(std::abs(dEdt), 1e-300);
      worst = std::max(worst, residual);
    }
    out.report.claims.push_back(upper_bound("ode_residual", worst, 0.0, 1e-6,
                                            "central differences at four times",
                                            "closed-form solution of the decay ODE"));
  }

  // (b) with C0 extracted from the data at t = 0, the bound dominates the
  // oracle-measured energy along the whole flow
  const auto profile = RadialProfile::gaussian(1.0);
  for (double ell : {0.0, 1.0}) {
    const double s = 1.0, q = ell + s;
    const double neg0 = heat_norm_exact(profile, -s, 0.0);
    const double C0 = 8.0 * M_PI * M_PI * std::pow(neg0, -2.0 / q);
    const double E0 = std::pow(heat_norm_exact(profile, ell, 0.0), 2);
    double worst = 0.0;
    for (double t : HeatExperiment::geometric_times(0.01, 100.0, 40)) {
      const double E = std::pow(heat_norm_exact(profile, ell, t), 2);
      const double bound = lyapunov_bound(E0, C0, ell, s, t);
      worst = std::max(worst, E / bound - 1.0);
    }
    std::ostringstream id;
    id << "envelope_l=" << ell;
    out.report.claims.push_back(upper_bound(id.str(), worst, 0.0, 1e-8,
                                            "max E(t)/bound(t) - 1 over 40 samples",
                                            "differential inequality envelope"));
  }
  out.seconds = timer.seconds();
  return out;
}

SuiteResult verify_neg_interp_gate() {
  Timer timer;
  SuiteResult out;
  out.suite = "neg_interp_gate";
  const GridSpec grid(32, 1.0);
  const std::vector<double> ells = {0.0, 1.0, 2.0};
  const std::vector<double> ss = {0.5, 1.0, 1.4};

  // distinct |xi|^{2p} weight tables shared across all trial fields
  std::vector<double> powers;
  for (double ell : ells) {
    powers.push_back(2.0 * ell);
    powers.push_back(2.0 * (ell + 1.0));
  }
  for (double s : ss) powers.push_back(-2.0 * s);
  std::sort(powers.begin(), powers.end());
  powers.erase(std::unique(powers.begin(), powers.end()), powers.end());

  const std::size_t nmodes = grid.size();
  std::vector<std::vector<double>> weight(powers.size(), std::vector<double>(nmodes, 0.0));
  {
    std::size_t flat = 0;
    for (int i = 0; i < grid.n; ++i)
      for (int j = 0; j < grid.n; ++j)
        for (int k = 0; k < grid.n; ++k, ++flat) {
          const double kx = grid.freq(i), ky = grid.freq(j), kz = grid.freq(k);
          const double xi2 = (kx * kx + ky * ky + kz * kz) / (grid.L * grid.L);
          if (xi2 == 0.0) continue;  // mean-zero fields: zero mode never contributes
          for (std::size_t p = 0; p < powers.size(); ++p)
            weight[p][flat] = std::pow(xi2, powers[p] / 2.0);
        }
  }
  auto power_index = [&](double p) {
    return static_cast<std::size_t>(
        std::lower_bound(powers.begin(), powers.end(), p - 1e-12) - powers.begin());
  };

  double max_ratio = 0.0;
  std::uint64_t argmax_seed = 0;
  TrialSpec trial;
  trial.k_max = 8;
  trial.spectrum_slope = -1.0;
  std::vector<double> sums(powers.size());
  for (int tcase = 0; tcase < 1000; ++tcase) {
    trial.seed = 1000 + static_cast<std::uint64_t>(tcase);
    const SpectralField f = random_field(trial, grid);
    std::fill(sums.begin(), sums.end(), 0.0);
    for (std::size_t i = 0; i < nmodes; ++i) {
      const double a = std::norm(f.data[i]);
      if (a == 0.0) continue;
      for (std::size_t p = 0; p < powers.size(); ++p) sums[p] += weight[p][i] * a;
    }
    for (double ell : ells)
      for (double s : ss) {
        const double theta = 1.0 / (ell + 1.0 + s);
        const double lhs = std::sqrt(sums[power_index(2.0 * ell)]);
        const double rhs = std::pow(std::sqrt(sums[power_index(2.0 * (ell + 1.0))]),
                                    1.0 - theta) *
                           std::pow(std::sqrt(sums[power_index(-2.0 * s)]), theta);
        const double ratio = lhs / rhs;
        if (ratio > max_ratio) {
          max_ratio = ratio;
          argmax_seed = trial.seed;
        }
      }
  }
  std::ostringstream detail;
  detail << "1000 fields x 9 (l,s) combos at 32^3; argmax seed " << argmax_seed;
  out.report.claims.push_back(upper_bound("neg_interp_constant_one", max_ratio, 1.0, 1e-10,
                                          detail.str(),
                                          "interpolation with constant exactly one"));
  out.seconds = timer.seconds();
  return out;
}

SuiteResult verify_lemma_stability() {
  Timer timer;
  SuiteResult out;
  out.suite = "lemma_stability";
  const GridSpec g32(32, 1.0), g64(64, 1.0);

  auto stability_claim = [&](const std::string& id, double r32, double r64,
                             const std::string& ref) {
    const double change = std::abs(r64 / r32 - 1.0);
    std::ostringstream detail;
    detail << "max ratio " << r32 << " at 32^3 vs " << r64 << " at 64^3";
    out.report.claims.push_back(
        upper_bound(id, change, 0.0, 0.10, detail.str(), ref));
  };

  TrialSpec trial;
  trial.seed = 7;
  trial.k_max = 8;
  trial.spectrum_slope = -1.0;

  // band-change comparisons use a steep spectrum so the widened band keeps
  // the family comparable: the constants are band-independent, but a flat
  // spectrum moves most of the trial mass into the new shells
  TrialSpec steep = trial;
  steep.spectrum_slope = -4.0;
  steep.count = 100;
  TrialSpec steep_wide = steep;
  steep_wide.k_max = 12;

  // interpolation of L^inf between L^2 and the second gradient
  {
    trial.count = 100;
    const double r32 = sweep_gn(trial, g32, INFINITY, 0.0, 0.0, 2.0).max_ratio;
    const double r64 = sweep_gn(trial, g64, INFINITY, 0.0, 0.0, 2.0).max_ratio;
    stability_claim("gn_grid_doubling", r32, r64, "uniform interpolation constant");
    const double rbase = sweep_gn(steep, g64, INFINITY, 0.0, 0.0, 2.0).max_ratio;
    const double rwide = sweep_gn(steep_wide, g64, INFINITY, 0.0, 0.0, 2.0).max_ratio;
    stability_claim("gn_band_change", rbase, rwide, "constant independent of the band");
  }

  // Riesz potential bound
  {
    trial.count = 100;
    const double r32 = sweep_riesz(trial, g32, 1.0, 1.5, 3.0).max_ratio;
    const double r64 = sweep_riesz(trial, g64, 1.0, 1.5, 3.0).max_ratio;
    stability_claim("riesz_grid_doubling", r32, r64, "uniform Riesz constant");
    const double rbase = sweep_riesz(steep, g64, 1.0, 1.5, 3.0).max_ratio;
    const double rwide = sweep_riesz(steep_wide, g64, 1.0, 1.5, 3.0).max_ratio;
    stability_claim("riesz_band_change", rbase, rwide, "constant independent of the band");
  }

  // commutator estimate, orders 1..3; the band is kept low enough that the
  // quadratic products fit under the 32^3 dealias cutoff, so both grids see
  // the same exact convolution
  for (int m : {1, 2, 3}) {
    trial.count = 40;
    trial.k_max = 5;
    const double r32 = sweep_commutator(trial, g32, m).max_ratio;
    const double r64 = sweep_commutator(trial, g64, m).max_ratio;
    std::ostringstream id;
    id << "commutator_grid_doubling_m=" << m;
    stability_claim(id.str(), r32, r64, "uniform commutator constant");
  }

  // mixed-norm exchange never violated
  {
    std::mt19937_64 rng(99);
    std::normal_distribution<double> gauss;
    double worst = -1.0;
    const int ny = 24, nz = 24;
    std::vector<double> wy(ny, 1.0 / ny), wz(nz, 1.0 / nz);
    for (auto [p, q] : std::vector<std::pair<double, double>>{
             {1.0, 2.0}, {2.0, 6.0}, {1.5, 4.0}, {1.0, INFINITY}}) {
      for (int tcase = 0; tcase < 200; ++tcase) {
        std::vector<double> F(static_cast<std::size_t>(ny) * nz);
        for (auto& v : F) v = gauss(rng);
        const auto [lhs, rhs] = check_minkowski(F, wy, wz, p, q);
        worst = std::max(worst, (lhs - rhs) / std::max(rhs, 1e-300));
      }
    }
    out.report.claims.push_back(upper_bound("minkowski_order", worst, 0.0, 1e-12,
                                            "max relative (lhs - rhs) over 800 trials",
                                            "mixed-norm exchange"));
  }
  out.seconds = timer.seconds();
  return out;
}

namespace {

struct LinearCnsOde {
  std::array<double, 3> xi;
  CnsParams params;
};

int linear_cns_rhs(double, const double y[], double dydt[], void* ctx) {
  const auto& ode = *static_cast<const LinearCnsOde*>(ctx);
  const auto& prm = ode.params;
  const std::complex<double> I(0.0, 1.0);
  std::complex<double> rho(y[0], y[1]);
  std::array<std::complex<double>, 3> u = {std::complex<double>(y[2], y[3]),
                                           std::complex<double>(y[4], y[5]),
                                           std::complex<double>(y[6], y[7])};
  const double twopi = 2.0 * M_PI;
  const double xi2 =
      ode.xi[0] * ode.xi[0] + ode.xi[1] * ode.xi[1] + ode.xi[2] * ode.xi[2];
  std::complex<double> div_u = 0.0;
  for (int a = 0; a < 3; ++a) div_u += twopi * I * ode.xi[a] * u[a];
  // d rho / dt = -rho_bar div u
  const std::complex<double> drho = -prm.rho_bar * div_u;
  dydt[0] = drho.real();
  dydt[1] = drho.imag();
  for (int a = 0; a < 3; ++a) {
    // du/dt = mu_bar lap u + (mu_bar + lambda_bar) grad div u - gamma grad rho
    std::complex<double> du = -prm.mu_bar() * 4.0 * M_PI * M_PI * xi2 * u[a];
    du += (prm.mu_bar() + prm.lambda_bar()) * (twopi * I * ode.xi[a]) * div_u;
    du -= prm.gamma() * twopi * I * ode.xi[a] * rho;
    dydt[2 + 2 * a] = du.real();
    dydt[3 + 2 * a] = du.imag();
  }
  return GSL_SUCCESS;
}

std::array<std::complex<double>, 4> ode_reference_evolve(
    const std::array<double, 3>& xi, const std::array<std::complex<double>, 4>& state,
    double t, const CnsParams& params) {
  LinearCnsOde ctx{xi, params};
  gsl_odeiv2_system sys{linear_cns_rhs, nullptr, 8, &ctx};
  gsl_odeiv2_driver* drv =
      gsl_odeiv2_driver_alloc_y_new(&sys, gsl_odeiv2_step_rkf45, 1e-8, 1e-13, 1e-13);
  double y[8] = {state[0].real(), state[0].imag(), state[1].real(), state[1].imag(),
                 state[2].real(), state[2].imag(), state[3].real(), state[3].imag()};
  double t0 = 0.0;
  const int status = gsl_odeiv2_driver_apply(drv, &t0, t, y);
  gsl_odeiv2_driver_free(drv);
  if (status != GSL_SUCCESS) throw std::runtime_error("reference ODE integration failed");
  return {std::complex<double>(y[0], y[1]), std::complex<double>(y[2], y[3]),
          std::complex<double>(y[4], y[5]), std::complex<double>(y[6], y[7])};
}

double state_norm(const std::array<std::complex<double>, 4>& s) {
  double out = 0.0;
  for (const auto& c : s) out += std::norm(c);
  return std::sqrt(out);
}

}  // namespace

SuiteResult verify_linear_cns() {
  Timer timer;
  SuiteResult out;
  out.suite = "linear_cns";
  const CnsParams params = make_cns_params(1.0, 0.2, 1.0, PressureLaw{1.4, 1.0});

  // (a) closed-form mode propagator against an adaptive ODE integration
  {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> gauss;
    const double r_crit = params.sound_speed() /
                          (M_PI * (2.0 * params.mu_bar() + params.lambda_bar()));
    std::vector<std::array<double, 3>> xis = {
        {1.0, 0.0, 0.0},    {0.0, 2.0, 0.0},      {1.0, 1.0, 1.0},
        {0.3, -0.7, 0.45},  {r_crit, 0.0, 0.0},   {r_crit * 0.9999, r_crit * 1e-4, 0.0}};
    double worst = 0.0;
    for (const auto& xi : xis) {
      std::array<std::complex<double>, 4> state;
      for (auto& c : state) c = {gauss(rng), gauss(rng)};
      for (double t : {0.05, 0.3}) {
        const auto exact = linear_cns_mode_evolve(xi, state, t, params);
        const auto ref = ode_reference_evolve(xi, state, t, params);
        std::array<std::complex<double>, 4> diff;
        for (int i = 0; i < 4; ++i) diff[i] = exact[i] - ref[i];
        worst = std::max(worst, state_norm(diff) / state_norm(state));
      }
    }
    out.report.claims.push_back(upper_bound("mode_vs_ode", worst, 0.0, 1e-9,
                                            "12 (mode, time) pairs incl. near-critical",
                                            "closed-form acoustic propagator"));
  }

  // (b) radial oracle: generic partition decays like the heat semigroup
  {
    const auto profile = RadialProfile::gaussian(1.0);
    const EnergyPartition partition{0.8, 1.1, 0.6};
    NormTrajectory traj;
    traj.label = "linear_cns_E0";
    for (double t : HeatExperiment::geometric_times(100.0, 1e4, 40))
      traj.add(t, linear_cns_norm_exact(profile, partition, 0.0, t, params));
    const auto fit = fit_exponent(traj, 100.0, 1e4);
    auto claim = two_sided("linear_decay_rate_l=0", fit.exponent, -0.75, 0.03,
                           "energy-weighted norm, generic partition",
                           "linearized flow decays like the heat semigroup");
    if (!fit.verdict_eligible()) claim.verdict = Verdict::inconclusive;
    out.report.claims.push_back(claim);
  }

  // (c) per-mode energy identity dE/dt = -dissipation, 5-point differences
  {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> gauss;
    double worst = 0.0;
    for (const auto& xi : std::vector<std::array<double, 3>>{
             {1.0, 0.0, 0.0}, {0.5, 0.5, 0.0}, {0.3, -0.2, 0.6}}) {
      std::array<std::complex<double>, 4> state;
      for (auto& c : state) c = {gauss(rng), gauss(rng)};
      const double t = 0.2, h = 4e-4;
      auto energy_at = [&](double tau) {
        return mode_energy(linear_cns_mode_evolve(xi, state, tau, params), params);
      };
      const double dEdt = (-energy_at(t + 2 * h) + 8 * energy_at(t + h) -
                           8 * energy_at(t - h) + energy_at(t - 2 * h)) /
                          (12.0 * h);
      const auto now = linear_cns_mode_evolve(xi, state, t, params);
      const double dissipation = mode_dissipation(xi, now, params);
      worst = std::max(worst,
                       std::abs(dEdt + dissipation) / std::max(dissipation, 1e-300));
    }
    out.report.claims.push_back(upper_bound("energy_identity", worst, 0.0, 1e-8,
                                            "fourth-order differences at t = 0.2",
                                            "per-mode energy balance"));
  }
  out.seconds = timer.seconds();
  return out;
}

SuiteResult verify_nonlinear_cns() {
  Timer timer;
  SuiteResult out;
  out.suite = "nonlinear_cns";

  CnsExperimentSpec spec;  // defaults: 32^3, amplitude 1e-2, T = 10, beta = 0.1
  spec.seed = 42;
  // mild viscosity: at mu = 1 the viscous rate times the CFL step is ~100 at
  // the top retained mode, deep in the regime where integrating-factor RK4
  // loses accuracy to the non-commuting stiff/explicit split
  spec.params = make_cns_params(0.05, 0.0, 1.0, spec.pressure);
  const CnsRunResult res = run_cns_experiment(spec);

  out.report.claims.push_back(upper_bound("energy_monotone",
                                          res.max_energy_step_increase, 0.0,
                                          spec.monotonicity_tol,
                                          "worst per-step increase of E_0^3, E_1^3 rel E(0)",
                                          "Lyapunov functional nonincreasing"));
  out.report.claims.push_back(upper_bound("mass_conserved", res.mass_drift, 0.0, 1e-12,
                                          "max drift of the density mean",
                                          "conservative continuity form"));
  for (double s : spec.s_list) {
    std::ostringstream key;
    key << "H-" << s;
    const auto& tr = res.trajectories.at(key.str());
    const double init = tr.samples.front().value;
    double peak = 0.0;
    for (const auto& smp : tr.samples) peak = std::max(peak, smp.value);
    out.report.claims.push_back(upper_bound("neg_norm_bounded_" + key.str(), peak,
                                            2.0 * init, 0.0, "max over the run vs 2x initial",
                                            "negative norm stays bounded"));
  }
  {
    ClaimResult c = upper_bound("density_floor", res.density_floor_ok ? 0.0 : 1.0, 0.0, 0.0,
                                res.events.empty() ? "no events recorded"
                                                   : res.events.front(),
                                "density stays in the a priori window");
    out.report.claims.push_back(c);
  }

  // linear-limit step: at tiny amplitude one IF-RK4 step matches the exact
  // per-mode linear propagator
  {
    CnsExperimentSpec tiny = spec;
    tiny.amplitude = 1e-8;
    CnsState state = make_random_state(tiny);
    const double dt = 1e-4;
    const CnsState next = step(state, dt);

    double err2 = 0.0, ref2 = 0.0;
    const GridSpec& grid = state.rho.grid;
    auto spectral = [](const SpectralField& f) {
      return f.space == Space::spectral ? f : transform(f, Space::spectral);
    };
    const SpectralField rho_s = spectral(state.rho);
    std::array<SpectralField, 3> u_s = {spectral(state.u[0]), spectral(state.u[1]),
                                        spectral(state.u[2])};
    const SpectralField rho_n = spectral(next.rho);
    std::array<SpectralField, 3> u_n = {spectral(next.u[0]), spectral(next.u[1]),
                                        spectral(next.u[2])};
    for (int i = 0; i < grid.n; ++i)
      for (int j = 0; j < grid.n; ++j)
        for (int k = 0; k < grid.n; ++k) {
          const std::array<double, 3> xi = {grid.freq(i) / grid.L, grid.freq(j) / grid.L,
                                            grid.freq(k) / grid.L};
          const std::array<std::complex<double>, 4> s0 = {
              rho_s.at(i, j, k), u_s[0].at(i, j, k), u_s[1].at(i, j, k),
              u_s[2].at(i, j, k)};
          const auto exact = linear_cns_mode_evolve(xi, s0, dt, state.params);
          const std::array<std::complex<double>, 4> got = {
              rho_n.at(i, j, k), u_n[0].at(i, j, k), u_n[1].at(i, j, k),
              u_n[2].at(i, j, k)};
          for (int c = 0; c < 4; ++c) err2 += std::norm(got[c] - exact[c]);
          for (int c = 0; c < 4; ++c) ref2 += std::norm(s0[c]);
        }
    out.report.claims.push_back(upper_bound("linear_limit_step",
                                            std::sqrt(err2 / ref2), 0.0, 1e-10,
                                            "one step at amplitude 1e-8 vs exact propagator",
                                            "scheme linearizes correctly"));
  }

  // temporal order by Richardson extrapolation on a short 16^3 run
  {
    CnsExperimentSpec small;
    small.grid = GridSpec(16, 1.0);
    small.amplitude = 1e-2;
    small.seed = 9;
    small.params = make_cns_params(0.05, 0.0, 1.0, small.pressure);
    CnsState base = make_random_state(small);
    // base step one eighth of the CFL step: keeps the viscous exponent per
    // stage below ~0.5 so the classical fourth order is the asymptotic one
    const double dt = cfl_dt(base, 0.5) / 8.0;
    const int nsteps = 16;
    auto integrate = [&](double h, int n) {
      CnsState s = base;
      for (int i = 0; i < n; ++i) s = step(s, h);
      return s;
    };
    const CnsState y1 = integrate(dt, nsteps);
    const CnsState y2 = integrate(dt / 2.0, 2 * nsteps);
    const CnsState yr = integrate(dt / 8.0, 8 * nsteps);
    auto diff_norm = [](const CnsState& a, const CnsState& b) {
      double acc = 0.0;
      auto add = [&](const SpectralField& f, const SpectralField& g) {
        auto spectral = [](const SpectralField& h) {
          return h.space == Space::spectral ? h : transform(h, Space::spectral);
        };
        const SpectralField fa = spectral(f);
        const SpectralField ga = spectral(g);
        for (std::size_t i = 0; i < fa.data.size(); ++i)
          acc += std::norm(fa.data[i] - ga.data[i]);
      };
      add(a.rho, b.rho);
      for (int c = 0; c < 3; ++c) add(a.u[c], b.u[c]);
      return std::sqrt(acc);
    };
    const double e1 = diff_norm(y1, yr), e2 = diff_norm(y2, yr);
    const double order = std::log2(e1 / e2);
    ClaimResult c;
    c.claim_id = "rk4_order";
    c.measured = order;
    c.predicted = 4.0;
    c.tol = 0.1;
    c.mode = "one-sided";
    c.detail = "Richardson on 16 steps at one eighth CFL, reference at dt/8";
    c.ref = "fourth-order time integration";
    c.verdict = order >= 3.9 ? Verdict::pass : Verdict::fail;
    out.report.claims.push_back(c);
  }
  out.seconds = timer.seconds();
  return out;
}

SuiteResult verify_kinetic() {
  Timer timer;
  SuiteResult out;
  out.suite = "kinetic";
  const VelocityGrid grid(65, 8.0);
  // the |v - u| cusp limits trapezoid accuracy to O(h^4); the scalar
  // quadrature gates get a finer grid than the table-backed ones
  const VelocityGrid fine(129, 8.0);

  const VelocityFunction mu = maxwellian(fine);
  double integral_mu = 0.0;
  for (std::size_t i = 0; i < mu.values.size(); ++i)
    integral_mu += fine.weight(i) * mu.values[i];
  const double mu_exact = std::pow(2.0 * M_PI, 1.5);
  out.report.claims.push_back(two_sided("maxwellian_mass", integral_mu / mu_exact, 1.0, 1e-6,
                                        "trapezoid quadrature, nv = 129, v_max = 8",
                                        "normalized equilibrium"));

  const double nu0 = collision_frequency({0.0, 0.0, 0.0}, fine);
  out.report.claims.push_back(two_sided("nu_at_zero", nu0, 8.0 * M_PI, 1e-4,
                                        "closed form at v = 0",
                                        "hard-sphere collision frequency"));

  // projection algebra on random data
  {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> gauss;
    VelocityFunction f(grid);
    for (auto& v : f.values) v = gauss(rng);
    const double fn = l2_norm(f);
    const VelocityFunction Pf = project_P(f);
    const VelocityFunction PPf = project_P(Pf);
    double idem = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i)
      idem += grid.weight(i) * std::pow(PPf.values[i] - Pf.values[i], 2);
    out.report.claims.push_back(upper_bound("projection_idempotent", std::sqrt(idem) / fn,
                                            0.0, 1e-12, "||P^2 f - P f|| / ||f||",
                                            "P is a projection"));

    VelocityFunction g(grid);
    for (auto& v : g.values) v = gauss(rng);
    const VelocityFunction Pg = project_P(g);
    const double asym = std::abs(inner_product(Pf, g) - inner_product(f, Pg)) /
                        (fn * l2_norm(g));
    out.report.claims.push_back(upper_bound("projection_self_adjoint", asym, 0.0, 1e-12,
                                            "|<Pf, g> - <f, Pg>| / (||f|| ||g||)",
                                            "P is orthogonal"));

    const VelocityFunction micro = micro_part(f);
    const double pyth = std::abs(std::pow(l2_norm(Pf), 2) + std::pow(l2_norm(micro), 2) -
                                 fn * fn) /
                        (fn * fn);
    out.report.claims.push_back(upper_bound("projection_pythagoras", pyth, 0.0, 1e-10,
                                            "| ||Pf||^2 + ||f - Pf||^2 - ||f||^2 | / ||f||^2",
                                            "orthogonal decomposition"));
  }

  // two-sided comparison with 1 + |v| over the whole node set
  {
    const auto& table = collision_frequency_table(grid);
    double c1 = INFINITY, c2 = 0.0;
    for (std::size_t i = 0; i < table.size(); ++i) {
      const auto v = grid.node(i);
      const double z = 1.0 + std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
      c1 = std::min(c1, table[i] / z);
      c2 = std::max(c2, table[i] / z);
    }
    ClaimResult c;
    c.claim_id = "nu_comparable_1_plus_v";
    c.measured = c1;
    c.predicted = c2;
    c.tol = 0.0;
    c.mode = "one-sided";
    std::ostringstream detail;
    detail << "c1 = " << c1 << ", c2 = " << c2 << " with c1 (1+|v|) <= nu <= c2 (1+|v|)";
    c.detail = detail.str();
    c.ref = "collision frequency grows linearly";
    c.verdict = (c1 > 0.0 && c2 < INFINITY) ? Verdict::pass : Verdict::fail;
    out.report.claims.push_back(c);
  }
  out.seconds = timer.seconds();
  return out;
}

SuiteResult verify_harness_repro() {
  Timer timer;
  SuiteResult out;
  out.suite = "harness_repro";
  namespace fs = std::filesystem;

  const std::string config_text =
      "kind = heat\n"
      "profile = gaussian\n"
      "s = 1.0\n"
      "ell_list = 0, 1\n"
      "times.start = 1\n"
      "times.stop = 1000\n"
      "times.count = 24\n"
      "fit.t_lo = 10\n"
      "fit.t_hi = 1000\n";
  const fs::path root = fs::temp_directory_path() / "sobodecay_repro";
  fs::remove_all(root);
  auto run_into = [&](const std::string& sub) {
    ExperimentConfig cfg = parse_config_text(
        config_text + "out_dir = " + (root / sub).string() + "\n", "<repro>");
    return run(cfg);
  };
  const RunRecord a = run_into("a");
  const RunRecord b = run_into("b");

  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  bool identical = true;
  for (const char* name : {"trajectory.csv", "verdicts.json"})
    identical = identical && slurp(a.dir / name) == slurp(b.dir / name);
  out.report.claims.push_back(upper_bound("byte_identical_outputs", identical ? 0.0 : 1.0,
                                          0.0, 0.0, "CSV and JSON compared byte-wise",
                                          "deterministic record keeping"));

  bool write_once = false;
  try {
    run_into("a");
  } catch (const std::exception&) {
    write_once = true;
  }
  out.report.claims.push_back(upper_bound("write_once", write_once ? 0.0 : 1.0, 0.0, 0.0,
                                          "re-running an existing record throws",
                                          "records are immutable"));
  fs::remove_all(root);
  out.seconds = timer.seconds();
  return out;
}

std::vector<std::string> verify_suite_names() {
  return {"heat_sharp_rates", "heat_sigma_family", "heat_negative_norm", "lyapunov",
          "neg_interp_gate", "lemma_stability",    "linear_cns",         "nonlinear_cns",
          "kinetic",          "harness_repro"};
}

std::vector<SuiteResult> verify_suite(const std::string& name) {
  using Runner = SuiteResult (*)();
  static const std::vector<std::pair<std::string, Runner>> table = {
      {"heat_sharp_rates", verify_heat_sharp_rates},
      {"heat_sigma_family", verify_heat_sigma_family},
      {"heat_negative_norm", verify_heat_negative_norm},
      {"lyapunov", verify_lyapunov},
      {"neg_interp_gate", verify_neg_interp_gate},
      {"lemma_stability", verify_lemma_stability},
      {"linear_cns", verify_linear_cns},
      {"nonlinear_cns", verify_nonlinear_cns},
      {"kinetic", verify_kinetic},
      {"harness_repro", verify_harness_repro},
  };
  std::vector<SuiteResult> out;
  for (const auto& [n, fn] : table)
    if (name == "all" || name == n) out.push_back(fn());
  if (out.empty()) throw std::runtime_error("unknown suite `" + name + "`");
  return out;
}

}  // namespace sobodecay
