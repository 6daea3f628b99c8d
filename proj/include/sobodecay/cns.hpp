#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "sobodecay/fit.hpp"
#include "sobodecay/oracle.hpp"
#include "sobodecay/spectral.hpp"

namespace sobodecay {

/// Smooth barotropic pressure law p(rho) = K rho^exponent.
struct PressureLaw {
  double exponent = 1.4;
  double K = 1.0;

  double p_prime(double rho) const;
};

/// Build consistent fluid parameters from a pressure law.
CnsParams make_cns_params(double mu, double lambda, double rho_bar,
                          const PressureLaw& law = {});

/// Perturbation state (rho - rho_bar, u); fields are kept spectral and
/// dealiased. Physical fields must stay real and the density must satisfy
/// rho + rho_bar >= rho_bar / 2 pointwise.
struct CnsState {
  SpectralField rho;
  std::array<SpectralField, 3> u;
  CnsParams params;
  PressureLaw pressure;
  double time = 0.0;

  CnsState() = default;
  CnsState(const GridSpec& grid, const CnsParams& prm, const PressureLaw& law = {});
};

/// Pointwise h = rho / (rho + rho_bar), f = p'(rho + rho_bar)/(rho + rho_bar)
/// - p'(rho_bar)/rho_bar, evaluated in physical space.
/// Throws (naming the violating cell count) if the density floor fails.
std::pair<SpectralField, SpectralField> nonlinear_coefficients(const SpectralField& rho,
                                                               double rho_bar,
                                                               const PressureLaw& law);

struct CnsTendency {
  SpectralField drho;
  std::array<SpectralField, 3> du;
};

/// Full right-hand side of the perturbation system: conservative continuity
/// -rho_bar div u - div(rho u) and the momentum equation with 2/3-dealiased
/// physical-space products.
CnsTendency rhs(const CnsState& state);

/// Advance by one step of integrating-factor RK4; the stiff viscous term is
/// treated exactly per mode, everything else explicitly.
CnsState step(const CnsState& state, double dt);

/// Largest stable dt from the acoustic speed, max |u| and the grid cutoff.
double cfl_dt(const CnsState& state, double cfl_number);

struct EnergyReport {
  int ell = 0;
  int m = 0;
  double beta = 0.0;
  double E = 0.0;            // energy functional value
  double D = 0.0;            // dissipation bracket
  double cross = 0.0;        // sum_k int grad^k u . grad grad^k rho
  double sobolev_sum = 0.0;  // sum_k gamma ||grad^k rho||^2 + ||grad^k u||^2
};

/// E = sobolev_sum(ell..m) + beta * cross(ell..m-1),
/// D = sum_{ell+1..m} ||grad^k rho||^2 + sum_{ell+1..m+1} ||grad^k u||^2.
EnergyReport energy_functional(const CnsState& state, int ell, int m, double beta);

/// (||Lambda^{-s} rho||, ||Lambda^{-s} u||), s in (0, 3/2), mean-zero state.
std::pair<double, double> negative_norm_pair(const CnsState& state, double s);

/// Mean of rho over the box (conserved exactly by the conservative form).
double mass(const CnsState& state);

struct CnsExperimentSpec {
  GridSpec grid{32, 1.0};
  CnsParams params{1.0, 0.0, 1.0, 1.4};
  PressureLaw pressure{};
  double amplitude = 1e-2;  // target H^3 size of the initial data
  std::uint64_t seed = 1;
  double T = 10.0;
  double cfl = 0.5;
  double beta = 0.1;
  std::vector<std::pair<int, int>> energy_levels = {{0, 3}, {1, 3}};
  std::vector<double> s_list = {0.5, 1.0};
  int sample_stride = 10;
  double monotonicity_tol = 1e-8;  // relative to E(0), per step
};

struct CnsRunResult {
  std::map<std::string, NormTrajectory> trajectories;
  std::vector<std::string> events;  // structured invariant-violation records
  double mass_drift = 0.0;
  double max_energy_step_increase = 0.0;  // worst per-step dE / E(0)
  bool density_floor_ok = true;
  int steps = 0;
  double dt = 0.0;
};

/// Random small-amplitude band-limited initial data.
CnsState make_random_state(const CnsExperimentSpec& spec);

/// Integrate to T, monitoring the energy functionals, negative norms and
/// mass; monotonicity violations beyond tolerance are recorded as events.
CnsRunResult run_cns_experiment(const CnsExperimentSpec& spec);

}  // namespace sobodecay
