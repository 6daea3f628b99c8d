#pragma once

#include <array>
#include <complex>
#include <functional>
#include <stdexcept>

namespace sobodecay {

/// Radial spectral density rho(r) = |u0_hat|^2(|xi| = r) of radially
/// symmetric whole-space data, with rho(r) ~ r^{2 sigma} as r -> 0.
struct RadialProfile {
  std::function<double(double)> density;
  double r_max = 0.0;           // support / effective-decay hint
  double low_freq_exponent = 0.0;  // sigma

  RadialProfile() = default;
  RadialProfile(std::function<double(double)> d, double rmax, double sigma)
      : density(std::move(d)), r_max(rmax), low_freq_exponent(sigma) {
    if (!(rmax > 0.0)) throw std::invalid_argument("RadialProfile: r_max must be positive");
    if (!(sigma > -1.5)) throw std::invalid_argument("RadialProfile: sigma must exceed -3/2");
  }

  /// rho(r) = r^{2 sigma} e^{-alpha r^2}.
  static RadialProfile power_gaussian(double sigma, double alpha = 1.0);
  /// rho(r) = e^{-alpha r^2}.
  static RadialProfile gaussian(double alpha = 1.0);
  /// rho(r) = r^{2 sigma} on [0,1], zero beyond.
  static RadialProfile power_indicator(double sigma);
};

/// Fluid background for the compressible perturbation system.
struct CnsParams {
  double mu = 1.0;       // shear viscosity, > 0
  double lambda = 0.0;   // second viscosity, lambda + 2 mu / 3 >= 0
  double rho_bar = 1.0;  // background density, > 0
  double p_prime = 1.4;  // p'(rho_bar), > 0

  CnsParams() = default;
  CnsParams(double mu_, double lambda_, double rho_bar_, double p_prime_);

  double mu_bar() const { return mu / rho_bar; }
  double lambda_bar() const { return lambda / rho_bar; }
  double gamma() const { return p_prime / (rho_bar * rho_bar); }
  double sound_speed() const;  // sqrt(p'(rho_bar)) = sqrt(gamma) * rho_bar
};

/// || Lambda^l e^{t Delta} u0 ||_{L^2} for radial data:
/// (4 pi int r^{2l+2} rho(r) e^{-8 pi^2 r^2 t} dr)^{1/2}, adaptive
/// quadrature to 1e-10 relative.
double heat_norm_exact(const RadialProfile& p, double ell, double t);

/// Exact solution of the linearized perturbation system for one Fourier
/// mode xi: state = (rho_hat, u_hat) in C^4.
std::array<std::complex<double>, 4> linear_cns_mode_evolve(
    const std::array<double, 3>& xi, const std::array<std::complex<double>, 4>& state,
    double t, const CnsParams& params);

/// Energy weights assigning fractions of the radial density to the density,
/// solenoidal-velocity and longitudinal-velocity components.
struct EnergyPartition {
  double w_rho = 1.0;
  double w_solenoidal = 1.0;
  double w_longitudinal = 1.0;
};

/// Energy-weighted H^l norm of the linear semigroup applied to radially
/// distributed data: (4 pi int r^{2l+2} [gamma |rho_hat|^2 + |u_hat|^2](r,t) dr)^{1/2}
/// with per-shell amplitudes set by the partition.
double linear_cns_norm_exact(const RadialProfile& p, const EnergyPartition& partition,
                             double ell, double t, const CnsParams& params);

/// Mode energy gamma |rho_hat|^2 + |u_hat|^2.
double mode_energy(const std::array<std::complex<double>, 4>& state, const CnsParams& params);

/// Mode dissipation 8 pi^2 (mu_bar |xi|^2 |u_hat|^2 + (mu_bar+lambda_bar) |xi.u_hat|^2),
/// the negated time derivative of the mode energy under the linear flow.
double mode_dissipation(const std::array<double, 3>& xi,
                        const std::array<std::complex<double>, 4>& state,
                        const CnsParams& params);

}  // namespace sobodecay
