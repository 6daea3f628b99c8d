#pragma once

#include <complex>
#include <vector>

#include "sobodecay/grid.hpp"

namespace sobodecay {

enum class Space { physical, spectral };

/// Complex scalar field on a periodic box, stored either as grid samples
/// (physical) or Fourier coefficients (spectral). The transform pair is
///   chat(k) = n^-3 sum_j f(x_j) e^{-2 pi i j.k/n},
///   f(x_j)  = sum_k chat(k) e^{+2 pi i j.k/n},
/// so a plane wave e^{2 pi i x.xi/L} has a single unit coefficient.
struct SpectralField {
  GridSpec grid;
  Space space = Space::physical;
  std::vector<std::complex<double>> data;

  SpectralField() = default;
  SpectralField(const GridSpec& g, Space s)
      : grid(g), space(s), data(g.size(), {0.0, 0.0}) {}

  std::complex<double>& at(int i, int j, int k) {
    return data[(static_cast<std::size_t>(i) * grid.n + j) * grid.n + k];
  }
  const std::complex<double>& at(int i, int j, int k) const {
    return data[(static_cast<std::size_t>(i) * grid.n + j) * grid.n + k];
  }
  /// Spectral coefficient addressed by signed integer frequencies.
  std::complex<double>& coeff(int kx, int ky, int kz) {
    return at(grid.index_of(kx), grid.index_of(ky), grid.index_of(kz));
  }
  const std::complex<double>& coeff(int kx, int ky, int kz) const {
    return at(grid.index_of(kx), grid.index_of(ky), grid.index_of(kz));
  }
};

enum class MultiplierKind {
  lambda_power,
  heat_semigroup,
  laplacian,
  projection_solenoidal,
  projection_gradient,
};

enum class ZeroModeRule { annihilate, preserve };

/// Fourier multiplier specification. lambda_power(s) has symbol |xi|^s,
/// heat_semigroup(t) has e^{-4 pi^2 |xi|^2 t}, laplacian -4 pi^2 |xi|^2.
struct MultiplierSpec {
  MultiplierKind kind;
  double param = 0.0;  // s for lambda_power, t for heat_semigroup
  int component_in = 0;   // vector-component indices for the projections
  int component_out = 0;
  ZeroModeRule zero_mode = ZeroModeRule::preserve;

  static MultiplierSpec lambda_power(double s);
  static MultiplierSpec heat_semigroup(double t);
  static MultiplierSpec laplacian();
};

/// Discrete Fourier transform (forward: physical -> spectral).
SpectralField transform(const SpectralField& f, Space target);

/// Apply a multiplier; physical input is auto-transformed, output is spectral.
SpectralField apply_multiplier(const SpectralField& f, const MultiplierSpec& m);

/// Homogeneous Sobolev norm (L^3 sum_xi |xi|^{2s} |chat|^2)^{1/2}; the zero
/// mode is excluded whenever s < 0 (and must vanish, see sobodecay docs).
double sobolev_norm(const SpectralField& f, double s);

/// ||grad^l f||_{L^2}, computed spectrally as sobolev_norm(f, l).
double gradient_norm(const SpectralField& f, int ell);

/// Discrete L^p norm of the physical-space field; p = inf -> max |f|.
double lp_norm(const SpectralField& f, double p);
inline constexpr double p_infinity = -1.0;  // sentinel accepted by lp_norm

/// Partial derivative along axis (0..2): multiplier 2 pi i xi_axis.
SpectralField derivative(const SpectralField& f, int axis);

/// Lambda-scaled partial derivative: multiplier i xi_axis, so that the
/// three components sum in quadrature to sobolev_norm(f, 1).
SpectralField lambda_derivative(const SpectralField& f, int axis);

/// Zero all modes with any |k_j| > floor((n-1)/3) (2/3 rule).
void dealias(SpectralField& f);
bool dealias_keeps(const GridSpec& g, int kx, int ky, int kz);

/// Zero the mean (xi = 0) mode.
void remove_mean(SpectralField& f);

/// L^2 inner product Re(L^3 sum conj(fhat) ghat) of two spectral fields.
double inner_product(const SpectralField& f, const SpectralField& g);

}  // namespace sobodecay
