#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sobodecay/spectral.hpp"

namespace sobodecay {

/// Band-limited random trial fields: i.i.d. phases, |coeff| ~ |k|^slope on
/// the integer shells k_min <= |k| <= k_max, Hermitian-symmetric, mean zero.
struct TrialSpec {
  std::uint64_t seed = 0;
  int k_min = 1;
  int k_max = 8;
  double spectrum_slope = 0.0;
  int count = 1;
};

SpectralField random_field(const TrialSpec& spec, const GridSpec& grid);

struct RatioReport {
  std::string lemma_id;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  std::uint64_t argmax_seed = 0;
  std::vector<int> resolutions_tested;
};

/// Gagliardo-Nirenberg ratio ||grad^a f||_p / (||grad^m f||^{1-th} ||grad^l f||^th);
/// p may be INFINITY. th is solved from the scaling identity and must land in [0,1].
double check_gn(const SpectralField& f, double p, double alpha, double m, double ell);

/// ||grad^l f|| / (||grad^{l+1} f||^{1-th} ||Lambda^{-s} f||^th), th = 1/(l+1+s).
/// Holder in Fourier with constant exactly 1; mean-zero input required.
double check_neg_interp(const SpectralField& f, double ell, double s);

/// Riesz potential ratio ||Lambda^{-s} f||_{L^q} / ||f||_{L^p}, 1/q + s/3 = 1/p.
double check_riesz(const SpectralField& f, double s, double p, double q);

/// Commutator ratio max over order-m multi-indices of
/// ||[grad^m, f] g|| / (||grad f||_inf ||grad^{m-1} g|| + ||grad^m f|| ||g||_inf).
double check_commutator(const SpectralField& f, const SpectralField& g, int m);

/// Mixed-norm pair (||F||_{L^q_z L^p_y}, ||F||_{L^p_y L^q_z}) on a discrete
/// product grid; F is stored row-major as F[iy * nz + iz]. p <= q required,
/// INFINITY accepted; Minkowski gives lhs <= rhs.
std::pair<double, double> check_minkowski(const std::vector<double>& F,
                                          const std::vector<double>& wy,
                                          const std::vector<double>& wz, double p, double q);

RatioReport sweep_neg_interp(const TrialSpec& spec, const GridSpec& grid, double ell, double s);
RatioReport sweep_gn(const TrialSpec& spec, const GridSpec& grid, double p, double alpha,
                     double m, double ell);
RatioReport sweep_riesz(const TrialSpec& spec, const GridSpec& grid, double s, double p,
                        double q);
RatioReport sweep_commutator(const TrialSpec& spec, const GridSpec& grid, int m);

}  // namespace sobodecay
