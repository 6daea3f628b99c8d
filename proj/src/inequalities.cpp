#include "sobodecay/inequalities.hpp"

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>

namespace sobodecay {

SpectralField random_field(const TrialSpec& spec, const GridSpec& grid) {
  if (spec.k_min < 1 || spec.k_min > spec.k_max)
    throw std::invalid_argument("random_field: need 1 <= k_min <= k_max");
  if (spec.k_max > grid.n / 3)
    throw std::invalid_argument("random_field: band exceeds the dealias-safe range n/3");

  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
  SpectralField f(grid, Space::spectral);
  bool any = false;
  const int K = spec.k_max;
  for (int kx = -K; kx <= K; ++kx)
    for (int ky = -K; ky <= K; ++ky)
      for (int kz = -K; kz <= K; ++kz) {
        // one representative per conjugate pair
        if (kx < 0 || (kx == 0 && ky < 0) || (kx == 0 && ky == 0 && kz <= 0)) continue;
        const double kk = std::sqrt(double(kx * kx + ky * ky + kz * kz));
        if (kk < spec.k_min || kk > spec.k_max) continue;
        const double mag = std::pow(kk, spec.spectrum_slope);
        const double ph = phase(rng);
        const std::complex<double> z = std::polar(mag, ph);
        f.coeff(kx, ky, kz) = z;
        f.coeff(-kx, -ky, -kz) = std::conj(z);
        any = true;
      }
  if (!any) throw std::invalid_argument("random_field: band contains no lattice shells");
  return f;
}

double check_gn(const SpectralField& f, double p, double alpha, double m, double ell) {
  if (!(m >= 0.0 && alpha >= 0.0 && m <= ell && alpha <= ell))
    throw std::invalid_argument("check_gn: need 0 <= m, alpha <= ell");
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  double theta;
  if (m == ell) {
    // degenerate family: identity must already hold, theta immaterial
    if (std::abs(inv_p - alpha / 3.0 - (0.5 - m / 3.0)) > 1e-12)
      throw std::invalid_argument("check_gn: scaling identity fails at m == ell");
    theta = 0.0;
  } else {
    theta = 3.0 * (inv_p - alpha / 3.0 - 0.5 + m / 3.0) / (m - ell);
  }
  if (theta < -1e-12 || theta > 1.0 + 1e-12)
    throw std::invalid_argument(
        "check_gn: theta outside [0,1]; scaling identity 1/p - a/3 = "
        "(1/2 - m/3)(1-th) + (1/2 - l/3)th not satisfiable");

  SpectralField fa = apply_multiplier(f, MultiplierSpec::lambda_power(alpha));
  const double lhs = lp_norm(fa, std::isinf(p) ? p_infinity : p);
  const double denom =
      std::pow(sobolev_norm(f, m), 1.0 - theta) * std::pow(sobolev_norm(f, ell), theta);
  if (!(denom > 0.0)) throw std::invalid_argument("check_gn: zero field");
  return lhs / denom;
}

double check_neg_interp(const SpectralField& f, double ell, double s) {
  if (ell < 0.0 || s < 0.0) throw std::invalid_argument("check_neg_interp: need ell, s >= 0");
  SpectralField g = f.space == Space::spectral ? f : transform(f, Space::spectral);
  if (std::abs(g.at(0, 0, 0)) > 1e-14 * (1.0 + sobolev_norm(g, 0.0)))
    throw std::invalid_argument("check_neg_interp: mean-zero input required");
  const double theta = 1.0 / (ell + 1.0 + s);
  const double denom = std::pow(sobolev_norm(g, ell + 1.0), 1.0 - theta) *
                       std::pow(sobolev_norm(g, -s), theta);
  if (!(denom > 0.0)) throw std::invalid_argument("check_neg_interp: zero field");
  return sobolev_norm(g, ell) / denom;
}

double check_riesz(const SpectralField& f, double s, double p, double q) {
  if (!(s > 0.0 && s < 3.0)) throw std::invalid_argument("check_riesz: need 0 < s < 3");
  if (!(1.0 < p && p < q && std::isfinite(q)))
    throw std::invalid_argument("check_riesz: need 1 < p < q < inf");
  if (std::abs(1.0 / q + s / 3.0 - 1.0 / p) > 1e-12)
    throw std::invalid_argument("check_riesz: exponent identity 1/q + s/3 = 1/p violated");
  SpectralField g = f.space == Space::spectral ? f : transform(f, Space::spectral);
  if (std::abs(g.at(0, 0, 0)) > 1e-14 * (1.0 + sobolev_norm(g, 0.0)))
    throw std::invalid_argument("check_riesz: mean-zero input required");
  SpectralField riesz = apply_multiplier(g, MultiplierSpec::lambda_power(-s));
  const double denom = lp_norm(g, p);
  if (!(denom > 0.0)) throw std::invalid_argument("check_riesz: zero field");
  return lp_norm(riesz, q) / denom;
}

namespace {

SpectralField dealiased_product(const SpectralField& a, const SpectralField& b) {
  SpectralField ap = a.space == Space::physical ? a : transform(a, Space::physical);
  SpectralField bp = b.space == Space::physical ? b : transform(b, Space::physical);
  SpectralField prod(ap.grid, Space::physical);
  for (std::size_t i = 0; i < prod.data.size(); ++i) prod.data[i] = ap.data[i] * bp.data[i];
  SpectralField out = transform(prod, Space::spectral);
  dealias(out);
  return out;
}

SpectralField multi_index_derivative(const SpectralField& f, const std::array<int, 3>& idx) {
  SpectralField g = f.space == Space::spectral ? f : transform(f, Space::spectral);
  for (int axis = 0; axis < 3; ++axis)
    for (int r = 0; r < idx[axis]; ++r) g = lambda_derivative(g, axis);
  return g;
}

double grad_linf(const SpectralField& f) {
  std::array<SpectralField, 3> d = {lambda_derivative(f, 0), lambda_derivative(f, 1),
                                    lambda_derivative(f, 2)};
  std::array<SpectralField, 3> dp = {transform(d[0], Space::physical),
                                     transform(d[1], Space::physical),
                                     transform(d[2], Space::physical)};
  double m = 0.0;
  for (std::size_t i = 0; i < dp[0].data.size(); ++i) {
    const double g2 =
        std::norm(dp[0].data[i]) + std::norm(dp[1].data[i]) + std::norm(dp[2].data[i]);
    m = std::max(m, g2);
  }
  return std::sqrt(m);
}

}  // namespace

double check_commutator(const SpectralField& f, const SpectralField& g, int m) {
  if (m < 1) throw std::invalid_argument("check_commutator: m >= 1 required");
  const double rhs = grad_linf(f) * sobolev_norm(g, m - 1.0) +
                     sobolev_norm(f, m) * lp_norm(g, p_infinity);
  double worst = 0.0;
  for (int i = 0; i <= m; ++i)
    for (int j = 0; i + j <= m; ++j) {
      const std::array<int, 3> idx = {i, j, m - i - j};
      SpectralField lhs_field = multi_index_derivative(dealiased_product(f, g), idx);
      SpectralField fg_m = dealiased_product(f, multi_index_derivative(g, idx));
      for (std::size_t k = 0; k < lhs_field.data.size(); ++k)
        lhs_field.data[k] -= fg_m.data[k];
      const double lhs = sobolev_norm(lhs_field, 0.0);
      worst = std::max(worst, rhs > 0.0 ? lhs / rhs : 0.0);
    }
  return worst;
}

namespace {

double weighted_lp(const std::vector<double>& vals, const std::vector<double>& w, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : vals) m = std::max(m, std::abs(v));
    return m;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < vals.size(); ++i) sum += w[i] * std::pow(std::abs(vals[i]), p);
  return std::pow(sum, 1.0 / p);
}

}  // namespace

std::pair<double, double> check_minkowski(const std::vector<double>& F,
                                          const std::vector<double>& wy,
                                          const std::vector<double>& wz, double p, double q) {
  if (!(p >= 1.0) || (!std::isinf(q) && q < p))
    throw std::invalid_argument("check_minkowski: need 1 <= p <= q");
  const std::size_t ny = wy.size(), nz = wz.size();
  if (F.size() != ny * nz) throw std::invalid_argument("check_minkowski: size mismatch");

  // lhs: inner L^p over y, outer L^q over z
  std::vector<double> inner_y(nz);
  for (std::size_t iz = 0; iz < nz; ++iz) {
    std::vector<double> col(ny);
    for (std::size_t iy = 0; iy < ny; ++iy) col[iy] = F[iy * nz + iz];
    inner_y[iz] = weighted_lp(col, wy, p);
  }
  const double lhs = weighted_lp(inner_y, wz, q);

  // rhs: inner L^q over z, outer L^p over y
  std::vector<double> inner_z(ny);
  for (std::size_t iy = 0; iy < ny; ++iy) {
    std::vector<double> row(F.begin() + iy * nz, F.begin() + (iy + 1) * nz);
    inner_z[iy] = weighted_lp(row, wz, q);
  }
  const double rhs = weighted_lp(inner_z, wy, p);
  return {lhs, rhs};
}

namespace {

template <typename Fn>
RatioReport sweep(const std::string& lemma_id, const TrialSpec& spec, const GridSpec& grid,
                  Fn&& ratio_of) {
  RatioReport report;
  report.lemma_id = lemma_id;
  report.resolutions_tested = {grid.n};
  double sum = 0.0;
  for (int i = 0; i < spec.count; ++i) {
    TrialSpec one = spec;
    one.seed = spec.seed + static_cast<std::uint64_t>(i);
    const double r = ratio_of(random_field(one, grid), one.seed);
    sum += r;
    if (r > report.max_ratio) {
      report.max_ratio = r;
      report.argmax_seed = one.seed;
    }
  }
  report.mean_ratio = spec.count > 0 ? sum / spec.count : 0.0;
  return report;
}

}  // namespace

RatioReport sweep_neg_interp(const TrialSpec& spec, const GridSpec& grid, double ell, double s) {
  return sweep("A.5", spec, grid,
               [&](const SpectralField& f, std::uint64_t) { return check_neg_interp(f, ell, s); });
}

RatioReport sweep_gn(const TrialSpec& spec, const GridSpec& grid, double p, double alpha,
                     double m, double ell) {
  return sweep("A.1", spec, grid,
               [&](const SpectralField& f, std::uint64_t) { return check_gn(f, p, alpha, m, ell); });
}

RatioReport sweep_riesz(const TrialSpec& spec, const GridSpec& grid, double s, double p,
                        double q) {
  return sweep("A.6", spec, grid,
               [&](const SpectralField& f, std::uint64_t) { return check_riesz(f, s, p, q); });
}

RatioReport sweep_commutator(const TrialSpec& spec, const GridSpec& grid, int m) {
  return sweep("A.2", spec, grid, [&](const SpectralField& f, std::uint64_t seed) {
    TrialSpec other = spec;
    other.seed = seed ^ 0x9e3779b97f4a7c15ull;
    return check_commutator(f, random_field(other, grid), m);
  });
}

}  // namespace sobodecay
