#include "sobodecay/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace sobodecay {

MultiplierSpec MultiplierSpec::lambda_power(double s) {
  MultiplierSpec m{MultiplierKind::lambda_power, s};
  m.zero_mode = s < 0.0 ? ZeroModeRule::annihilate : ZeroModeRule::preserve;
  return m;
}

MultiplierSpec MultiplierSpec::heat_semigroup(double t) {
  return MultiplierSpec{MultiplierKind::heat_semigroup, t};
}

MultiplierSpec MultiplierSpec::laplacian() {
  return MultiplierSpec{MultiplierKind::laplacian, 0.0};
}

namespace {

// FFTW plans cached per (n, sign). Plan creation is not thread-safe.
struct PlanCache {
  std::mutex mu;
  std::map<std::pair<int, int>, fftw_plan> plans;

  fftw_plan get(int n, int sign, fftw_complex* buf) {
    std::scoped_lock lock(mu);
    auto key = std::make_pair(n, sign);
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;
    // FFTW_ESTIMATE keeps planning deterministic and leaves buf untouched.
    fftw_plan p = fftw_plan_dft_3d(n, n, n, buf, buf, sign, FFTW_ESTIMATE);
    plans.emplace(key, p);
    return p;
  }
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

}  // namespace

SpectralField transform(const SpectralField& f, Space target) {
  if (f.space == target)
    throw std::invalid_argument("transform: field already in requested space");
  SpectralField out(f.grid, target);
  out.data = f.data;
  auto* buf = reinterpret_cast<fftw_complex*>(out.data.data());
  const int sign = target == Space::spectral ? FFTW_FORWARD : FFTW_BACKWARD;
  fftw_plan p = plan_cache().get(f.grid.n, sign, buf);
  fftw_execute_dft(p, buf, buf);
  if (target == Space::spectral) {
    const double scale = 1.0 / static_cast<double>(f.grid.size());
    for (auto& c : out.data) c *= scale;
  }
  return out;
}

namespace {

SpectralField to_spectral(const SpectralField& f) {
  return f.space == Space::spectral ? f : transform(f, Space::spectral);
}

SpectralField to_physical(const SpectralField& f) {
  return f.space == Space::physical ? f : transform(f, Space::physical);
}

}  // namespace

SpectralField apply_multiplier(const SpectralField& f, const MultiplierSpec& m) {
  if (m.kind == MultiplierKind::lambda_power && m.param < 0.0 &&
      m.zero_mode == ZeroModeRule::preserve)
    throw std::invalid_argument(
        "apply_multiplier: lambda_power(s<0) cannot preserve the zero mode");

  SpectralField g = to_spectral(f);
  const GridSpec& grid = g.grid;
  const double inv_L = 1.0 / grid.L;
  static constexpr double four_pi_sq = 4.0 * M_PI * M_PI;

  for (int i = 0; i < grid.n; ++i) {
    const double x1 = grid.freq(i) * inv_L;
    for (int j = 0; j < grid.n; ++j) {
      const double x2 = grid.freq(j) * inv_L;
      for (int k = 0; k < grid.n; ++k) {
        const double x3 = grid.freq(k) * inv_L;
        const double xi2 = x1 * x1 + x2 * x2 + x3 * x3;
        auto& c = g.at(i, j, k);
        if (xi2 == 0.0) {
          if (m.zero_mode == ZeroModeRule::annihilate) c = 0.0;
          continue;
        }
        switch (m.kind) {
          case MultiplierKind::lambda_power:
            c *= std::pow(std::sqrt(xi2), m.param);
            break;
          case MultiplierKind::heat_semigroup:
            c *= std::exp(-four_pi_sq * xi2 * m.param);
            break;
          case MultiplierKind::laplacian:
            c *= -four_pi_sq * xi2;
            break;
          case MultiplierKind::projection_solenoidal:
          case MultiplierKind::projection_gradient: {
            const double xi[3] = {x1, x2, x3};
            double sym = xi[m.component_out] * xi[m.component_in] / xi2;
            if (m.kind == MultiplierKind::projection_solenoidal)
              sym = (m.component_out == m.component_in ? 1.0 : 0.0) - sym;
            c *= sym;
            break;
          }
        }
      }
    }
  }
  return g;
}

double sobolev_norm(const SpectralField& f, double s) {
  SpectralField g = to_spectral(f);
  const GridSpec& grid = g.grid;
  const double inv_L = 1.0 / grid.L;
  double sum = 0.0;
  for (int i = 0; i < grid.n; ++i) {
    const double x1 = grid.freq(i) * inv_L;
    for (int j = 0; j < grid.n; ++j) {
      const double x2 = grid.freq(j) * inv_L;
      for (int k = 0; k < grid.n; ++k) {
        const double x3 = grid.freq(k) * inv_L;
        const double xi2 = x1 * x1 + x2 * x2 + x3 * x3;
        const double a2 = std::norm(g.at(i, j, k));
        if (xi2 == 0.0) {
          if (s == 0.0) sum += a2;
          // |xi|^{2s} weight: 0 for s > 0; excluded for s < 0.
          continue;
        }
        sum += (s == 0.0 ? a2 : std::pow(xi2, s) * a2);
      }
    }
  }
  return std::sqrt(sum * grid.volume());
}

double gradient_norm(const SpectralField& f, int ell) {
  if (ell < 0) throw std::invalid_argument("gradient_norm: ell must be >= 0");
  return sobolev_norm(f, static_cast<double>(ell));
}

double lp_norm(const SpectralField& f, double p) {
  SpectralField g = to_physical(f);
  if (p == p_infinity || std::isinf(p)) {
    double m = 0.0;
    for (const auto& c : g.data) m = std::max(m, std::abs(c));
    return m;
  }
  if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
  double sum = 0.0;
  for (const auto& c : g.data) sum += std::pow(std::abs(c), p);
  return std::pow(sum * g.grid.cell_volume(), 1.0 / p);
}

namespace {

SpectralField axis_multiplier(const SpectralField& f, int axis, double scale) {
  if (axis < 0 || axis > 2) throw std::invalid_argument("derivative: axis out of range");
  SpectralField g = to_spectral(f);
  const GridSpec& grid = g.grid;
  const double inv_L = 1.0 / grid.L;
  for (int i = 0; i < grid.n; ++i)
    for (int j = 0; j < grid.n; ++j)
      for (int k = 0; k < grid.n; ++k) {
        const int kk[3] = {grid.freq(i), grid.freq(j), grid.freq(k)};
        g.at(i, j, k) *= std::complex<double>(0.0, scale * kk[axis] * inv_L);
      }
  return g;
}

}  // namespace

SpectralField derivative(const SpectralField& f, int axis) {
  return axis_multiplier(f, axis, 2.0 * M_PI);
}

SpectralField lambda_derivative(const SpectralField& f, int axis) {
  return axis_multiplier(f, axis, 1.0);
}

bool dealias_keeps(const GridSpec& g, int kx, int ky, int kz) {
  const int cut = (g.n - 1) / 3;  // keep |k| <= cut (strict 2/3 rule)
  return std::abs(kx) <= cut && std::abs(ky) <= cut && std::abs(kz) <= cut;
}

void dealias(SpectralField& f) {
  if (f.space != Space::spectral)
    throw std::invalid_argument("dealias: spectral field required");
  const GridSpec& grid = f.grid;
  for (int i = 0; i < grid.n; ++i)
    for (int j = 0; j < grid.n; ++j)
      for (int k = 0; k < grid.n; ++k)
        if (!dealias_keeps(grid, grid.freq(i), grid.freq(j), grid.freq(k)))
          f.at(i, j, k) = 0.0;
}

void remove_mean(SpectralField& f) {
  if (f.space != Space::spectral)
    throw std::invalid_argument("remove_mean: spectral field required");
  f.at(0, 0, 0) = 0.0;
}

double inner_product(const SpectralField& f, const SpectralField& g) {
  SpectralField a = to_spectral(f);
  SpectralField b = to_spectral(g);
  if (!(a.grid == b.grid)) throw std::invalid_argument("inner_product: grid mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i)
    sum += std::real(std::conj(a.data[i]) * b.data[i]);
  return sum * a.grid.volume();
}

}  // namespace sobodecay
