#include "sobodecay/oracle.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <cmath>
#include <memory>

namespace sobodecay {

RadialProfile RadialProfile::power_gaussian(double sigma, double alpha) {
  return RadialProfile(
      [sigma, alpha](double r) {
        return (sigma == 0.0 ? 1.0 : std::pow(r, 2.0 * sigma)) * std::exp(-alpha * r * r);
      },
      std::sqrt(80.0 / alpha), sigma);
}

RadialProfile RadialProfile::gaussian(double alpha) { return power_gaussian(0.0, alpha); }

RadialProfile RadialProfile::power_indicator(double sigma) {
  return RadialProfile(
      [sigma](double r) {
        return r <= 1.0 ? (sigma == 0.0 ? 1.0 : std::pow(r, 2.0 * sigma)) : 0.0;
      },
      1.0, sigma);
}

CnsParams::CnsParams(double mu_, double lambda_, double rho_bar_, double p_prime_)
    : mu(mu_), lambda(lambda_), rho_bar(rho_bar_), p_prime(p_prime_) {
  if (!(mu > 0.0)) throw std::invalid_argument("CnsParams: mu must be positive");
  if (lambda + 2.0 * mu / 3.0 < 0.0)
    throw std::invalid_argument("CnsParams: lambda + 2 mu / 3 must be >= 0");
  if (!(rho_bar > 0.0)) throw std::invalid_argument("CnsParams: rho_bar must be positive");
  if (!(p_prime > 0.0)) throw std::invalid_argument("CnsParams: p'(rho_bar) must be positive");
}

double CnsParams::sound_speed() const { return std::sqrt(p_prime); }

namespace {

constexpr double kQuadRelTol = 1e-10;
constexpr std::size_t kWorkspaceSize = 4096;

struct GslQuiet {
  GslQuiet() { gsl_set_error_handler_off(); }
};

double integrate(const std::function<double(double)>& f, double a, double b,
                 double epsabs = 0.0) {
  static GslQuiet quiet;
  struct Ctx {
    const std::function<double(double)>* f;
  } ctx{&f};
  gsl_function gf;
  gf.function = [](double x, void* p) { return (*static_cast<Ctx*>(p)->f)(x); };
  gf.params = &ctx;
  std::unique_ptr<gsl_integration_workspace, decltype(&gsl_integration_workspace_free)> ws(
      gsl_integration_workspace_alloc(kWorkspaceSize), gsl_integration_workspace_free);
  double result = 0.0, abserr = 0.0;
  int status = gsl_integration_qags(&gf, a, b, epsabs, kQuadRelTol, kWorkspaceSize, ws.get(),
                                    &result, &abserr);
  if (status == GSL_EROUND || status == GSL_ESING) {
    // retry at a looser (still far sub-oracle) tolerance before failing
    status = gsl_integration_qags(&gf, a, b, epsabs, 1e-8, kWorkspaceSize, ws.get(), &result,
                                  &abserr);
  }
  if (status != GSL_SUCCESS &&
      std::abs(abserr) > 1e-8 * std::abs(result) + epsabs + 1e-300)
    throw std::runtime_error("radial quadrature failed to converge");
  return result;
}

/// Quadrature of r^{2l+2} weight(r) over [0, r_max], splitting off the
/// diffusive concentration scale so the adaptive rule resolves large t.
double radial_quadrature(const RadialProfile& p, double ell, double t,
                         const std::function<double(double)>& weight) {
  if (!(ell > -1.5)) throw std::invalid_argument("radial norm: ell must exceed -3/2");
  if (ell + p.low_freq_exponent <= -1.5)
    throw std::invalid_argument(
        "radial norm: integral diverges at r=0 (ell + sigma <= -3/2)");
  auto integrand = [&](double r) {
    if (r <= 0.0) return 0.0;
    return std::pow(r, 2.0 * ell + 2.0) * p.density(r) * weight(r);
  };
  const double r_break =
      std::min(p.r_max, std::sqrt(60.0 / (1.0 + 8.0 * M_PI * M_PI * t)));
  double sum = integrate(integrand, 0.0, r_break);
  // beyond the diffusive scale the integrand is exponentially negligible;
  // resolve it only to an absolute tolerance far below the head contribution
  if (r_break < p.r_max)
    sum += integrate(integrand, r_break, p.r_max, 1e-13 * std::abs(sum) + 1e-300);
  return sum;
}

}  // namespace

double heat_norm_exact(const RadialProfile& p, double ell, double t) {
  if (t < 0.0) throw std::invalid_argument("heat_norm_exact: t must be >= 0");
  const double w = 8.0 * M_PI * M_PI * t;
  double integral = radial_quadrature(p, ell, t,
                                      [w](double r) { return std::exp(-w * r * r); });
  return std::sqrt(4.0 * M_PI * integral);
}

namespace {

using C = std::complex<double>;
using Mat2 = std::array<std::array<C, 2>, 2>;

/// exp(t M) for the 2x2 acoustic block, closed-form eigenvalues with a
/// Jordan branch at the viscous-acoustic degeneracy.
Mat2 acoustic_propagator(double r, double t, const CnsParams& prm) {
  const double nu = 2.0 * prm.mu_bar() + prm.lambda_bar();
  const double two_pi_r = 2.0 * M_PI * r;
  const C m01(0.0, -two_pi_r * prm.rho_bar);
  const C m10(0.0, -two_pi_r * prm.gamma() * prm.rho_bar);
  const C m11(-4.0 * M_PI * M_PI * nu * r * r, 0.0);
  const C half_tr = 0.5 * m11;
  const C disc = half_tr * half_tr - (-m01 * m10);  // (tr/2)^2 - det, det = -m01 m10
  const double scale = std::abs(half_tr * half_tr) + std::abs(m01 * m10);
  Mat2 E;
  if (std::abs(disc) <= 1e-12 * scale) {
    // double eigenvalue: exp(tM) = e^{lambda t} (I + t (M - lambda I))
    const C e = std::exp(half_tr * t);
    E[0][0] = e * (1.0 + t * (0.0 - half_tr));
    E[0][1] = e * t * m01;
    E[1][0] = e * t * m10;
    E[1][1] = e * (1.0 + t * (m11 - half_tr));
  } else {
    const C root = std::sqrt(disc);
    const C l1 = half_tr + root, l2 = half_tr - root;
    const C e1 = std::exp(l1 * t), e2 = std::exp(l2 * t);
    const C d = l1 - l2;
    // exp(tM) = (e1 (M - l2 I) - e2 (M - l1 I)) / (l1 - l2)
    E[0][0] = (e1 * (0.0 - l2) - e2 * (0.0 - l1)) / d;
    E[0][1] = (e1 - e2) * m01 / d;
    E[1][0] = (e1 - e2) * m10 / d;
    E[1][1] = (e1 * (m11 - l2) - e2 * (m11 - l1)) / d;
  }
  return E;
}

}  // namespace

std::array<C, 4> linear_cns_mode_evolve(const std::array<double, 3>& xi,
                                        const std::array<C, 4>& state, double t,
                                        const CnsParams& prm) {
  if (t < 0.0) throw std::invalid_argument("linear_cns_mode_evolve: t must be >= 0");
  const double r2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
  if (r2 == 0.0) return state;
  const double r = std::sqrt(r2);
  const std::array<double, 3> nhat = {xi[0] / r, xi[1] / r, xi[2] / r};

  const C a0 = state[0];
  C b0 = 0.0;
  for (int j = 0; j < 3; ++j) b0 += nhat[j] * state[j + 1];

  const Mat2 E = acoustic_propagator(r, t, prm);
  const C a = E[0][0] * a0 + E[0][1] * b0;
  const C b = E[1][0] * a0 + E[1][1] * b0;

  const double shear = std::exp(-4.0 * M_PI * M_PI * prm.mu_bar() * r2 * t);
  std::array<C, 4> out;
  out[0] = a;
  for (int j = 0; j < 3; ++j) {
    const C transverse = state[j + 1] - nhat[j] * b0;
    out[j + 1] = shear * transverse + nhat[j] * b;
  }
  return out;
}

double mode_energy(const std::array<C, 4>& state, const CnsParams& prm) {
  double u2 = 0.0;
  for (int j = 1; j < 4; ++j) u2 += std::norm(state[j]);
  return prm.gamma() * std::norm(state[0]) + u2;
}

double mode_dissipation(const std::array<double, 3>& xi, const std::array<C, 4>& state,
                        const CnsParams& prm) {
  const double r2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
  double u2 = 0.0;
  C dot = 0.0;
  for (int j = 0; j < 3; ++j) {
    u2 += std::norm(state[j + 1]);
    dot += xi[j] * state[j + 1];
  }
  return 8.0 * M_PI * M_PI *
         (prm.mu_bar() * r2 * u2 + (prm.mu_bar() + prm.lambda_bar()) * std::norm(dot));
}

double linear_cns_norm_exact(const RadialProfile& p, const EnergyPartition& partition,
                             double ell, double t, const CnsParams& prm) {
  if (t < 0.0) throw std::invalid_argument("linear_cns_norm_exact: t must be >= 0");
  auto energy_density = [&](double r) {
    const double rho = p.density(r);
    if (rho <= 0.0) return 0.0;
    const std::array<C, 4> init = {C(std::sqrt(partition.w_rho * rho), 0.0),
                                   C(std::sqrt(partition.w_longitudinal * rho), 0.0),
                                   C(0.0, 0.0), C(0.0, 0.0)};
    // mode along e1: u1 longitudinal; solenoidal energy decays by pure shear
    const auto evolved = linear_cns_mode_evolve({r, 0.0, 0.0}, init, t, prm);
    const double shear = std::exp(-8.0 * M_PI * M_PI * prm.mu_bar() * r * r * t);
    return (mode_energy(evolved, prm) + partition.w_solenoidal * rho * shear) / rho;
  };
  double integral = radial_quadrature(p, ell, t, energy_density);
  return std::sqrt(4.0 * M_PI * integral);
}

}  // namespace sobodecay
