#include "sobodecay/cns.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "sobodecay/inequalities.hpp"

namespace sobodecay {

double PressureLaw::p_prime(double rho) const {
  return K * exponent * std::pow(rho, exponent - 1.0);
}

CnsParams make_cns_params(double mu, double lambda, double rho_bar, const PressureLaw& law) {
  return CnsParams(mu, lambda, rho_bar, law.p_prime(rho_bar));
}

CnsState::CnsState(const GridSpec& grid, const CnsParams& prm, const PressureLaw& law)
    : rho(grid, Space::spectral),
      u{SpectralField(grid, Space::spectral), SpectralField(grid, Space::spectral),
        SpectralField(grid, Space::spectral)},
      params(prm),
      pressure(law) {}

std::pair<SpectralField, SpectralField> nonlinear_coefficients(const SpectralField& rho,
                                                               double rho_bar,
                                                               const PressureLaw& law) {
  SpectralField rho_p = rho.space == Space::physical ? rho : transform(rho, Space::physical);
  SpectralField h(rho_p.grid, Space::physical);
  SpectralField f(rho_p.grid, Space::physical);
  const double f0 = law.p_prime(rho_bar) / rho_bar;
  std::size_t violations = 0;
  for (std::size_t i = 0; i < rho_p.data.size(); ++i) {
    const double r = std::real(rho_p.data[i]);
    const double total = r + rho_bar;
    if (total < 0.5 * rho_bar) {
      ++violations;
      continue;
    }
    h.data[i] = r / total;
    f.data[i] = law.p_prime(total) / total - f0;
  }
  if (violations > 0) {
    std::ostringstream os;
    os << "density floor rho + rho_bar >= rho_bar/2 violated at " << violations << " cells";
    throw std::runtime_error(os.str());
  }
  return {std::move(h), std::move(f)};
}

namespace {

SpectralField phys(const SpectralField& f) {
  return f.space == Space::physical ? f : transform(f, Space::physical);
}

SpectralField spec_dealiased(const SpectralField& f_phys) {
  SpectralField g = transform(f_phys, Space::spectral);
  dealias(g);
  return g;
}

}  // namespace

CnsTendency rhs(const CnsState& state) {
  const GridSpec& grid = state.rho.grid;
  const CnsParams& prm = state.params;
  const double mu_bar = prm.mu_bar();
  const double mul = prm.mu_bar() + prm.lambda_bar();

  // spectral linear pieces
  SpectralField div_u(grid, Space::spectral);
  for (int j = 0; j < 3; ++j) {
    SpectralField dj = derivative(state.u[j], j);
    for (std::size_t i = 0; i < div_u.data.size(); ++i) div_u.data[i] += dj.data[i];
  }
  std::array<SpectralField, 3> visc;  // mu_bar lap u + (mu_bar+lambda_bar) grad div u
  for (int j = 0; j < 3; ++j) {
    visc[j] = apply_multiplier(state.u[j], MultiplierSpec::laplacian());
    SpectralField gj = derivative(div_u, j);
    for (std::size_t i = 0; i < visc[j].data.size(); ++i)
      visc[j].data[i] = mu_bar * visc[j].data[i] + mul * gj.data[i];
  }
  std::array<SpectralField, 3> grad_rho = {derivative(state.rho, 0), derivative(state.rho, 1),
                                           derivative(state.rho, 2)};

  // physical-space fields
  SpectralField rho_p = phys(state.rho);
  std::array<SpectralField, 3> u_p = {phys(state.u[0]), phys(state.u[1]), phys(state.u[2])};
  auto [h_p, f_p] = nonlinear_coefficients(rho_p, prm.rho_bar, state.pressure);
  std::array<SpectralField, 3> grad_rho_p = {phys(grad_rho[0]), phys(grad_rho[1]),
                                             phys(grad_rho[2])};
  std::array<SpectralField, 3> visc_p = {phys(visc[0]), phys(visc[1]), phys(visc[2])};

  // continuity: -rho_bar div u - div(rho u), conservative form
  CnsTendency out;
  {
    std::array<SpectralField, 3> flux;
    for (int j = 0; j < 3; ++j) {
      SpectralField prod(grid, Space::physical);
      for (std::size_t i = 0; i < prod.data.size(); ++i)
        prod.data[i] = rho_p.data[i] * u_p[j].data[i];
      flux[j] = spec_dealiased(prod);
    }
    out.drho = SpectralField(grid, Space::spectral);
    for (int j = 0; j < 3; ++j) {
      SpectralField dj = derivative(flux[j], j);
      for (std::size_t i = 0; i < out.drho.data.size(); ++i) out.drho.data[i] -= dj.data[i];
    }
    for (std::size_t i = 0; i < out.drho.data.size(); ++i)
      out.drho.data[i] -= prm.rho_bar * div_u.data[i];
  }

  // momentum: visc - gamma rho_bar grad rho - u.grad u - h visc - f grad rho
  const double gr = prm.gamma() * prm.rho_bar;
  for (int j = 0; j < 3; ++j) {
    SpectralField nl(grid, Space::physical);
    // u . grad u_j
    for (int k = 0; k < 3; ++k) {
      SpectralField duj_k = phys(derivative(state.u[j], k));
      for (std::size_t i = 0; i < nl.data.size(); ++i)
        nl.data[i] += u_p[k].data[i] * duj_k.data[i];
    }
    for (std::size_t i = 0; i < nl.data.size(); ++i)
      nl.data[i] = -nl.data[i] - h_p.data[i] * visc_p[j].data[i] -
                   f_p.data[i] * grad_rho_p[j].data[i];
    out.du[j] = spec_dealiased(nl);
    for (std::size_t i = 0; i < out.du[j].data.size(); ++i)
      out.du[j].data[i] += visc[j].data[i] - gr * grad_rho[j].data[i];
  }
  return out;
}

namespace {

/// Viscous semigroup e^{dt L} on the velocity: shear factor on the
/// transverse part, e^{-4 pi^2 (2 mu_bar + lambda_bar) |xi|^2 dt} on the
/// longitudinal part. rho is untouched (L rho = 0).
void apply_viscous_semigroup(std::array<SpectralField, 3>& u, const CnsParams& prm,
                             double dt) {
  const GridSpec& grid = u[0].grid;
  const double inv_L = 1.0 / grid.L;
  const double c_shear = 4.0 * M_PI * M_PI * prm.mu_bar() * dt;
  const double c_long = 4.0 * M_PI * M_PI * (2.0 * prm.mu_bar() + prm.lambda_bar()) * dt;
  for (int i = 0; i < grid.n; ++i)
    for (int j = 0; j < grid.n; ++j)
      for (int k = 0; k < grid.n; ++k) {
        const double xi[3] = {grid.freq(i) * inv_L, grid.freq(j) * inv_L,
                              grid.freq(k) * inv_L};
        const double xi2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        if (xi2 == 0.0) continue;
        std::complex<double> dot = 0.0;
        for (int a = 0; a < 3; ++a) dot += xi[a] * u[a].at(i, j, k);
        dot /= xi2;
        const double es = std::exp(-c_shear * xi2);
        const double el = std::exp(-c_long * xi2);
        for (int a = 0; a < 3; ++a) {
          const std::complex<double> longitudinal = xi[a] * dot;
          auto& c = u[a].at(i, j, k);
          c = es * (c - longitudinal) + el * longitudinal;
        }
      }
}

/// Explicit part N = rhs - L state (viscous term removed).
CnsTendency explicit_rhs(const CnsState& state) {
  CnsTendency t = rhs(state);
  const GridSpec& grid = state.rho.grid;
  const double inv_L = 1.0 / grid.L;
  const CnsParams& prm = state.params;
  const double c_mu = 4.0 * M_PI * M_PI * prm.mu_bar();
  const double c_mul = 4.0 * M_PI * M_PI * (prm.mu_bar() + prm.lambda_bar());
  for (int i = 0; i < grid.n; ++i)
    for (int j = 0; j < grid.n; ++j)
      for (int k = 0; k < grid.n; ++k) {
        const double xi[3] = {grid.freq(i) * inv_L, grid.freq(j) * inv_L,
                              grid.freq(k) * inv_L};
        const double xi2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        if (xi2 == 0.0) continue;
        std::complex<double> dot = 0.0;
        for (int a = 0; a < 3; ++a) dot += xi[a] * state.u[a].at(i, j, k);
        for (int a = 0; a < 3; ++a)
          t.du[a].at(i, j, k) += c_mu * xi2 * state.u[a].at(i, j, k) + c_mul * xi[a] * dot;
      }
  return t;
}

void check_finite(const CnsState& s) {
  auto bad = [](const SpectralField& f) {
    for (const auto& c : f.data)
      if (!std::isfinite(std::real(c)) || !std::isfinite(std::imag(c))) return true;
    return false;
  };
  if (bad(s.rho) || bad(s.u[0]) || bad(s.u[1]) || bad(s.u[2])) {
    std::ostringstream os;
    os << "NaN/Inf detected; last valid time t = " << s.time;
    throw std::runtime_error(os.str());
  }
}

CnsState axpy(const CnsState& base, double a, const CnsTendency& t) {
  CnsState out = base;
  for (std::size_t i = 0; i < out.rho.data.size(); ++i)
    out.rho.data[i] += a * t.drho.data[i];
  for (int j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < out.u[j].data.size(); ++i)
      out.u[j].data[i] += a * t.du[j].data[i];
  return out;
}

}  // namespace

CnsState step(const CnsState& state, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
  const CnsParams& prm = state.params;

  // integrating-factor RK4 for y' = L y + N(y) with exact e^{dt L}
  CnsTendency k1 = explicit_rhs(state);

  CnsState s2 = axpy(state, dt / 2.0, k1);
  apply_viscous_semigroup(s2.u, prm, dt / 2.0);
  CnsTendency k2 = explicit_rhs(s2);

  CnsState s3 = state;
  apply_viscous_semigroup(s3.u, prm, dt / 2.0);
  s3 = axpy(s3, dt / 2.0, k2);
  CnsTendency k3 = explicit_rhs(s3);

  CnsState s4 = state;
  apply_viscous_semigroup(s4.u, prm, dt);
  apply_viscous_semigroup(k3.du, prm, dt / 2.0);
  s4 = axpy(s4, dt, k3);
  CnsTendency k4 = explicit_rhs(s4);

  apply_viscous_semigroup(k1.du, prm, dt);
  apply_viscous_semigroup(k2.du, prm, dt / 2.0);
  // k3.du already carries the half-interval factor

  CnsState out = state;
  apply_viscous_semigroup(out.u, prm, dt);
  out = axpy(out, dt / 6.0, k1);
  out = axpy(out, dt / 3.0, k2);
  out = axpy(out, dt / 3.0, k3);
  out = axpy(out, dt / 6.0, k4);
  out.time = state.time + dt;
  check_finite(out);
  return out;
}

double cfl_dt(const CnsState& state, double cfl_number) {
  const GridSpec& grid = state.rho.grid;
  const int cut = (grid.n - 1) / 3;
  const double xi_max = std::sqrt(3.0) * cut / grid.L;
  double u_max = 0.0;
  for (int j = 0; j < 3; ++j) u_max = std::max(u_max, lp_norm(state.u[j], p_infinity));
  const double speed = state.params.sound_speed() + u_max;
  // explicit acoustic eigenvalue ~ 2 pi xi_max speed; RK4 imaginary-axis
  // stability limit 2.83
  return cfl_number * 2.8 / (2.0 * M_PI * xi_max * speed);
}

namespace {

double vector_sobolev_sq(const std::array<SpectralField, 3>& u, double s) {
  double sum = 0.0;
  for (int j = 0; j < 3; ++j) {
    const double n = sobolev_norm(u[j], s);
    sum += n * n;
  }
  return sum;
}

}  // namespace

EnergyReport energy_functional(const CnsState& state, int ell, int m, double beta) {
  if (!(0 <= ell && ell <= m - 1))
    throw std::invalid_argument("energy_functional: need 0 <= ell <= m-1");
  if (!(beta > 0.0 && beta <= 0.5))
    throw std::invalid_argument("energy_functional: beta must lie in (0, 1/2]");
  const double gamma = state.params.gamma();

  EnergyReport rep;
  rep.ell = ell;
  rep.m = m;
  rep.beta = beta;
  for (int k = ell; k <= m; ++k) {
    const double r = sobolev_norm(state.rho, static_cast<double>(k));
    rep.sobolev_sum += gamma * r * r + vector_sobolev_sq(state.u, k);
  }
  // cross term: sum_j L^3 sum_xi |xi|^{2k} Re(conj(u_j) i xi_j rho)
  const GridSpec& grid = state.rho.grid;
  const double inv_L = 1.0 / grid.L;
  for (int k = ell; k <= m - 1; ++k) {
    double c = 0.0;
    for (int i = 0; i < grid.n; ++i)
      for (int j = 0; j < grid.n; ++j)
        for (int kk = 0; kk < grid.n; ++kk) {
          const double xi[3] = {grid.freq(i) * inv_L, grid.freq(j) * inv_L,
                                grid.freq(kk) * inv_L};
          const double xi2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
          if (xi2 == 0.0) continue;
          const std::complex<double> r = state.rho.at(i, j, kk);
          std::complex<double> dot = 0.0;
          for (int a = 0; a < 3; ++a) dot += xi[a] * std::conj(state.u[a].at(i, j, kk));
          c += std::pow(xi2, k) * std::real(dot * std::complex<double>(0.0, 1.0) * r);
        }
    rep.cross += c * grid.volume();
  }
  rep.E = rep.sobolev_sum + beta * rep.cross;
  for (int k = ell + 1; k <= m; ++k) {
    const double r = sobolev_norm(state.rho, static_cast<double>(k));
    rep.D += r * r;
  }
  for (int k = ell + 1; k <= m + 1; ++k) rep.D += vector_sobolev_sq(state.u, k);
  return rep;
}

std::pair<double, double> negative_norm_pair(const CnsState& state, double s) {
  if (!(s > 0.0 && s < 1.5))
    throw std::invalid_argument("negative_norm_pair: s must lie in (0, 3/2)");
  return {sobolev_norm(state.rho, -s), std::sqrt(vector_sobolev_sq(state.u, -s))};
}

double mass(const CnsState& state) {
  return std::real(state.rho.data[0]) * state.rho.grid.volume();
}

CnsState make_random_state(const CnsExperimentSpec& spec) {
  CnsState state(spec.grid, spec.params, spec.pressure);
  TrialSpec trial{spec.seed, 1, std::min(6, spec.grid.n / 3), -2.0, 1};
  auto scaled = [&](std::uint64_t salt) {
    TrialSpec t = trial;
    t.seed = spec.seed * 4u + salt;
    return random_field(t, spec.grid);
  };
  state.rho = scaled(0);
  for (int j = 0; j < 3; ++j) state.u[j] = scaled(1 + j);

  // normalize the H^3-type size to the requested amplitude
  double h3 = 0.0;
  for (int k = 0; k <= 3; ++k) {
    const double r = sobolev_norm(state.rho, static_cast<double>(k));
    h3 += r * r + vector_sobolev_sq(state.u, k);
  }
  const double scale = spec.amplitude / std::sqrt(h3);
  for (auto& c : state.rho.data) c *= scale;
  for (int j = 0; j < 3; ++j)
    for (auto& c : state.u[j].data) c *= scale;
  return state;
}

CnsRunResult run_cns_experiment(const CnsExperimentSpec& spec) {
  CnsState state = make_random_state(spec);
  CnsRunResult result;
  result.dt = cfl_dt(state, spec.cfl);
  const int n_steps = static_cast<int>(std::ceil(spec.T / result.dt));
  result.dt = spec.T / n_steps;

  const double mass0 = mass(state);
  std::vector<double> E_prev(spec.energy_levels.size());
  std::vector<double> E_init(spec.energy_levels.size());
  std::vector<double> neg_init(spec.s_list.size() * 2);
  for (std::size_t e = 0; e < spec.energy_levels.size(); ++e) {
    const auto [l, m] = spec.energy_levels[e];
    E_prev[e] = E_init[e] = energy_functional(state, l, m, spec.beta).E;
  }
  for (std::size_t i = 0; i < spec.s_list.size(); ++i) {
    auto [nr, nu] = negative_norm_pair(state, spec.s_list[i]);
    neg_init[2 * i] = nr;
    neg_init[2 * i + 1] = nu;
  }

  auto label_E = [](int l, int m) {
    std::ostringstream os;
    os << "E_" << l << "^" << m;
    return os.str();
  };

  auto sample = [&](double t_record) {
    // trajectory times must strictly increase; offset t=0 is recorded too
    for (std::size_t e = 0; e < spec.energy_levels.size(); ++e) {
      const auto [l, m] = spec.energy_levels[e];
      const auto rep = energy_functional(state, l, m, spec.beta);
      auto& tr = result.trajectories[label_E(l, m)];
      tr.label = label_E(l, m);
      tr.samples.push_back({t_record, rep.E, false});
      auto& trd = result.trajectories[label_E(l, m) + ":D"];
      trd.label = label_E(l, m) + ":D";
      trd.samples.push_back({t_record, rep.D, false});
    }
    for (double s : spec.s_list) {
      auto [nr, nu] = negative_norm_pair(state, s);
      std::ostringstream os;
      os << "H-" << s;
      auto& tr = result.trajectories[os.str()];
      tr.label = os.str();
      tr.samples.push_back({t_record, nr + nu, false});
    }
    auto& trm = result.trajectories["mass"];
    trm.label = "mass";
    trm.samples.push_back({t_record, mass(state), false});
    auto& trl = result.trajectories["L2"];
    trl.label = "L2";
    const double l2r = sobolev_norm(state.rho, 0.0);
    trl.samples.push_back({t_record, std::sqrt(l2r * l2r + vector_sobolev_sq(state.u, 0.0)),
                           false});
  };

  sample(0.0);
  for (int n = 1; n <= n_steps; ++n) {
    try {
      state = step(state, result.dt);
    } catch (const std::runtime_error& e) {
      result.events.push_back(std::string("fatal: ") + e.what());
      result.density_floor_ok = false;
      break;
    }
    ++result.steps;
    for (std::size_t e = 0; e < spec.energy_levels.size(); ++e) {
      const auto [l, m] = spec.energy_levels[e];
      const double E = energy_functional(state, l, m, spec.beta).E;
      const double inc = (E - E_prev[e]) / E_init[e];
      result.max_energy_step_increase = std::max(result.max_energy_step_increase, inc);
      if (inc > spec.monotonicity_tol) {
        std::ostringstream os;
        os << "monotonicity: " << label_E(l, m) << " increased by " << inc
           << " (rel E0) at t = " << state.time;
        result.events.push_back(os.str());
      }
      E_prev[e] = E;
    }
    if (n % spec.sample_stride == 0 || n == n_steps) sample(state.time);
  }
  result.mass_drift = std::abs(mass(state) - mass0);
  return result;
}

}  // namespace sobodecay
