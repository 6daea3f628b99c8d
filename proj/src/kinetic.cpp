#include "sobodecay/kinetic.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace sobodecay {

VelocityGrid::VelocityGrid(int nv_, double v_max_) : nv(nv_), v_max(v_max_) {
  if (nv < 2) throw std::invalid_argument("VelocityGrid: nv must be >= 2");
  if (!(v_max >= 6.0))
    throw std::invalid_argument("VelocityGrid: v_max must be >= 6 (Maxwellian tail)");
  const double h = 2.0 * v_max / (nv - 1);
  axis.resize(nv);
  axis_weight.resize(nv);
  for (int i = 0; i < nv; ++i) {
    axis[i] = -v_max + i * h;
    axis_weight[i] = (i == 0 || i == nv - 1) ? h / 2.0 : h;
  }
}

std::array<double, 3> VelocityGrid::node(std::size_t flat) const {
  const std::size_t k = flat % nv;
  const std::size_t j = (flat / nv) % nv;
  const std::size_t i = flat / (static_cast<std::size_t>(nv) * nv);
  return {axis[i], axis[j], axis[k]};
}

double VelocityGrid::weight(std::size_t flat) const {
  const std::size_t k = flat % nv;
  const std::size_t j = (flat / nv) % nv;
  const std::size_t i = flat / (static_cast<std::size_t>(nv) * nv);
  return axis_weight[i] * axis_weight[j] * axis_weight[k];
}

VelocityFunction maxwellian(const VelocityGrid& grid) {
  VelocityFunction f(grid);
  for (std::size_t m = 0; m < grid.size(); ++m) {
    const auto v = grid.node(m);
    f.values[m] = std::exp(-0.5 * (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]));
  }
  return f;
}

double collision_frequency(const std::array<double, 3>& v, const VelocityGrid& grid) {
  double sum = 0.0;
  for (int i = 0; i < grid.nv; ++i) {
    const double d0 = v[0] - grid.axis[i];
    const double wi = grid.axis_weight[i];
    for (int j = 0; j < grid.nv; ++j) {
      const double d1 = v[1] - grid.axis[j];
      const double wij = wi * grid.axis_weight[j];
      const double d01 = d0 * d0 + d1 * d1;
      for (int k = 0; k < grid.nv; ++k) {
        const double d2 = v[2] - grid.axis[k];
        const double u2 = grid.axis[i] * grid.axis[i] + grid.axis[j] * grid.axis[j] +
                          grid.axis[k] * grid.axis[k];
        sum += wij * grid.axis_weight[k] * std::sqrt(d01 + d2 * d2) * std::exp(-0.5 * u2);
      }
    }
  }
  return sum;
}

const std::vector<double>& collision_frequency_table(const VelocityGrid& grid) {
  static std::mutex mu;
  static std::map<std::pair<int, double>, std::vector<double>> cache;
  std::scoped_lock lock(mu);
  auto key = std::make_pair(grid.nv, grid.v_max);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  // nu is radial; evaluate once per distinct |v|^2 (symmetry cuts ~50x work)
  std::vector<double> table(grid.size());
  std::map<double, double> by_radius;
  for (std::size_t m = 0; m < grid.size(); ++m) {
    auto v = grid.node(m);
    for (auto& c : v) c = std::abs(c);
    std::sort(v.begin(), v.end());  // bitwise-stable radius key under symmetry
    const double r2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
    auto rit = by_radius.find(r2);
    if (rit == by_radius.end())
      rit = by_radius.emplace(r2, collision_frequency({std::sqrt(r2), 0.0, 0.0}, grid)).first;
    table[m] = rit->second;
  }
  return cache.emplace(key, std::move(table)).first->second;
}

double inner_product(const VelocityFunction& f, const VelocityFunction& g) {
  if (f.grid != g.grid) throw std::invalid_argument("inner_product: grid mismatch");
  double sum = 0.0;
  for (std::size_t m = 0; m < f.values.size(); ++m)
    sum += f.grid->weight(m) * f.values[m] * g.values[m];
  return sum;
}

double l2_norm(const VelocityFunction& f) { return std::sqrt(inner_product(f, f)); }

namespace {

/// Basis {sqrt(mu), v_i sqrt(mu), |v|^2 sqrt(mu)} evaluated at node m.
std::array<double, 5> basis_at(const VelocityGrid& grid, std::size_t m) {
  const auto v = grid.node(m);
  const double r2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
  const double root_mu = std::exp(-0.25 * r2);
  return {root_mu, v[0] * root_mu, v[1] * root_mu, v[2] * root_mu, r2 * root_mu};
}

}  // namespace

VelocityFunction project_P(const VelocityFunction& f, MacroCoefficients* coeffs) {
  const VelocityGrid& grid = *f.grid;
  Eigen::Matrix<double, 5, 5> gram = Eigen::Matrix<double, 5, 5>::Zero();
  Eigen::Matrix<double, 5, 1> rhs = Eigen::Matrix<double, 5, 1>::Zero();
  for (std::size_t m = 0; m < grid.size(); ++m) {
    const double w = grid.weight(m);
    const auto e = basis_at(grid, m);
    for (int i = 0; i < 5; ++i) {
      rhs(i) += w * e[i] * f.values[m];
      for (int j = i; j < 5; ++j) gram(i, j) += w * e[i] * e[j];
    }
  }
  gram = gram.selfadjointView<Eigen::Upper>();

  Eigen::JacobiSVD<Eigen::Matrix<double, 5, 5>> svd(gram,
                                                    Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double cond = svd.singularValues()(0) / svd.singularValues()(4);
  if (!(cond < 1e12))
    throw std::runtime_error("project_P: Gram matrix ill-conditioned (cond ~ " +
                             std::to_string(cond) + "), grid too coarse");
  const Eigen::Matrix<double, 5, 1> c = svd.solve(rhs);

  if (coeffs) {
    coeffs->a = c(0);
    coeffs->b = {c(1), c(2), c(3)};
    coeffs->c = c(4);
  }
  VelocityFunction out(grid);
  for (std::size_t m = 0; m < grid.size(); ++m) {
    const auto e = basis_at(grid, m);
    double val = 0.0;
    for (int i = 0; i < 5; ++i) val += c(i) * e[i];
    out.values[m] = val;
  }
  return out;
}

VelocityFunction micro_part(const VelocityFunction& f) {
  VelocityFunction p = project_P(f);
  VelocityFunction out(*f.grid);
  for (std::size_t m = 0; m < f.values.size(); ++m) out.values[m] = f.values[m] - p.values[m];
  return out;
}

double nu_weighted_norm(const VelocityFunction& f) {
  const auto& nu = collision_frequency_table(*f.grid);
  double sum = 0.0;
  for (std::size_t m = 0; m < f.values.size(); ++m)
    sum += f.grid->weight(m) * nu[m] * f.values[m] * f.values[m];
  return std::sqrt(sum);
}

}  // namespace sobodecay
