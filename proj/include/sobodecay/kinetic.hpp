#pragma once

#include <array>
#include <vector>

namespace sobodecay {

/// Uniform tensor grid on [-v_max, v_max]^3 with trapezoidal weights.
struct VelocityGrid {
  int nv = 0;
  double v_max = 8.0;
  std::vector<double> axis;         // node coordinates, one axis
  std::vector<double> axis_weight;  // trapezoidal weights, one axis

  VelocityGrid(int nv_, double v_max_ = 8.0);

  std::size_t size() const { return static_cast<std::size_t>(nv) * nv * nv; }
  std::array<double, 3> node(std::size_t flat) const;
  double weight(std::size_t flat) const;
};

struct VelocityFunction {
  const VelocityGrid* grid = nullptr;
  std::vector<double> values;

  VelocityFunction() = default;
  explicit VelocityFunction(const VelocityGrid& g) : grid(&g), values(g.size(), 0.0) {}
};

/// Pointwise e^{-|v|^2 / 2}.
VelocityFunction maxwellian(const VelocityGrid& grid);

/// nu(v) = int |v - u| e^{-|u|^2/2} du by grid quadrature.
double collision_frequency(const std::array<double, 3>& v, const VelocityGrid& grid);

double inner_product(const VelocityFunction& f, const VelocityFunction& g);
double l2_norm(const VelocityFunction& f);

struct MacroCoefficients {
  double a = 0.0;
  std::array<double, 3> b = {0.0, 0.0, 0.0};
  double c = 0.0;
};

/// L^2_v-orthogonal projection onto span{sqrt(mu), v sqrt(mu), |v|^2 sqrt(mu)}
/// via a Gram-matrix solve against the non-orthogonal basis; the (a, b, c)
/// representation Pf = (a + b.v + c |v|^2) sqrt(mu) is exposed.
VelocityFunction project_P(const VelocityFunction& f, MacroCoefficients* coeffs = nullptr);

/// f - Pf.
VelocityFunction micro_part(const VelocityFunction& f);

/// (sum_v w(v) nu(v) f(v)^2)^{1/2}.
double nu_weighted_norm(const VelocityFunction& f);

/// Cached nu values on the grid nodes (shared by nu_weighted_norm).
const std::vector<double>& collision_frequency_table(const VelocityGrid& grid);

}  // namespace sobodecay
