#pragma once

#include <cstddef>
#include <stdexcept>

namespace sobodecay {

/// Periodic box [0,L)^3 sampled on n points per axis. Frequencies live on
/// the lattice xi = k/L with integer k in [-n/2, n/2).
struct GridSpec {
  int n = 0;
  double L = 1.0;

  GridSpec() = default;
  GridSpec(int n_, double L_) : n(n_), L(L_) {
    if (n < 8 || n % 2 != 0) throw std::invalid_argument("GridSpec: n must be even and >= 8");
    if (!(L > 0.0)) throw std::invalid_argument("GridSpec: L must be positive");
  }

  std::size_t size() const { return static_cast<std::size_t>(n) * n * n; }

  /// Signed integer frequency for storage index i along one axis.
  int freq(int i) const { return i <= n / 2 - 1 ? i : i - n; }

  /// Storage index for signed integer frequency k (k in [-n/2, n/2)).
  int index_of(int k) const { return k >= 0 ? k : k + n; }

  double cell_volume() const { return (L / n) * (L / n) * (L / n); }
  double volume() const { return L * L * L; }

  bool operator==(const GridSpec&) const = default;
};

}  // namespace sobodecay
