#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "qwp/errors.hpp"

namespace qwp {

/// Uniform periodic spatial grid: n points x_j = x_min + j dx with
/// dx = (x_max - x_min)/n; x_max itself is the periodic image of x_min.
/// n must be a power of two and at least 256 for spectral accuracy.
struct GridSpec {
  double x_min = 0.0;
  double x_max = 0.0;
  std::size_t n = 0;

  static GridSpec checked(double x_min, double x_max, std::size_t n) {
    if (!(x_max > x_min)) throw GridError("grid requires x_max > x_min");
    if (n < 256 || (n & (n - 1)) != 0) {
      throw GridError("grid size must be a power of two >= 256");
    }
    return GridSpec{x_min, x_max, n};
  }

  double length() const { return x_max - x_min; }
  double dx() const { return length() / static_cast<double>(n); }
  double x(std::size_t j) const { return x_min + static_cast<double>(j) * dx(); }

  /// FFT-ordered angular wavenumber of bin j (positive frequencies first,
  /// then negative).
  double k(std::size_t j) const {
    const double dk = 2.0 * M_PI / length();
    const auto half = n / 2;
    const auto idx = (j < half) ? static_cast<double>(j)
                                : static_cast<double>(j) - static_cast<double>(n);
    return dk * idx;
  }
};

/// Complex wavefunction samples on a GridSpec.
struct GridWavefunction {
  GridSpec grid;
  std::vector<std::complex<double>> samples;

  GridWavefunction() = default;
  explicit GridWavefunction(const GridSpec& g)
      : grid(g), samples(g.n, std::complex<double>{0.0, 0.0}) {}

  std::size_t size() const { return samples.size(); }
};

}  // namespace qwp
