#pragma once

#include <cmath>
#include <random>

#include "qwp/potential.hpp"
#include "qwp/state.hpp"

namespace qwp::test {

/// |a - b| <= tol * max(1, |b|): absolute near zero, relative at scale.
inline bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

inline bool close_abs(double a, double b, double tol) {
  return std::abs(a - b) <= tol;
}

inline bool states_close(const UncertaintyState& a, const UncertaintyState& b,
                         double tol) {
  return close(a.dx2, b.dx2, tol) && close(a.dp2, b.dp2, tol) &&
         close(a.dxp, b.dxp, tol);
}

/// Random physical state: variances in [0.6, 4] keep the product above
/// hbar^2/4 (hbar = 1), the mixed part stays inside the allowed disc.
inline UncertaintyState random_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> var(0.6, 4.0);
  std::uniform_real_distribution<double> eta(-0.9, 0.9);
  const double dx2 = var(rng);
  const double dp2 = var(rng);
  const double dxp = eta(rng) * std::sqrt(dx2 * dp2 - 0.25);
  return UncertaintyState{dx2, dp2, dxp};
}

enum class RegimeKind { Linear, Harmonic, Inverted };

inline PotentialSpec random_potential(std::mt19937_64& rng, RegimeKind kind) {
  std::uniform_real_distribution<double> om(0.3, 2.0);
  std::uniform_real_distribution<double> mass(0.5, 2.0);
  std::uniform_real_distribution<double> lin(-2.0, 2.0);
  const double m = mass(rng);
  const double B = lin(rng);
  const double C = 0.5 * lin(rng);
  switch (kind) {
    case RegimeKind::Harmonic:
      return PotentialSpec::harmonic(om(rng), m, B, C);
    case RegimeKind::Inverted:
      return PotentialSpec::inverted(om(rng), m, B, C);
    default:
      return PotentialSpec::checked(0.0, B, C, m);
  }
}

/// Random evolution time. The inverted regime caps omega*t at 3: the
/// hyperbolic growth e^(4 w t) amplifies rounding in the recomputed U past
/// any 1e-10-relative conservation signal beyond that.
inline double random_time(std::mt19937_64& rng, const PotentialSpec& pot,
                          double t_cap = 10.0) {
  double hi = t_cap;
  if (pot.A < 0.0) {
    const double omega = std::sqrt(-2.0 * pot.A / pot.m);
    hi = std::min(hi, 3.0 / omega);
  }
  std::uniform_real_distribution<double> dist(-hi, hi);
  return dist(rng);
}

}  // namespace qwp::test
