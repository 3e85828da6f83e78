#pragma once

#include <cmath>
#include <variant>

#include "qwp/errors.hpp"
#include "qwp/state.hpp"

namespace qwp {

/// Potential V(x) = A x^2 + B x + C together with the particle mass.
/// B and C never enter the uncertainty dynamics; they matter only for the
/// classical trajectory of the expectation values.
struct PotentialSpec {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  double m = 1.0;

  static PotentialSpec checked(double A, double B, double C, double m) {
    if (!(std::isfinite(A) && std::isfinite(B) && std::isfinite(C))) {
      throw InvalidPotentialError("potential coefficients must be finite");
    }
    if (!(m > 0.0) || !std::isfinite(m)) {
      throw InvalidPotentialError("mass must be positive and finite");
    }
    return PotentialSpec{A, B, C, m};
  }

  /// Harmonic potential A = m w^2 / 2.
  static PotentialSpec harmonic(double omega, double m = 1.0, double B = 0.0,
                                double C = 0.0) {
    return checked(0.5 * m * omega * omega, B, C, m);
  }

  /// Unstable (barrier) potential A = -m w^2 / 2.
  static PotentialSpec inverted(double omega, double m = 1.0, double B = 0.0,
                                double C = 0.0) {
    return checked(-0.5 * m * omega * omega, B, C, m);
  }

  static PotentialSpec free_particle(double m = 1.0) {
    return checked(0.0, 0.0, 0.0, m);
  }
};

struct LinearRegime {};
struct HarmonicRegime {
  double omega;  ///< angular frequency, > 0
};
struct InvertedRegime {
  double omega;  ///< angular frequency of the barrier, > 0
};

/// Dynamical regime of the quadratic coefficient: the sign of A selects
/// sinusoidal, polynomial or hyperbolic uncertainty histories.
using Regime = std::variant<LinearRegime, HarmonicRegime, InvertedRegime>;

inline bool is_linear(const Regime& r) {
  return std::holds_alternative<LinearRegime>(r);
}
inline bool is_harmonic(const Regime& r) {
  return std::holds_alternative<HarmonicRegime>(r);
}
inline bool is_inverted(const Regime& r) {
  return std::holds_alternative<InvertedRegime>(r);
}

/// Angular frequency of a harmonic or inverted regime; 0 for linear.
inline double regime_omega(const Regime& r) {
  if (const auto* h = std::get_if<HarmonicRegime>(&r)) return h->omega;
  if (const auto* u = std::get_if<InvertedRegime>(&r)) return u->omega;
  return 0.0;
}

/// Classify the potential by the sign of A. |A| <= eps is treated as
/// exactly linear; the closed forms are singular in omega as A -> 0, so a
/// hard threshold replaces a continuous limit.
inline Regime classify_regime(const PotentialSpec& pot, double eps = 1e-12) {
  if (!std::isfinite(pot.A) || !(pot.m > 0.0) || !std::isfinite(pot.m)) {
    throw InvalidPotentialError("cannot classify: invalid A or mass");
  }
  if (std::abs(pot.A) <= eps) return LinearRegime{};
  const double omega = std::sqrt(2.0 * std::abs(pot.A) / pot.m);
  if (pot.A > 0.0) return HarmonicRegime{omega};
  return InvertedRegime{omega};
}

/// Constants of motion K = dp2 + 2mA dx2 and U = dx2 dp2 - dxp^2.
inline Constants constants_of_motion(const UncertaintyState& s,
                                     const PotentialSpec& pot) {
  return Constants{s.dp2 + 2.0 * pot.m * pot.A * s.dx2,
                   s.dx2 * s.dp2 - s.dxp * s.dxp};
}

}  // namespace qwp
