#pragma once

#include <cmath>

#include "qwp/errors.hpp"

namespace qwp {

/// Physical constants of the problem. Natural units by default.
struct UnitsConfig {
  double hbar = 1.0;
};

/// Second-moment state of a wave packet at one instant: position variance,
/// momentum variance and the mixed (symmetrized) uncertainty. The mixed
/// uncertainty may take either sign; its sign decides whether the packet is
/// spreading or narrowing at that instant, independent of the potential.
struct UncertaintyState {
  double dx2 = 0.0;  ///< position variance, > 0
  double dp2 = 0.0;  ///< momentum variance, > 0
  double dxp = 0.0;  ///< mixed uncertainty, any sign

  /// Validating factory: positivity plus the generalized uncertainty
  /// inequality dx2*dp2 - dxp^2 >= hbar^2/4 within `tol` (absolute).
  /// Grid-measured moments are noisy, hence the tolerance; aggregate
  /// initialization stays available as the unchecked path for oracles.
  static UncertaintyState checked(double dx2, double dp2, double dxp,
                                  double hbar = 1.0, double tol = 1e-9) {
    if (!(std::isfinite(dx2) && std::isfinite(dp2) && std::isfinite(dxp))) {
      throw UnphysicalStateError("uncertainty state has non-finite component");
    }
    if (!(dx2 > 0.0) || !(dp2 > 0.0)) {
      throw UnphysicalStateError("position/momentum variances must be positive");
    }
    const double margin = dx2 * dp2 - dxp * dxp - 0.25 * hbar * hbar;
    if (margin < -tol) {
      throw UnphysicalStateError(
          "generalized uncertainty inequality violated beyond tolerance");
    }
    return UncertaintyState{dx2, dp2, dxp};
  }
};

/// Expectation values of position and momentum. They obey Newton's
/// equations for at most quadratic potentials.
struct PhasePoint {
  double x = 0.0;
  double p = 0.0;
};

/// The two conserved quantities of the quadratic-potential moment system:
/// K = dp2 + 2mA dx2 and U = dx2 dp2 - dxp^2. U is the left side of the
/// generalized uncertainty inequality and bounds the uncertainty product
/// from below along the whole trajectory.
struct Constants {
  double K = 0.0;
  double U = 0.0;
};

/// Margin of the generalized uncertainty inequality,
/// dx2*dp2 - dxp^2 - hbar^2/4. Negative beyond tolerance means unphysical.
inline double check_generalized_uncertainty(const UncertaintyState& s,
                                            double hbar) {
  return s.dx2 * s.dp2 - s.dxp * s.dxp - 0.25 * hbar * hbar;
}

/// Sign of d/dt (dx2): +1 spreading, -1 narrowing, 0 stationary instant.
/// Valid for any potential, not only quadratic ones.
inline int spreading_sign(const UncertaintyState& s) {
  if (s.dxp > 0.0) return 1;
  if (s.dxp < 0.0) return -1;
  return 0;
}

}  // namespace qwp
