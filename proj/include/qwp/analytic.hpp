#pragma once

#include <optional>

#include "qwp/potential.hpp"
#include "qwp/state.hpp"

namespace qwp {

/// An uncertainty history re-centered at the instant T where the mixed
/// uncertainty vanishes, parameterized entirely by the constants of motion.
/// At tau = 0 the uncertainty product equals its global minimum U.
struct CanonicalOrbit {
  Regime regime;
  double m = 1.0;
  double K = 0.0;
  double U = 0.0;
  double origin_shift = 0.0;  ///< T with dxp(T) = 0 in the original time
};

/// Regime-dependent sum/difference variables. Harmonic:
/// K = dp2 + m^2 w^2 dx2, Z = dp2 - m^2 w^2 dx2. Inverted: K and Z swap
/// the sign of the dx2 term. K is conserved; Z carries the dynamics.
struct ZKState {
  double K = 0.0;
  double Z = 0.0;
};

/// cosh and sinh from a single exponential; symmetric combination with a
/// Taylor patch below |x| = 1e-8 where the subtraction loses digits.
struct CoshSinh {
  double c;
  double s;
};
CoshSinh cosh_sinh(double x);

/// Uncertainty state at time t in an at most linear potential. The momentum
/// variance is a constant of motion; dx2 is a parabola in t.
UncertaintyState evolve_linear(const UncertaintyState& s0, double m, double t);

/// Uncertainty state at time t in a harmonic potential. All three
/// components oscillate with period pi/omega, twice as fast as the
/// classical phase-space variables. K is conserved exactly by
/// construction: the evolution runs in (K, Z, dxp) variables and
/// reconstructs dx2 = (K - Z)/(2 m^2 w^2), dp2 = (K + Z)/2.
UncertaintyState evolve_harmonic(const UncertaintyState& s0, double m,
                                 double omega, double t);

/// Uncertainty state at time t in an unstable (barrier) potential.
/// Hyperbolic analogue of the harmonic case; the mixed uncertainty is
/// strictly increasing. Throws RangeOverflowError for |2 w t| > 350.
UncertaintyState evolve_inverted(const UncertaintyState& s0, double m,
                                 double omega, double t);

/// Regime-dispatched evolution. Satisfies the group law
/// evolve(s, pot, t1 + t2) == evolve(evolve(s, pot, t1), pot, t2).
UncertaintyState evolve(const UncertaintyState& s0, const PotentialSpec& pot,
                        double t, double regime_eps = 1e-12);

/// Time at which the mixed uncertainty crosses zero.
///  - Linear: T = -m dxp0 / dp20 (any sign).
///  - Harmonic: smallest nonnegative root of the dxp sinusoid; 0 for the
///    degenerate constant orbit (Z0 = dxp0 = 0).
///  - Inverted: T = artanh(-2 m w dxp0 / Z0) / (2 w), always finite since
///    Z0 > 2 m w |dxp0| for physical states.
std::optional<double> time_of_zero_mixed(const UncertaintyState& s0,
                                         const PotentialSpec& pot,
                                         double regime_eps = 1e-12);

/// Upper bound on the narrowing time in the inverted regime,
/// T_max = artanh(sqrt(1 - U/(dx2 dp2))) / (2 w). Any state with the given
/// initial uncertainty product stops narrowing before T_max. Linear and
/// harmonic regimes admit no finite product-only bound and throw
/// UnsupportedRegimeError.
double narrowing_time_bound(const UncertaintyState& s0,
                            const PotentialSpec& pot,
                            double regime_eps = 1e-12);

/// State on a canonical orbit at orbit time tau. dxp(0) = 0 exactly and
/// dx2(0) * dp2(0) = U. Harmonic orbits require K^2 - 4 m^2 w^2 U >= 0;
/// linear orbits require K > 0.
UncertaintyState canonical_orbit_state(const CanonicalOrbit& orbit,
                                       double tau);

/// Canonical orbit through a given state: constants of motion plus the
/// origin shift from time_of_zero_mixed.
CanonicalOrbit canonical_orbit_from_state(const UncertaintyState& s0,
                                          const PotentialSpec& pot,
                                          double regime_eps = 1e-12);

/// Exact classical trajectory of the expectation values under Newton's
/// equations: polynomial drift (linear), rotation about -B/(2A)
/// (harmonic), hyperbolic escape (inverted).
PhasePoint classical_trajectory(const PhasePoint& q0, const PotentialSpec& pot,
                                double t, double regime_eps = 1e-12);

}  // namespace qwp
