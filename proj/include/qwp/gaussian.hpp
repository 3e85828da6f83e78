#pragma once

#include <optional>
#include <utility>

#include "qwp/analytic.hpp"
#include "qwp/grid.hpp"
#include "qwp/potential.hpp"
#include "qwp/state.hpp"

namespace qwp {

/// Chirped Gaussian packet
///   psi(x) = (pi a)^(-1/4) exp(-(x-x0)^2/(2 alpha) + i p0 (x-x0)/hbar
///            + i a (x-x0)^2 + i phi).
/// The chirp a modulates the local spatial frequency; it is proportional
/// to the mixed uncertainty. phi is carried but never evolved: the moment
/// dynamics are blind to the global phase and no phase law is implemented.
struct GaussianParams {
  double alpha = 1.0;  ///< squared width parameter, > 0
  double a = 0.0;      ///< chirp, any sign
  double x0 = 0.0;
  double p0 = 0.0;
  double phi = 0.0;

  static GaussianParams checked(double alpha, double a, double x0, double p0,
                                double phi = 0.0) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
      throw NotGaussianError("gaussian width parameter alpha must be > 0");
    }
    return GaussianParams{alpha, a, x0, p0, phi};
  }
};

enum class GaussianClass { Coherent, Squeezed, General };

/// Extrema of the chirp on a canonical Gaussian orbit. Monotone marks the
/// inverted k <= 0 case (no extrema); Flat marks the identically-zero
/// harmonic k = 1 chirp. The tau/a fields are meaningful only for Extremal.
struct ChirpExtrema {
  enum class Kind { Extremal, Monotone, Flat };
  Kind kind = Kind::Extremal;
  double tau_max = 0.0;
  double a_max = 0.0;
  double tau_min = 0.0;
  double a_min = 0.0;
};

/// Second moments and expectation values induced by a Gaussian packet:
/// dx2 = alpha/2, dxp = 2 a hbar dx2, dp2 = hbar^2/(4 dx2) + 4 a^2 hbar^2 dx2.
/// The invariant dx2 dp2 - dxp^2 = hbar^2/4 holds exactly.
std::pair<UncertaintyState, PhasePoint> moments_from_gaussian(
    const GaussianParams& g, double hbar);

/// Inverse of moments_from_gaussian: alpha = 2 dx2, a = dxp/(2 hbar dx2).
/// Throws NotGaussianError when |dx2 dp2 - dxp^2 - hbar^2/4| > tol;
/// phi is set to 0. A negative tol selects the default 1e-9 hbar^2.
GaussianParams gaussian_from_moments(const UncertaintyState& s,
                                     const PhasePoint& q, double hbar,
                                     double tol = -1.0);

/// Evolve a Gaussian packet by the closed-form moment dynamics and map
/// back to parameters. Always succeeds for at most quadratic potentials
/// since the Gaussian invariant U = hbar^2/4 is conserved. phi carries.
GaussianParams evolve_gaussian(const GaussianParams& g,
                               const PotentialSpec& pot, double t,
                               double hbar);

/// Chirp on the canonical (tau-centered) Gaussian orbit. Equals
/// dxp/(2 hbar dx2) of the matching canonical_orbit_state at the same tau.
/// The linear regime interprets k as the momentum variance (Delta p0)^2
/// directly rather than a dimensionless ratio. Harmonic requires k >= 1
/// (k = 1 gives the identically-zero chirp of a constant orbit).
double chirp_history(double k, const Regime& regime, double m, double hbar,
                     double tau);

/// Chirp extrema on a canonical Gaussian orbit.
///  - Linear: tau_max = hbar m/(2 k), a_max = k/(2 hbar^2), odd pair.
///  - Harmonic k > 1: tau_max = arccos(sqrt(k^2-1)/k)/(2 w), located in
///    (0, pi/(4 w)); a_max = (m w/2 hbar) sqrt(k^2 - 1);
///    tau_min = pi/w - tau_max.
///  - Inverted k <= 0: monotone, no extrema. Inverted k > 0:
///    cosh(2 w tau_max) = sqrt(k^2+1)/k, a_max = (m w/2 hbar) sqrt(1+k^2),
///    odd pair.
ChirpExtrema chirp_extrema(double k, const Regime& regime, double m,
                           double hbar);

/// Coherent/squeezed/general classification against a harmonic oscillator
/// with the given mass and frequency. Coherent: zero chirp and
/// dp2 = m^2 w^2 dx2; squeezed: zero chirp with mismatched widths.
GaussianClass classify_gaussian(const GaussianParams& g, double m,
                                double omega, double hbar, double tol = 1e-9);

/// Sample the packet on a grid. The grid must cover at least +- 8 sqrt(alpha)
/// around x0; the result is L2-normalized to 1 within 1e-10 under
/// trapezoidal quadrature (rectangle rule on the periodic grid).
GridWavefunction sample_wavefunction(const GaussianParams& g,
                                     const GridSpec& grid, double hbar);

/// L2 residual of the annihilation-operator eigenvalue equation
///   (m w x + hbar d/dx) psi / sqrt(2) = (m w x0 + i p0)/sqrt(2) psi,
/// normalized by ||psi||. Near zero iff the packet is coherent. The
/// derivative is spectral; throws GridError if the sampled norm is off by
/// more than 1e-8.
double coherent_eigenvalue_residual(const GaussianParams& g, double m,
                                    double omega, double hbar,
                                    const GridSpec& grid);

}  // namespace qwp
