#include "qwp/analytic.hpp"

#include <cmath>
#include <variant>

namespace qwp {

namespace {

constexpr double kHyperbolicArgLimit = 350.0;

void guard_hyperbolic(double arg) {
  if (std::abs(arg) > kHyperbolicArgLimit) {
    throw RangeOverflowError("hyperbolic argument exceeds overflow guard");
  }
}

}  // namespace

CoshSinh cosh_sinh(double x) {
  const double ax = std::abs(x);
  if (ax < 1e-8) {
    const double x2 = x * x;
    return CoshSinh{1.0 + 0.5 * x2 * (1.0 + x2 / 12.0),
                    x * (1.0 + x2 / 6.0 * (1.0 + x2 / 20.0))};
  }
  const double e = std::exp(x);
  const double inv = 1.0 / e;
  return CoshSinh{0.5 * (e + inv), 0.5 * (e - inv)};
}

UncertaintyState evolve_linear(const UncertaintyState& s0, double m,
                               double t) {
  const double r = t / m;
  return UncertaintyState{s0.dx2 + r * r * s0.dp2 + 2.0 * r * s0.dxp,
                          s0.dp2, s0.dxp + r * s0.dp2};
}

UncertaintyState evolve_harmonic(const UncertaintyState& s0, double m,
                                 double omega, double t) {
  const double mw = m * omega;
  const double mw2 = mw * mw;
  const double K = s0.dp2 + mw2 * s0.dx2;
  const double Z0 = s0.dp2 - mw2 * s0.dx2;
  const double c = std::cos(2.0 * omega * t);
  const double s = std::sin(2.0 * omega * t);
  const double Z = Z0 * c - s0.dxp * 2.0 * mw * s;
  const double dxp = s0.dxp * c + Z0 / (2.0 * mw) * s;
  return UncertaintyState{(K - Z) / (2.0 * mw2), 0.5 * (K + Z), dxp};
}

UncertaintyState evolve_inverted(const UncertaintyState& s0, double m,
                                 double omega, double t) {
  guard_hyperbolic(2.0 * omega * t);
  const double mw = m * omega;
  const double mw2 = mw * mw;
  const double K = s0.dp2 - mw2 * s0.dx2;
  const double Z0 = s0.dp2 + mw2 * s0.dx2;
  const auto [ch, sh] = cosh_sinh(2.0 * omega * t);
  const double Z = Z0 * ch + s0.dxp * 2.0 * mw * sh;
  const double dxp = s0.dxp * ch + Z0 / (2.0 * mw) * sh;
  return UncertaintyState{(Z - K) / (2.0 * mw2), 0.5 * (Z + K), dxp};
}

UncertaintyState evolve(const UncertaintyState& s0, const PotentialSpec& pot,
                        double t, double regime_eps) {
  const Regime regime = classify_regime(pot, regime_eps);
  if (const auto* h = std::get_if<HarmonicRegime>(&regime)) {
    return evolve_harmonic(s0, pot.m, h->omega, t);
  }
  if (const auto* u = std::get_if<InvertedRegime>(&regime)) {
    return evolve_inverted(s0, pot.m, u->omega, t);
  }
  return evolve_linear(s0, pot.m, t);
}

std::optional<double> time_of_zero_mixed(const UncertaintyState& s0,
                                         const PotentialSpec& pot,
                                         double regime_eps) {
  const Regime regime = classify_regime(pot, regime_eps);
  const double m = pot.m;

  if (const auto* h = std::get_if<HarmonicRegime>(&regime)) {
    const double mw = m * h->omega;
    const double Z0 = s0.dp2 - mw * mw * s0.dx2;
    const double b = Z0 / (2.0 * mw);
    if (s0.dxp == 0.0 && Z0 == 0.0) {
      // Degenerate constant orbit: dxp is identically zero.
      return 0.0;
    }
    // dxp(t) = R sin(2 w t + phi) with R cos(phi) = Z0/(2 m w),
    // R sin(phi) = dxp0; the smallest nonnegative root follows from the
    // two-argument arctangent branch.
    const double phi = std::atan2(s0.dxp, b);
    const double theta = (phi > 0.0) ? (M_PI - phi) : -phi;
    return theta / (2.0 * h->omega);
  }

  if (const auto* u = std::get_if<InvertedRegime>(&regime)) {
    const double mw = m * u->omega;
    const double Z0 = s0.dp2 + mw * mw * s0.dx2;
    const double arg = -2.0 * mw * s0.dxp / Z0;
    if (!(std::abs(arg) < 1.0)) {
      throw UnphysicalStateError(
          "inverted zero-crossing undefined: |2 m w dxp| >= Z0");
    }
    return std::atanh(arg) / (2.0 * u->omega);
  }

  return -m * s0.dxp / s0.dp2;
}

double narrowing_time_bound(const UncertaintyState& s0,
                            const PotentialSpec& pot, double regime_eps) {
  const Regime regime = classify_regime(pot, regime_eps);
  const auto* u = std::get_if<InvertedRegime>(&regime);
  if (u == nullptr) {
    throw UnsupportedRegimeError(
        "narrowing time bound is finite only in the inverted regime");
  }
  const double product = s0.dx2 * s0.dp2;
  const double U = product - s0.dxp * s0.dxp;
  if (!(U > 0.0)) {
    throw UnphysicalStateError("nonpositive uncertainty invariant U");
  }
  const double ratio = U / product;
  if (ratio >= 1.0) return 0.0;
  return std::atanh(std::sqrt(1.0 - ratio)) / (2.0 * u->omega);
}

UncertaintyState canonical_orbit_state(const CanonicalOrbit& orbit,
                                       double tau) {
  const double m = orbit.m;
  const double K = orbit.K;
  const double U = orbit.U;

  if (const auto* h = std::get_if<HarmonicRegime>(&orbit.regime)) {
    const double mw = m * h->omega;
    const double mw2 = mw * mw;
    const double disc = K * K - 4.0 * mw2 * U;
    if (disc < 0.0) {
      throw InvalidOrbitError("harmonic orbit requires K^2 - 4 m^2 w^2 U >= 0");
    }
    const double R = std::sqrt(std::max(disc, 0.0));
    const double c = std::cos(2.0 * h->omega * tau);
    const double s = std::sin(2.0 * h->omega * tau);
    return UncertaintyState{(K - R * c) / (2.0 * mw2), 0.5 * (K + R * c),
                            R / (2.0 * mw) * s};
  }

  if (const auto* u = std::get_if<InvertedRegime>(&orbit.regime)) {
    guard_hyperbolic(2.0 * u->omega * tau);
    const double mw = m * u->omega;
    const double mw2 = mw * mw;
    const double S = std::sqrt(K * K + 4.0 * mw2 * U);
    const auto [ch, sh] = cosh_sinh(2.0 * u->omega * tau);
    return UncertaintyState{(S * ch - K) / (2.0 * mw2), 0.5 * (S * ch + K),
                            S / (2.0 * mw) * sh};
  }

  if (!(K > 0.0)) {
    throw InvalidOrbitError("linear orbit requires K = dp2 > 0");
  }
  const double r = tau / m;
  return UncertaintyState{K * r * r + U / K, K, K * r};
}

CanonicalOrbit canonical_orbit_from_state(const UncertaintyState& s0,
                                          const PotentialSpec& pot,
                                          double regime_eps) {
  const auto [K, U] = constants_of_motion(s0, pot);
  const Regime regime = classify_regime(pot, regime_eps);
  double T = time_of_zero_mixed(s0, pot, regime_eps).value_or(0.0);
  if (const auto* h = std::get_if<HarmonicRegime>(&regime)) {
    // Zeros of dxp alternate between the two extremum types every
    // pi/(2w); the orbit origin is the Z-maximum (dx2-minimum) one.
    const double mw = pot.m * h->omega;
    const UncertaintyState sT = evolve_harmonic(s0, pot.m, h->omega, T);
    if (sT.dp2 - mw * mw * sT.dx2 < 0.0) {
      T += 0.5 * M_PI / h->omega;
    }
  }
  return CanonicalOrbit{regime, pot.m, K, U, T};
}

PhasePoint classical_trajectory(const PhasePoint& q0, const PotentialSpec& pot,
                                double t, double regime_eps) {
  const Regime regime = classify_regime(pot, regime_eps);
  const double m = pot.m;

  if (const auto* h = std::get_if<HarmonicRegime>(&regime)) {
    const double w = h->omega;
    const double xc = -pot.B / (2.0 * pot.A);
    const double xi = q0.x - xc;
    const double c = std::cos(w * t);
    const double s = std::sin(w * t);
    return PhasePoint{xc + xi * c + q0.p / (m * w) * s,
                      q0.p * c - m * w * xi * s};
  }

  if (const auto* u = std::get_if<InvertedRegime>(&regime)) {
    guard_hyperbolic(u->omega * t);
    const double w = u->omega;
    const double xc = -pot.B / (2.0 * pot.A);
    const double xi = q0.x - xc;
    const auto [ch, sh] = cosh_sinh(w * t);
    return PhasePoint{xc + xi * ch + q0.p / (m * w) * sh,
                      q0.p * ch + m * w * xi * sh};
  }

  // Constant force -B: free drift plus uniform acceleration.
  return PhasePoint{q0.x + q0.p / m * t - 0.5 * pot.B / m * t * t,
                    q0.p - pot.B * t};
}

}  // namespace qwp
