#include "qwp/gaussian.hpp"

#include <cmath>
#include <complex>
#include <variant>

#include "fft_util.hpp"

namespace qwp {

std::pair<UncertaintyState, PhasePoint> moments_from_gaussian(
    const GaussianParams& g, double hbar) {
  const double dx2 = 0.5 * g.alpha;
  const double dxp = 2.0 * g.a * hbar * dx2;
  const double dp2 = hbar * hbar / (4.0 * dx2) +
                     4.0 * g.a * g.a * hbar * hbar * dx2;
  return {UncertaintyState{dx2, dp2, dxp}, PhasePoint{g.x0, g.p0}};
}

GaussianParams gaussian_from_moments(const UncertaintyState& s,
                                     const PhasePoint& q, double hbar,
                                     double tol) {
  if (tol < 0.0) tol = 1e-9 * hbar * hbar;
  const double defect =
      s.dx2 * s.dp2 - s.dxp * s.dxp - 0.25 * hbar * hbar;
  if (std::abs(defect) > tol) {
    throw NotGaussianError(
        "moments do not satisfy dx2*dp2 - dxp^2 = hbar^2/4");
  }
  return GaussianParams{2.0 * s.dx2, s.dxp / (2.0 * hbar * s.dx2), q.x, q.p,
                        0.0};
}

GaussianParams evolve_gaussian(const GaussianParams& g,
                               const PotentialSpec& pot, double t,
                               double hbar) {
  const auto [s0, q0] = moments_from_gaussian(g, hbar);
  const UncertaintyState st = evolve(s0, pot, t);
  const PhasePoint qt = classical_trajectory(q0, pot, t);
  GaussianParams out = gaussian_from_moments(st, qt, hbar);
  out.phi = g.phi;
  return out;
}

double chirp_history(double k, const Regime& regime, double m, double hbar,
                     double tau) {
  if (const auto* h = std::get_if<HarmonicRegime>(&regime)) {
    if (k < 1.0) throw InvalidOrbitError("harmonic Gaussian orbit needs k >= 1");
    if (k == 1.0) return 0.0;
    const double c = k / std::sqrt(k * k - 1.0);
    const double theta = 2.0 * h->omega * tau;
    return 0.5 * m * h->omega / hbar * std::sin(theta) /
           (c - std::cos(theta));
  }
  if (const auto* u = std::get_if<InvertedRegime>(&regime)) {
    const double q = k / std::sqrt(k * k + 1.0);
    const auto [ch, sh] = cosh_sinh(2.0 * u->omega * tau);
    return 0.5 * m * u->omega / hbar * sh / (ch - q);
  }
  // Linear regime: k is the momentum variance (Delta p0)^2 itself.
  if (!(k > 0.0)) throw InvalidOrbitError("linear orbit needs (Delta p0)^2 > 0");
  const double w = m * hbar / (2.0 * k);
  return 0.5 * m / hbar * tau / (tau * tau + w * w);
}

ChirpExtrema chirp_extrema(double k, const Regime& regime, double m,
                           double hbar) {
  ChirpExtrema out;
  if (const auto* h = std::get_if<HarmonicRegime>(&regime)) {
    if (k < 1.0) throw InvalidOrbitError("harmonic Gaussian orbit needs k >= 1");
    if (k == 1.0) {
      out.kind = ChirpExtrema::Kind::Flat;
      return out;
    }
    // Stationarity of sin(theta)/(c - cos(theta)) at cos(theta) = 1/c.
    const double theta = std::acos(std::sqrt(k * k - 1.0) / k);
    out.tau_max = theta / (2.0 * h->omega);
    out.a_max = 0.5 * m * h->omega / hbar * std::sqrt(k * k - 1.0);
    out.tau_min = M_PI / h->omega - out.tau_max;
    out.a_min = -out.a_max;
    return out;
  }
  if (const auto* u = std::get_if<InvertedRegime>(&regime)) {
    if (k <= 0.0) {
      out.kind = ChirpExtrema::Kind::Monotone;
      return out;
    }
    const double theta = std::acosh(std::sqrt(k * k + 1.0) / k);
    out.tau_max = theta / (2.0 * u->omega);
    out.a_max = 0.5 * m * u->omega / hbar * std::sqrt(1.0 + k * k);
    out.tau_min = -out.tau_max;
    out.a_min = -out.a_max;
    return out;
  }
  if (!(k > 0.0)) throw InvalidOrbitError("linear orbit needs (Delta p0)^2 > 0");
  out.tau_max = hbar * m / (2.0 * k);
  out.a_max = 0.5 * k / (hbar * hbar);
  out.tau_min = -out.tau_max;
  out.a_min = -out.a_max;
  return out;
}

GaussianClass classify_gaussian(const GaussianParams& g, double m,
                                double omega, double hbar, double tol) {
  const auto [s, q] = moments_from_gaussian(g, hbar);
  (void)q;
  if (std::abs(g.a) > tol) return GaussianClass::General;
  const double target = m * m * omega * omega * s.dx2;
  if (std::abs(s.dp2 - target) <= tol * target) return GaussianClass::Coherent;
  return GaussianClass::Squeezed;
}

GridWavefunction sample_wavefunction(const GaussianParams& g,
                                     const GridSpec& grid, double hbar) {
  const double spread = 8.0 * std::sqrt(g.alpha);
  if (g.x0 - spread < grid.x_min || g.x0 + spread > grid.x_max) {
    throw GridError("grid does not cover +-8 sqrt(alpha) around the packet");
  }
  GridWavefunction psi(grid);
  const double prefactor = std::pow(M_PI * g.alpha, -0.25);
  for (std::size_t j = 0; j < grid.n; ++j) {
    const double d = grid.x(j) - g.x0;
    const double mag = prefactor * std::exp(-d * d / (2.0 * g.alpha));
    const double phase = g.p0 * d / hbar + g.a * d * d + g.phi;
    psi.samples[j] = std::polar(mag, phase);
  }
  double norm2 = 0.0;
  for (const auto& z : psi.samples) norm2 += std::norm(z);
  norm2 *= grid.dx();
  if (std::abs(norm2 - 1.0) > 1e-10) {
    throw GridError("sampled packet is not unit-norm: grid under-resolved");
  }
  return psi;
}

double coherent_eigenvalue_residual(const GaussianParams& g, double m,
                                    double omega, double hbar,
                                    const GridSpec& grid) {
  const GridWavefunction psi = sample_wavefunction(g, grid, hbar);
  const double dx = grid.dx();

  double norm2 = 0.0;
  for (const auto& z : psi.samples) norm2 += std::norm(z);
  norm2 *= dx;
  if (std::abs(norm2 - 1.0) > 1e-8) {
    throw GridError("grid under-resolution: norm deficit above 1e-8");
  }

  // Spectral derivative: dpsi = IFFT(i k FFT(psi)).
  std::vector<std::complex<double>> dpsi = psi.samples;
  detail::fft_forward(dpsi);
  for (std::size_t j = 0; j < grid.n; ++j) {
    dpsi[j] *= std::complex<double>(0.0, grid.k(j));
  }
  detail::fft_backward_normalized(dpsi);

  const std::complex<double> lambda(m * omega * g.x0, g.p0);
  double res2 = 0.0;
  for (std::size_t j = 0; j < grid.n; ++j) {
    const std::complex<double> lhs =
        m * omega * grid.x(j) * psi.samples[j] + hbar * dpsi[j];
    res2 += std::norm((lhs - lambda * psi.samples[j]) / std::sqrt(2.0));
  }
  res2 *= dx;
  return std::sqrt(res2 / norm2);
}

}  // namespace qwp
