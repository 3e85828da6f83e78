#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qwp/gaussian.hpp"
#include "qwp/grid.hpp"
#include "qwp/potential.hpp"
#include "qwp/state.hpp"

namespace qwp::oracle {

/// Arbitrary 1-D potential for the grid propagator. When the potential is
/// known to be exactly quadratic, the coefficients are carried so callers
/// can pick analytic references.
struct QuadraticCoeffs {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
};

struct PotentialFn {
  std::function<double(double)> v;
  std::optional<QuadraticCoeffs> quadratic;

  static PotentialFn quadratic_exact(const PotentialSpec& pot) {
    const double A = pot.A, B = pot.B, C = pot.C;
    return PotentialFn{[A, B, C](double x) { return (A * x + B) * x + C; },
                       QuadraticCoeffs{A, B, C}};
  }

  static PotentialFn from_callable(std::function<double(double)> f) {
    return PotentialFn{std::move(f), std::nullopt};
  }

  double operator()(double x) const { return v(x); }
};

/// Raw first and second moments measured on a grid wavefunction plus the
/// derived uncertainty triple and phase-space point. Position moments come
/// from quadrature in x-space, momentum moments from the spectral
/// representation, and the symmetrized cross moment from
/// Re <psi| x (-i hbar d/dx) |psi>.
struct MomentSet {
  double mean_x = 0.0;
  double mean_p = 0.0;
  double mean_x2 = 0.0;
  double mean_p2 = 0.0;
  double mean_sym_xp = 0.0;

  UncertaintyState state() const {
    return UncertaintyState{mean_x2 - mean_x * mean_x,
                            mean_p2 - mean_p * mean_p,
                            mean_sym_xp - mean_x * mean_p};
  }
  PhasePoint phase() const { return PhasePoint{mean_x, mean_p}; }
};

/// Strang-split Fourier propagator for the 1-D time-dependent Schroedinger
/// equation on a periodic grid. One instance owns its wavefunction and FFT
/// plans; a wavefunction is driven by at most one propagator at a time.
/// Each step checks the grid edges and throws GridError if the packet
/// reaches them (amplitude above 1e-6).
class Propagator {
 public:
  Propagator(GridWavefunction psi0, const PotentialFn& V, double m,
             double hbar, double dt);
  ~Propagator();
  Propagator(const Propagator&) = delete;
  Propagator& operator=(const Propagator&) = delete;

  void step();
  void run(std::size_t steps);

  const GridWavefunction& psi() const { return psi_; }
  double time() const { return t_; }

 private:
  GridWavefunction psi_;
  std::vector<std::complex<double>> pot_half_;
  std::vector<std::complex<double>> kin_scaled_;  // kinetic phase / n
  std::unique_ptr<class PropagatorFft> fft_;
  double dt_ = 0.0;
  double t_ = 0.0;
};

/// Propagate `steps` Strang steps of size dt and return the evolved
/// wavefunction. Norm is preserved to 1e-8; global error is O(dt^2).
GridWavefunction propagate(const GridWavefunction& psi0, const PotentialFn& V,
                           double m, double hbar, double dt,
                           std::size_t steps);

/// Measure first and second moments. Throws GridError if the L2 norm
/// deviates from 1 by more than 1e-6.
MomentSet measure_moments(const GridWavefunction& psi, double hbar);

/// Classical fixed-step RK4 on the quadratic-regime moment system
///   d(dx2)/dt = 2 dxp / m,
///   d(dp2)/dt = -4 A dxp,
///   d(dxp)/dt = dp2 / m - 2 A dx2.
/// Requires dt <= 1e-3; the constraint 2 m A dx2 + dp2 stays constant to
/// 1e-9 over t <= 10.
UncertaintyState integrate_moment_odes(const UncertaintyState& s0, double A,
                                       double m, double t, double dt);

/// Exact classical RK4 companion for the expectation values (test oracle
/// for classical_trajectory).
PhasePoint integrate_newton_odes(const PhasePoint& q0,
                                 const PotentialSpec& pot, double t,
                                 double dt);

/// Propagate while recording dx2(t) and dxp(t) each step; returns the
/// maximum over interior samples of
///   |centered d(dx2)/dt - 2 dxp / m|,
/// which vanishes for any potential, not only quadratic ones.
double verify_general_first_derivative(const GridWavefunction& psi0,
                                       const PotentialFn& V, double m,
                                       double hbar, double dt,
                                       std::size_t steps);

/// One row of a convergence study against the analytic solution.
struct ConvergenceCase {
  double dt = 0.0;
  std::size_t n = 0;
  double err = 0.0;  ///< max abs moment deviation at final time
};

/// Error tables vs the closed-form solution for a Gaussian packet in an
/// exactly quadratic potential: a dt sweep at the largest n, then an
/// n sweep at the smallest dt. Strang order shows as err ratio ~4 per dt
/// halving; the n sweep saturates at the spectral floor.
std::vector<ConvergenceCase> convergence_report(
    const GaussianParams& g0, const PotentialSpec& pot, double t_end,
    double x_min, double x_max, const std::vector<double>& dt_list,
    const std::vector<std::size_t>& n_list, double hbar);

/// Pick a grid that keeps the packet away from the edges over [0, t_end]:
/// the domain is sized from the analytic moment prediction itself (the
/// inverted regime grows exponentially, so a static default cannot work).
GridSpec suggest_grid(const UncertaintyState& s0, const PhasePoint& q0,
                      const PotentialSpec& pot, double t_end, double hbar,
                      std::size_t n = 4096);

/// Equal-weight superposition of two Gaussians centered at +-separation/2,
/// L2-normalized. A non-Gaussian packet with U > hbar^2/4.
GridWavefunction sample_two_gaussian_superposition(double separation,
                                                   double alpha,
                                                   const GridSpec& grid,
                                                   double hbar);

/// Binary snapshot of (x, Re psi, Im psi) as three little-endian float64
/// columns behind the 8-byte magic "QWPLAB01".
void dump_snapshot(const GridWavefunction& psi, const std::string& path);
GridWavefunction read_snapshot(const std::string& path);

}  // namespace qwp::oracle
