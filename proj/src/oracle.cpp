#include "qwp/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "fft_util.hpp"
#include "qwp/analytic.hpp"
#include "qwp/kernels.hpp"

namespace qwp::oracle {

namespace {

constexpr double kEdgeAmplitudeLimit = 1e-6;
constexpr char kSnapshotMagic[8] = {'Q', 'W', 'P', 'L', 'A', 'B', '0', '1'};

std::vector<double> position_weights(const GridSpec& g) {
  std::vector<double> xs(g.n);
  for (std::size_t j = 0; j < g.n; ++j) xs[j] = g.x(j);
  return xs;
}

std::vector<double> wavenumber_weights(const GridSpec& g) {
  std::vector<double> ks(g.n);
  for (std::size_t j = 0; j < g.n; ++j) ks[j] = g.k(j);
  return ks;
}

}  // namespace

// Owns the FFT plans so oracle.hpp does not expose FFTW types.
class PropagatorFft : public detail::InplaceFft {
 public:
  using detail::InplaceFft::InplaceFft;
};

Propagator::Propagator(GridWavefunction psi0, const PotentialFn& V, double m,
                       double hbar, double dt)
    : psi_(std::move(psi0)), dt_(dt) {
  if (!(dt > 0.0)) throw StepSizeError("propagation step must be positive");
  const GridSpec& g = psi_.grid;
  pot_half_.resize(g.n);
  kin_scaled_.resize(g.n);
  const double inv_n = 1.0 / static_cast<double>(g.n);
  for (std::size_t j = 0; j < g.n; ++j) {
    const double vx = V(g.x(j));
    if (!std::isfinite(vx)) {
      throw GridError("potential is not finite on the grid");
    }
    pot_half_[j] = std::polar(1.0, -0.5 * vx * dt / hbar);
    const double k = g.k(j);
    // Kinetic phase exp(-i hbar k^2 dt / (2m)) with the inverse-FFT
    // normalization folded in.
    kin_scaled_[j] =
        std::polar(inv_n, -0.5 * hbar * k * k * dt / m);
  }
  fft_ = std::make_unique<PropagatorFft>(psi_.samples.data(), g.n);
}

Propagator::~Propagator() = default;

void Propagator::step() {
  auto* data = psi_.samples.data();
  const std::size_t n = psi_.grid.n;
  kernels::complex_mul_inplace(data, pot_half_.data(), n);
  fft_->forward();
  kernels::complex_mul_inplace(data, kin_scaled_.data(), n);
  fft_->backward();
  kernels::complex_mul_inplace(data, pot_half_.data(), n);
  t_ += dt_;
  if (std::abs(psi_.samples.front()) > kEdgeAmplitudeLimit ||
      std::abs(psi_.samples.back()) > kEdgeAmplitudeLimit) {
    throw GridError("boundary contamination: packet reached the grid edge");
  }
}

void Propagator::run(std::size_t steps) {
  for (std::size_t i = 0; i < steps; ++i) step();
}

GridWavefunction propagate(const GridWavefunction& psi0, const PotentialFn& V,
                           double m, double hbar, double dt,
                           std::size_t steps) {
  Propagator prop(psi0, V, m, hbar, dt);
  prop.run(steps);
  return prop.psi();
}

MomentSet measure_moments(const GridWavefunction& psi, double hbar) {
  const GridSpec& g = psi.grid;
  const double dx = g.dx();
  const auto xs = position_weights(g);

  const auto xm = kernels::weighted_abs2_sums(psi.samples.data(), xs.data(),
                                              g.n);
  const double norm2 = xm.s0 * dx;
  if (std::abs(norm2 - 1.0) > 1e-6) {
    throw GridError("norm deficit: wavefunction is not unit-normalized");
  }

  MomentSet out;
  out.mean_x = xm.s1 / xm.s0;
  out.mean_x2 = xm.s2 / xm.s0;

  // Momentum moments in the spectral representation. Parseval makes the
  // normalization cancel in the ratios.
  std::vector<std::complex<double>> phi = psi.samples;
  detail::fft_forward(phi);
  const auto ks = wavenumber_weights(g);
  const auto km = kernels::weighted_abs2_sums(phi.data(), ks.data(), g.n);
  out.mean_p = hbar * km.s1 / km.s0;
  out.mean_p2 = hbar * hbar * km.s2 / km.s0;

  // d psi / dx via one spectral derivative, then
  // Re <psi| x (-i hbar d/dx) |psi> = hbar sum x Im(conj(psi) dpsi) dx.
  for (std::size_t j = 0; j < g.n; ++j) {
    phi[j] *= std::complex<double>(0.0, ks[j]);
  }
  detail::fft_backward_normalized(phi);
  const double sym = kernels::weighted_im_conj_dot(psi.samples.data(),
                                                   phi.data(), xs.data(), g.n);
  out.mean_sym_xp = hbar * sym * dx / norm2;
  return out;
}

namespace {

struct MomentRhs {
  double A;
  double m;

  std::array<double, 3> operator()(const std::array<double, 3>& y) const {
    return {2.0 * y[2] / m, -4.0 * A * y[2], y[1] / m - 2.0 * A * y[0]};
  }
};

template <typename Rhs, std::size_t N>
std::array<double, N> rk4_step(const Rhs& f, const std::array<double, N>& y,
                               double h) {
  const auto k1 = f(y);
  std::array<double, N> tmp;
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
  const auto k2 = f(tmp);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
  const auto k3 = f(tmp);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * k3[i];
  const auto k4 = f(tmp);
  std::array<double, N> out;
  for (std::size_t i = 0; i < N; ++i) {
    out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
  }
  return out;
}

}  // namespace

UncertaintyState integrate_moment_odes(const UncertaintyState& s0, double A,
                                       double m, double t, double dt) {
  if (!(dt > 0.0) || dt > 1e-3) {
    throw StepSizeError("moment-ODE step must satisfy 0 < dt <= 1e-3");
  }
  if (t == 0.0) return s0;
  const auto steps =
      static_cast<std::size_t>(std::ceil(std::abs(t) / dt - 1e-12));
  const double h = t / static_cast<double>(steps);
  const MomentRhs rhs{A, m};
  std::array<double, 3> y{s0.dx2, s0.dp2, s0.dxp};
  for (std::size_t i = 0; i < steps; ++i) y = rk4_step(rhs, y, h);
  return UncertaintyState{y[0], y[1], y[2]};
}

PhasePoint integrate_newton_odes(const PhasePoint& q0,
                                 const PotentialSpec& pot, double t,
                                 double dt) {
  if (!(dt > 0.0)) throw StepSizeError("Newton-ODE step must be positive");
  if (t == 0.0) return q0;
  const auto steps =
      static_cast<std::size_t>(std::ceil(std::abs(t) / dt - 1e-12));
  const double h = t / static_cast<double>(steps);
  const double A = pot.A, B = pot.B, m = pot.m;
  auto rhs = [A, B, m](const std::array<double, 2>& y) {
    return std::array<double, 2>{y[1] / m, -2.0 * A * y[0] - B};
  };
  std::array<double, 2> y{q0.x, q0.p};
  for (std::size_t i = 0; i < steps; ++i) y = rk4_step(rhs, y, h);
  return PhasePoint{y[0], y[1]};
}

double verify_general_first_derivative(const GridWavefunction& psi0,
                                       const PotentialFn& V, double m,
                                       double hbar, double dt,
                                       std::size_t steps) {
  Propagator prop(psi0, V, m, hbar, dt);
  std::vector<double> dx2(steps + 1);
  std::vector<double> dxp(steps + 1);
  {
    const auto ms = measure_moments(prop.psi(), hbar);
    const auto s = ms.state();
    dx2[0] = s.dx2;
    dxp[0] = s.dxp;
  }
  for (std::size_t i = 1; i <= steps; ++i) {
    prop.step();
    const auto ms = measure_moments(prop.psi(), hbar);
    const auto s = ms.state();
    dx2[i] = s.dx2;
    dxp[i] = s.dxp;
  }
  double max_dev = 0.0;
  for (std::size_t i = 1; i + 1 <= steps; ++i) {
    const double fd = (dx2[i + 1] - dx2[i - 1]) / (2.0 * dt);
    max_dev = std::max(max_dev, std::abs(fd - 2.0 * dxp[i] / m));
  }
  return max_dev;
}

std::vector<ConvergenceCase> convergence_report(
    const GaussianParams& g0, const PotentialSpec& pot, double t_end,
    double x_min, double x_max, const std::vector<double>& dt_list,
    const std::vector<std::size_t>& n_list, double hbar) {
  if (dt_list.empty() || n_list.empty()) return {};
  const auto [s0, q0] = moments_from_gaussian(g0, hbar);
  const UncertaintyState ref = evolve(s0, pot, t_end);
  const PotentialFn V = PotentialFn::quadratic_exact(pot);

  auto run_case = [&](double dt, std::size_t n) {
    const GridSpec grid = GridSpec::checked(x_min, x_max, n);
    GridWavefunction psi = sample_wavefunction(g0, grid, hbar);
    const auto steps =
        static_cast<std::size_t>(std::llround(t_end / dt));
    psi = propagate(psi, V, pot.m, hbar, dt, steps);
    const auto s = measure_moments(psi, hbar).state();
    const double err = std::max({std::abs(s.dx2 - ref.dx2),
                                 std::abs(s.dp2 - ref.dp2),
                                 std::abs(s.dxp - ref.dxp)});
    return ConvergenceCase{dt, n, err};
  };

  std::vector<ConvergenceCase> table;
  const std::size_t n_fixed = *std::max_element(n_list.begin(), n_list.end());
  for (double dt : dt_list) table.push_back(run_case(dt, n_fixed));
  const double dt_fixed = *std::min_element(dt_list.begin(), dt_list.end());
  for (std::size_t n : n_list) table.push_back(run_case(dt_fixed, n));
  return table;
}

GridSpec suggest_grid(const UncertaintyState& s0, const PhasePoint& q0,
                      const PotentialSpec& pot, double t_end, double hbar,
                      std::size_t n) {
  double x_lo = q0.x, x_hi = q0.x;
  double sigma_max = std::sqrt(s0.dx2);
  double p_scale = std::sqrt(s0.dp2) + std::abs(q0.p);
  const int samples = 256;
  for (int i = 0; i <= samples; ++i) {
    const double t = t_end * static_cast<double>(i) / samples;
    const UncertaintyState st = evolve(s0, pot, t);
    const PhasePoint qt = classical_trajectory(q0, pot, t);
    x_lo = std::min(x_lo, qt.x);
    x_hi = std::max(x_hi, qt.x);
    sigma_max = std::max(sigma_max, std::sqrt(st.dx2));
    p_scale = std::max(p_scale, std::sqrt(st.dp2) + std::abs(qt.p));
  }
  const double pad = 12.0 * sigma_max;
  const GridSpec grid = GridSpec::checked(x_lo - pad, x_hi + pad, n);
  // Spectral coverage: the occupied band must fit well inside the Nyquist
  // wavenumber.
  const double k_needed = (p_scale * 12.0) / hbar;
  const double k_max = M_PI / grid.dx();
  if (k_needed > 0.9 * k_max) {
    throw GridError("suggested grid cannot resolve the momentum content");
  }
  return grid;
}

GridWavefunction sample_two_gaussian_superposition(double separation,
                                                   double alpha,
                                                   const GridSpec& grid,
                                                   double hbar) {
  const GaussianParams left =
      GaussianParams::checked(alpha, 0.0, -0.5 * separation, 0.0);
  const GaussianParams right =
      GaussianParams::checked(alpha, 0.0, 0.5 * separation, 0.0);
  const GridWavefunction a = sample_wavefunction(left, grid, hbar);
  const GridWavefunction b = sample_wavefunction(right, grid, hbar);
  GridWavefunction out(grid);
  for (std::size_t j = 0; j < grid.n; ++j) {
    out.samples[j] = a.samples[j] + b.samples[j];
  }
  const double norm2 =
      kernels::abs2_sum(out.samples.data(), grid.n) * grid.dx();
  const double scale = 1.0 / std::sqrt(norm2);
  for (auto& z : out.samples) z *= scale;
  return out;
}

void dump_snapshot(const GridWavefunction& psi, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open snapshot file for writing: " + path);
  f.write(kSnapshotMagic, sizeof(kSnapshotMagic));
  const std::size_t n = psi.grid.n;
  std::vector<double> col(n);
  for (std::size_t j = 0; j < n; ++j) col[j] = psi.grid.x(j);
  f.write(reinterpret_cast<const char*>(col.data()),
          static_cast<std::streamsize>(n * sizeof(double)));
  for (std::size_t j = 0; j < n; ++j) col[j] = psi.samples[j].real();
  f.write(reinterpret_cast<const char*>(col.data()),
          static_cast<std::streamsize>(n * sizeof(double)));
  for (std::size_t j = 0; j < n; ++j) col[j] = psi.samples[j].imag();
  f.write(reinterpret_cast<const char*>(col.data()),
          static_cast<std::streamsize>(n * sizeof(double)));
  if (!f) throw IoError("snapshot write failed: " + path);
}

GridWavefunction read_snapshot(const std::string& path) {
  std::ifstream f(path, std::ios::binary | std::ios::ate);
  if (!f) throw IoError("cannot open snapshot file: " + path);
  const auto size = static_cast<std::size_t>(f.tellg());
  if (size < sizeof(kSnapshotMagic) ||
      (size - sizeof(kSnapshotMagic)) % (3 * sizeof(double)) != 0) {
    throw IoError("snapshot file has invalid size: " + path);
  }
  f.seekg(0);
  char magic[8];
  f.read(magic, sizeof(magic));
  if (std::memcmp(magic, kSnapshotMagic, sizeof(magic)) != 0) {
    throw IoError("snapshot file has wrong magic: " + path);
  }
  const std::size_t n = (size - sizeof(kSnapshotMagic)) / (3 * sizeof(double));
  std::vector<double> xs(n), re(n), im(n);
  f.read(reinterpret_cast<char*>(xs.data()),
         static_cast<std::streamsize>(n * sizeof(double)));
  f.read(reinterpret_cast<char*>(re.data()),
         static_cast<std::streamsize>(n * sizeof(double)));
  f.read(reinterpret_cast<char*>(im.data()),
         static_cast<std::streamsize>(n * sizeof(double)));
  if (!f) throw IoError("snapshot read failed: " + path);
  if (n < 2) throw IoError("snapshot too small: " + path);
  const double dx = xs[1] - xs[0];
  const GridSpec grid =
      GridSpec::checked(xs[0], xs[0] + dx * static_cast<double>(n), n);
  GridWavefunction psi(grid);
  for (std::size_t j = 0; j < n; ++j) {
    psi.samples[j] = std::complex<double>(re[j], im[j]);
  }
  return psi;
}

}  // namespace qwp::oracle
