#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qwp/analytic.hpp"
#include "qwp/oracle.hpp"
#include "test_util.hpp"

using namespace qwp;
using test::close;
using test::close_abs;
using test::random_potential;
using test::random_state;
using test::random_time;
using test::RegimeKind;
using test::states_close;

namespace {

constexpr RegimeKind kAllRegimes[] = {RegimeKind::Linear, RegimeKind::Harmonic,
                                      RegimeKind::Inverted};

// Bisection on a sign change; the independent root oracle for the closed
// zero-crossing formulas.
template <typename F>
double bisect(F&& f, double lo, double hi, double tol = 1e-13) {
  double flo = f(lo);
  REQUIRE(flo * f(hi) <= 0.0);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (flo * f(mid) <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
      flo = f(lo);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("cosh_sinh agrees with the standard library") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> expo(-10.0, 2.5);
  for (int i = 0; i < 2000; ++i) {
    const double x = std::copysign(std::pow(10.0, expo(rng)),
                                   (i % 2 == 0) ? 1.0 : -1.0);
    const auto [c, s] = cosh_sinh(x);
    CHECK(close(c, std::cosh(x), 1e-14));
    CHECK(close_abs(s, std::sinh(x), 1e-14 * std::max(1.0, std::cosh(x))));
  }
}

TEST_CASE("evolve_linear closed form") {
  const UncertaintyState s0{0.5, 0.5, 0.0};
  const auto id = evolve_linear(s0, 1.0, 0.0);
  CHECK(id.dx2 == 0.5);
  CHECK(id.dp2 == 0.5);
  CHECK(id.dxp == 0.0);

  const auto s2 = evolve_linear(s0, 1.0, 2.0);
  CHECK(s2.dx2 == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(s2.dp2 == 0.5);
  CHECK(s2.dxp == doctest::Approx(1.0).epsilon(1e-15));

  // Narrowing packet reaches its minimum dx2 = U/dp2 at T = -m dxp0/dp20.
  const UncertaintyState n0{1.0, 2.0, -1.0};
  const auto sT = evolve_linear(n0, 1.0, 0.5);
  CHECK(close_abs(sT.dx2, 0.5, 1e-12));
  CHECK(sT.dp2 == 2.0);
  CHECK(close_abs(sT.dxp, 0.0, 1e-12));
}

TEST_CASE("evolve_harmonic: constant coherent orbit and the k=2 orbit") {
  const UncertaintyState coherent{0.5, 0.5, 0.0};
  for (double t : {0.3, 1.7, -4.0, 9.9}) {
    const auto s = evolve_harmonic(coherent, 1.0, 1.0, t);
    CHECK(close_abs(s.dx2, 0.5, 1e-15));
    CHECK(close_abs(s.dp2, 0.5, 1e-15));
    CHECK(close_abs(s.dxp, 0.0, 1e-15));
  }

  // K=2, U=1/4 orbit at tau=0; the paper's block gives dx2 in closed form.
  const double r3 = std::sqrt(3.0);
  const UncertaintyState k2{0.5 * (2.0 - r3), 0.5 * (2.0 + r3), 0.0};
  const auto q = evolve_harmonic(k2, 1.0, 1.0, M_PI / 4.0);
  CHECK(close_abs(q.dx2, 1.0, 1e-14));
  CHECK(close_abs(q.dp2, 1.0, 1e-14));
  CHECK(close_abs(q.dxp, 0.5 * r3, 1e-14));

  // RK4 oracle on the moment system confirms the same point.
  const auto rk = oracle::integrate_moment_odes(k2, 0.5, 1.0, M_PI / 4.0, 1e-4);
  CHECK(states_close(q, rk, 1e-10));
}

TEST_CASE("evolve_harmonic conserves K = dp2 + m^2 w^2 dx2 exactly") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto s0 = random_state(rng);
    const auto pot = random_potential(rng, RegimeKind::Harmonic);
    const double w = regime_omega(classify_regime(pot));
    const auto s1 = evolve_harmonic(s0, pot.m, w, random_time(rng, pot));
    const double mw2 = pot.m * pot.m * w * w;
    CHECK(close(s1.dp2 + mw2 * s1.dx2, s0.dp2 + mw2 * s0.dx2, 1e-15));
  }
}

TEST_CASE("evolve_inverted closed form") {
  const UncertaintyState s0{0.5, 0.5, 0.0};
  const auto id = evolve_inverted(s0, 1.0, 1.0, 0.0);
  CHECK(id.dx2 == 0.5);
  CHECK(id.dxp == 0.0);

  const auto s1 = evolve_inverted(s0, 1.0, 1.0, 1.0);
  CHECK(close_abs(s1.dx2, 0.5 * std::cosh(2.0), 1e-13));
  CHECK(close_abs(s1.dp2, 0.5 * std::cosh(2.0), 1e-13));
  CHECK(close_abs(s1.dxp, 0.5 * std::sinh(2.0), 1e-13));

  CHECK_THROWS_AS(evolve_inverted(s0, 1.0, 1.0, 200.0), RangeOverflowError);
}

TEST_CASE("evolve dispatches by regime and ignores B, C") {
  std::mt19937_64 rng(7);
  const auto s0 = random_state(rng);
  CHECK(states_close(evolve(s0, PotentialSpec::checked(0, 5, 3, 1), 0.0), s0,
                     0.0));
  // Uncertainty dynamics identical for every V = Bx + C.
  const auto a = evolve(s0, PotentialSpec::checked(0, 5, 3, 1), 1.3);
  const auto b = evolve_linear(s0, 1.0, 1.3);
  CHECK(a.dx2 == b.dx2);
  CHECK(a.dp2 == b.dp2);
  CHECK(a.dxp == b.dxp);
}

TEST_CASE("harmonic uncertainties are periodic with pi/omega") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    const auto s0 = random_state(rng);
    const auto pot = random_potential(rng, RegimeKind::Harmonic);
    const double w = regime_omega(classify_regime(pot));
    const auto s1 = evolve(s0, pot, M_PI / w);
    CHECK(states_close(s1, s0, 1e-10));
  }
  // One RK4 spot check of the full period.
  const UncertaintyState s0{1.1, 0.9, 0.4};
  const auto rk = oracle::integrate_moment_odes(s0, 0.5, 1.0, M_PI, 1e-4);
  CHECK(states_close(rk, s0, 1e-10));
}

TEST_CASE("group law: evolve(t1+t2) == evolve(t2) after evolve(t1)") {
  std::mt19937_64 rng(13);
  for (RegimeKind kind : kAllRegimes) {
    for (int i = 0; i < 100; ++i) {
      const auto s0 = random_state(rng);
      const auto pot = random_potential(rng, kind);
      const double t1 = 0.5 * random_time(rng, pot);
      const double t2 = 0.5 * random_time(rng, pot);
      const auto once = evolve(s0, pot, t1 + t2);
      const auto twice = evolve(evolve(s0, pot, t1), pot, t2);
      CHECK(states_close(once, twice, 1e-10));
    }
  }
}

TEST_CASE("K and U conserved along analytic trajectories") {
  std::mt19937_64 rng(17);
  for (RegimeKind kind : kAllRegimes) {
    for (int i = 0; i < 1000; ++i) {
      const auto s0 = random_state(rng);
      const auto pot = random_potential(rng, kind);
      const double t = random_time(rng, pot);
      const auto c0 = constants_of_motion(s0, pot);
      const auto c1 = constants_of_motion(evolve(s0, pot, t), pot);
      CHECK(std::abs(c1.K - c0.K) <= 1e-10 * std::max(1.0, std::abs(c0.K)));
      CHECK(std::abs(c1.U - c0.U) <= 1e-10 * std::max(1.0, std::abs(c0.U)));
    }
  }
}

TEST_CASE("uncertainty margin never dips below -1e-9 along trajectories") {
  std::mt19937_64 rng(19);
  for (RegimeKind kind : kAllRegimes) {
    for (int i = 0; i < 300; ++i) {
      const auto s0 = random_state(rng);
      const auto pot = random_potential(rng, kind);
      const auto s1 = evolve(s0, pot, random_time(rng, pot));
      CHECK(check_generalized_uncertainty(s1, 1.0) >= -1e-9);
    }
  }
}

TEST_CASE("constraint law: d/dt (2mA dx2 + dp2) = 0 by finite differences") {
  std::mt19937_64 rng(23);
  const double h = 1e-4;
  for (RegimeKind kind : kAllRegimes) {
    for (int i = 0; i < 50; ++i) {
      const auto s0 = random_state(rng);
      const auto pot = random_potential(rng, kind);
      const double t = 0.5 * random_time(rng, pot);
      const auto plus = evolve(s0, pot, t + h);
      const auto minus = evolve(s0, pot, t - h);
      const double kplus = 2.0 * pot.m * pot.A * plus.dx2 + plus.dp2;
      const double kminus = 2.0 * pot.m * pot.A * minus.dx2 + minus.dp2;
      CHECK(close_abs((kplus - kminus) / (2.0 * h), 0.0, 1e-6));
    }
  }
}

TEST_CASE("first-derivative law: d(dx2)/dt = 2 dxp / m on all regimes") {
  std::mt19937_64 rng(29);
  const double h = 1e-4;
  for (RegimeKind kind : kAllRegimes) {
    for (int i = 0; i < 50; ++i) {
      const auto s0 = random_state(rng);
      const auto pot = random_potential(rng, kind);
      const double t = 0.5 * random_time(rng, pot);
      const auto mid = evolve(s0, pot, t);
      const double fd =
          (evolve(s0, pot, t + h).dx2 - evolve(s0, pot, t - h).dx2) / (2.0 * h);
      CHECK(close_abs(fd, 2.0 * mid.dxp / pot.m, 1e-6));
    }
  }
}

TEST_CASE("minimum product: dx2 dp2 = U wherever the mixed part vanishes") {
  std::mt19937_64 rng(31);
  for (RegimeKind kind : kAllRegimes) {
    for (int i = 0; i < 300; ++i) {
      const auto s0 = random_state(rng);
      const auto pot = random_potential(rng, kind);
      const auto T = time_of_zero_mixed(s0, pot);
      REQUIRE(T.has_value());
      const auto sT = evolve(s0, pot, *T);
      const double U = constants_of_motion(s0, pot).U;
      CHECK(close_abs(sT.dxp, 0.0, 1e-10));
      CHECK(std::abs(sT.dx2 * sT.dp2 - U) <= 1e-10 * U);
    }
  }
}

TEST_CASE("mixed uncertainty strictly increases: linear and inverted") {
  std::mt19937_64 rng(37);
  for (RegimeKind kind : {RegimeKind::Linear, RegimeKind::Inverted}) {
    for (int i = 0; i < 50; ++i) {
      const auto s0 = random_state(rng);
      const auto pot = random_potential(rng, kind);
      double prev = evolve(s0, pot, -2.0).dxp;
      for (int j = 1; j <= 40; ++j) {
        const double t = -2.0 + 4.0 * j / 40.0;
        const double cur = evolve(s0, pot, t).dxp;
        CHECK(cur > prev);
        prev = cur;
      }
    }
  }
}

TEST_CASE("inverted ratio dx2/dp2 tends to 1/(m w)^2") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> kdist(-3.0, 3.0);
  for (int i = 0; i < 50; ++i) {
    const double omega = std::uniform_real_distribution<double>(0.3, 2.0)(rng);
    const double m = std::uniform_real_distribution<double>(0.5, 2.0)(rng);
    double K = kdist(rng);
    if (K == 0.0) K = 1.0;
    const CanonicalOrbit orbit{InvertedRegime{omega}, m, K, 0.25, 0.0};
    const auto s = canonical_orbit_state(orbit, 20.0 / omega);
    const double target = 1.0 / (m * m * omega * omega);
    CHECK(std::abs(s.dx2 / s.dp2 - target) <= 1e-8 * target);
  }
}

TEST_CASE("time_of_zero_mixed: linear") {
  const auto T = time_of_zero_mixed(UncertaintyState{1, 2, -1},
                                    PotentialSpec::free_particle());
  REQUIRE(T.has_value());
  CHECK(*T == 0.5);
  // Positive initial mixed part puts the zero in the past.
  const auto Tneg = time_of_zero_mixed(UncertaintyState{1, 2, 1},
                                       PotentialSpec::free_particle());
  CHECK(*Tneg == -0.5);
}

TEST_CASE("time_of_zero_mixed: harmonic smallest nonnegative root") {
  const PotentialSpec pot = PotentialSpec::harmonic(1.0);
  // Degenerate constant orbit: dxp identically zero, T = 0.
  const auto T0 = time_of_zero_mixed(UncertaintyState{0.5, 0.5, 0.0}, pot);
  REQUIRE(T0.has_value());
  CHECK(*T0 == 0.0);

  std::mt19937_64 rng(43);
  for (int i = 0; i < 100; ++i) {
    const auto s0 = random_state(rng);
    const auto p = random_potential(rng, RegimeKind::Harmonic);
    const auto T = time_of_zero_mixed(s0, p);
    REQUIRE(T.has_value());
    CHECK(*T >= 0.0);
    const double w = regime_omega(classify_regime(p));
    CHECK(*T <= M_PI / w + 1e-12);
    CHECK(close_abs(evolve(s0, p, *T).dxp, 0.0, 1e-10));
    // No earlier root: the sinusoid keeps one sign on (0, T).
    if (*T > 1e-6) {
      const int sign0 = spreading_sign(s0);
      for (int j = 1; j < 8; ++j) {
        const double t = *T * j / 8.0;
        CHECK(spreading_sign(evolve(s0, p, t)) == sign0);
      }
    }
  }
}

TEST_CASE("time_of_zero_mixed: inverted vs bisection oracle") {
  const PotentialSpec pot = PotentialSpec::inverted(1.0);
  const UncertaintyState s0{1.0, 2.0, -1.0};
  const auto T = time_of_zero_mixed(s0, pot);
  REQUIRE(T.has_value());
  // artanh(2/3)/2; bisection on evolve_inverted's dxp froze this value.
  CHECK(close_abs(*T, 0.40235947810852535, 1e-10));
  const double Tb =
      bisect([&](double t) { return evolve(s0, pot, t).dxp; }, 0.0, 2.0);
  CHECK(close_abs(*T, Tb, 1e-10));
}

TEST_CASE("narrowing_time_bound in the inverted regime") {
  const PotentialSpec pot = PotentialSpec::inverted(1.0);
  // dxp = 0: the product already sits at U, nothing narrows.
  CHECK(narrowing_time_bound(UncertaintyState{0.5, 0.5, 0.0}, pot) == 0.0);

  // Product twice the invariant: T_max = artanh(1/sqrt(2))/2.
  const double dxp = -std::sqrt(0.125);  // product 0.25, U = 0.125
  const double tmax =
      narrowing_time_bound(UncertaintyState{0.5, 0.5, dxp}, pot);
  CHECK(close_abs(tmax, 0.5 * std::atanh(1.0 / std::sqrt(2.0)), 1e-14));
  CHECK(close_abs(tmax, 0.440687, 1e-6));

  // Monotone in the product at fixed U.
  double prev = 0.0;
  for (double factor = 2.0; factor <= 1e6; factor *= 10.0) {
    const double dx2 = std::sqrt(factor) * 0.5;
    const double dp2 = std::sqrt(factor) * 0.5;
    const double U = 0.125;
    const double mixed = -std::sqrt(dx2 * dp2 - U);
    const double bound =
        narrowing_time_bound(UncertaintyState{dx2, dp2, mixed}, pot);
    CHECK(bound > prev);
    prev = bound;
  }

  CHECK_THROWS_AS(narrowing_time_bound(UncertaintyState{0.5, 0.5, 0.0},
                                       PotentialSpec::free_particle()),
                  UnsupportedRegimeError);
  CHECK_THROWS_AS(narrowing_time_bound(UncertaintyState{0.5, 0.5, 0.0},
                                       PotentialSpec::harmonic(1.0)),
                  UnsupportedRegimeError);
}

TEST_CASE("canonical orbits: product minimum at tau = 0") {
  // Linear: dx2(0) = U/K.
  const auto lin = canonical_orbit_state(
      CanonicalOrbit{LinearRegime{}, 1.0, 2.0, 1.0, 0.0}, 0.0);
  CHECK(lin.dx2 == 0.5);
  CHECK(lin.dp2 == 2.0);
  CHECK(lin.dxp == 0.0);

  // Harmonic k=2 orbit at quarter period: extrema swap.
  const double r3 = std::sqrt(3.0);
  const auto harm = canonical_orbit_state(
      CanonicalOrbit{HarmonicRegime{1.0}, 1.0, 2.0, 0.25, 0.0}, 0.5 * M_PI);
  CHECK(close_abs(harm.dx2, 0.5 * (2.0 + r3), 1e-14));
  CHECK(close_abs(harm.dp2, 0.5 * (2.0 - r3), 1e-14));
  CHECK(close_abs(harm.dxp, 0.0, 1e-14));

  // Inverted K=0 orbit equals evolve_inverted seeded at tau = 0.
  const CanonicalOrbit inv{InvertedRegime{1.0}, 1.0, 0.0, 0.25, 0.0};
  const auto s1 = canonical_orbit_state(inv, 1.0);
  const auto ref = evolve_inverted(canonical_orbit_state(inv, 0.0), 1.0, 1.0, 1.0);
  CHECK(states_close(s1, ref, 1e-13));
  CHECK(close_abs(s1.dx2, 1.881097, 1e-6));
  CHECK(close_abs(s1.dxp, 1.813430, 1e-6));

  CHECK_THROWS_AS(canonical_orbit_state(
                      CanonicalOrbit{HarmonicRegime{1.0}, 1.0, 0.5, 0.25, 0.0},
                      0.0),
                  InvalidOrbitError);
  CHECK_THROWS_AS(canonical_orbit_state(
                      CanonicalOrbit{LinearRegime{}, 1.0, -1.0, 0.25, 0.0},
                      0.0),
                  InvalidOrbitError);
}

TEST_CASE("canonical_orbit_from_state round trip") {
  std::mt19937_64 rng(47);
  for (RegimeKind kind : kAllRegimes) {
    for (int i = 0; i < 100; ++i) {
      const auto s0 = random_state(rng);
      const auto pot = random_potential(rng, kind);
      const auto orbit = canonical_orbit_from_state(s0, pot);
      // s0 lives at original time 0 = T + (-T) on the orbit clock.
      const auto back = canonical_orbit_state(orbit, -orbit.origin_shift);
      CHECK(states_close(back, s0, 1e-9));
    }
  }
}

TEST_CASE("classical_trajectory closed forms") {
  // Free drift.
  const auto drift = classical_trajectory(
      PhasePoint{0, 1}, PotentialSpec::free_particle(), 3.0);
  CHECK(drift.x == 3.0);
  CHECK(drift.p == 1.0);

  // Constant force -B.
  const auto fall = classical_trajectory(
      PhasePoint{0, 0}, PotentialSpec::checked(0, 1, 0, 1), 2.0);
  CHECK(fall.x == -2.0);
  CHECK(fall.p == -2.0);

  // Harmonic rotation, checked against the RK4 Newton oracle.
  const PotentialSpec hw = PotentialSpec::harmonic(1.0);
  for (double t : {0.7, 2.9, 6.1}) {
    const auto q = classical_trajectory(PhasePoint{1, 0}, hw, t);
    CHECK(close_abs(q.x, std::cos(t), 1e-12));
    CHECK(close_abs(q.p, -std::sin(t), 1e-12));
    const auto rk = oracle::integrate_newton_odes(PhasePoint{1, 0}, hw, t, 1e-5);
    CHECK(close_abs(q.x, rk.x, 1e-10));
    CHECK(close_abs(q.p, rk.p, 1e-10));
  }

  // Shifted harmonic well: rotation about -B/(2A).
  const PotentialSpec shifted = PotentialSpec::checked(0.5, 1.0, 0.0, 1.0);
  const auto qs = classical_trajectory(PhasePoint{0, 0}, shifted, 1.3);
  const auto rs = oracle::integrate_newton_odes(PhasePoint{0, 0}, shifted, 1.3,
                                                1e-5);
  CHECK(close_abs(qs.x, rs.x, 1e-10));
  CHECK(close_abs(qs.p, rs.p, 1e-10));

  // Inverted escape vs the oracle.
  const PotentialSpec bar = PotentialSpec::inverted(1.0, 1.0, 0.5);
  const auto qb = classical_trajectory(PhasePoint{0.2, -0.3}, bar, 1.1);
  const auto rb = oracle::integrate_newton_odes(PhasePoint{0.2, -0.3}, bar, 1.1,
                                                1e-5);
  CHECK(close_abs(qb.x, rb.x, 1e-9));
  CHECK(close_abs(qb.p, rb.p, 1e-9));

  CHECK_THROWS_AS(
      classical_trajectory(PhasePoint{1, 0}, PotentialSpec::inverted(1.0), 400.0),
      RangeOverflowError);
}

TEST_CASE("RK4 moment oracle matches the closed forms to 1e-8") {
  std::mt19937_64 rng(53);
  for (RegimeKind kind : kAllRegimes) {
    for (int i = 0; i < 3; ++i) {
      const auto s0 = random_state(rng);
      const auto pot = random_potential(rng, kind);
      const double t = std::abs(random_time(rng, pot));
      const auto ana = evolve(s0, pot, t);
      const auto rk = oracle::integrate_moment_odes(s0, pot.A, pot.m, t, 1e-4);
      CHECK(states_close(rk, ana, 1e-8));
    }
  }
}
