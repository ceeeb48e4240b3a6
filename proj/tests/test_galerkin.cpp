#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "galerkin.hpp"
#include "specfn.hpp"
#include "support.hpp"

using namespace fraccalc;

namespace {

SpectralProblem tiny_problem(double alpha, double rho, std::vector<double> lambdas,
                             std::vector<double> f, std::vector<double> u0, double T = 1.0) {
  std::vector<Mode> modes(lambdas.size());
  for (std::size_t i = 0; i < modes.size(); ++i) {
    modes[i].lambda = lambdas[i];
    modes[i].f_coef = f[i];
    modes[i].u0_coef = u0[i];
  }
  return build_modal(std::move(modes), rho, alpha, T);
}

} // namespace

TEST_CASE("problem validation") {
  CHECK_THROWS_AS(tiny_problem(0.5, 1.0, {}, {}, {}), std::domain_error);
  CHECK_THROWS_AS(tiny_problem(0.5, 1.0, {-1.0}, {0.0}, {0.0}), std::domain_error);
  CHECK_THROWS_AS(tiny_problem(0.5, 1.0, {4.0, 1.0}, {0.0, 0.0}, {0.0, 0.0}),
                  std::domain_error);
  CHECK_THROWS_AS(tiny_problem(0.5, -1.0, {1.0}, {0.0}, {0.0}), std::domain_error);
  CHECK_THROWS_AS(tiny_problem(1.5, 1.0, {1.0}, {0.0}, {0.0}), std::domain_error);
}

TEST_CASE("dirichlet basis has the sine spectrum and projects sin(x) onto mode one") {
  const SpectralProblem p = build_dirichlet_1d(
      3, 1.0, 0.5, 1.0, [](double x) { return std::sin(x); }, [](double) { return 0.0; });
  REQUIRE(p.modes.size() == 3);
  CHECK(p.modes[0].lambda == doctest::Approx(1.0));
  CHECK(p.modes[1].lambda == doctest::Approx(4.0));
  CHECK(p.modes[2].lambda == doctest::Approx(9.0));
  // <sin, sqrt(2/pi) sin> = sqrt(pi/2).
  CHECK(p.modes[0].f_coef == doctest::Approx(std::sqrt(M_PI / 2.0)).epsilon(1e-10));
  CHECK(std::abs(p.modes[1].f_coef) < 1e-10);
  CHECK(std::abs(p.modes[2].f_coef) < 1e-10);
}

TEST_CASE("stokes modes are divergence free with ascending eigenvalues") {
  const SpectralProblem p = build_stokes_2d(
      12, 1.0, 0.5, 1.0,
      [](double, double y) { return std::array<double, 2>{std::sin(y), 0.0}; },
      [](double, double) { return std::array<double, 2>{0.0, 0.0}; });
  REQUIRE(p.modes.size() == 12);
  double prev = 0.0;
  for (const Mode& m : p.modes) {
    CHECK(m.lambda >= prev);
    prev = m.lambda;
    const double dot = m.wavevector[0] * m.direction[0] + m.wavevector[1] * m.direction[1];
    CHECK(std::abs(dot) < 1e-14);
    const double norm = std::hypot(m.direction[0], m.direction[1]);
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-14));
  }
  // The shear forcing (sin y, 0) excites exactly one retained mode with
  // coefficient -pi sqrt(2) (direction convention (-k2,k1)/|k|).
  int hits = 0;
  for (const Mode& m : p.modes) {
    if (std::abs(m.f_coef) > 1e-9) {
      ++hits;
      CHECK(std::abs(m.f_coef) == doctest::Approx(M_PI * std::sqrt(2.0)).epsilon(1e-10));
      CHECK(m.wavevector[0] == 0);
      CHECK(std::abs(m.wavevector[1]) == 1);
    }
  }
  CHECK(hits == 1);
}

TEST_CASE("solve_mode_closed special cases") {
  // mu = 0: g0 + c t^alpha / Gamma(alpha+1).
  const double alpha = 0.6;
  const double v = solve_mode_closed(0.0, 2.0, 3.0, alpha, 1.7);
  CHECK(v == doctest::Approx(2.0 + 3.0 * std::pow(1.7, alpha) / gamma(alpha + 1.0))
                 .epsilon(1e-12));
  CHECK(solve_mode_closed(5.0, 2.5, 1.0, 0.5, 0.0) == 2.5);
  // mu = 1, g0 = 1, c = 0, alpha = 0.5, t = 1: E_{0.5}(-1).
  CHECK(solve_mode_closed(1.0, 1.0, 0.0, 0.5, 1.0) ==
        doctest::Approx(0.42758357615580700441).epsilon(1e-12));
  CHECK_THROWS_AS(solve_mode_closed(-1.0, 0.0, 0.0, 0.5, 1.0), std::domain_error);
  CHECK_THROWS_AS(solve_mode_closed(1.0, 0.0, 0.0, 0.5, -1.0), std::domain_error);
}

TEST_CASE("alpha = 1 closed form matches the exponential solution") {
  for (double mu : {0.0, 1.0, 10.0, 100.0}) {
    for (double t : {0.1, 0.5, 1.0}) {
      const double g0 = 1.25, c = 0.75;
      const double expect =
          mu == 0.0 ? g0 + c * t
                    : g0 * std::exp(-mu * t) + (c / mu) * (1.0 - std::exp(-mu * t));
      CHECK(std::abs(solve_mode_closed(mu, g0, c, 1.0, t) - expect) < 1e-8);
    }
  }
}

TEST_CASE("implicit L1 stepping agrees with the closed form") {
  // mu = 0, c = 0: constant trajectory.
  const std::vector<double> flat = solve_mode_l1(0.0, 1.5, 0.0, 0.5, 1.0, 64);
  for (double g : flat) CHECK(g == doctest::Approx(1.5).epsilon(1e-14));

  for (double alpha : {0.25, 0.5, 0.75}) {
    for (double mu : {0.0, 1.0, 10.0, 100.0}) {
      const std::vector<double> l1 = solve_mode_l1(mu, 1.0, 0.5, alpha, 1.0, 4096);
      const double closed = solve_mode_closed(mu, 1.0, 0.5, alpha, 1.0);
      CHECK(std::abs(l1.back() - closed) < 1e-4);
    }
  }

  // Long-run steady state c/mu.
  const std::vector<double> steady = solve_mode_l1(2.0, 0.0, 3.0, 0.5, 50.0, 4096);
  CHECK(steady.back() == doctest::Approx(1.5).epsilon(1e-2));
}

TEST_CASE("solve_galerkin structure") {
  // f = 0, u0 = 0: identically zero.
  const SpectralProblem zero = tiny_problem(0.5, 1.0, {1.0, 4.0}, {0.0, 0.0}, {0.0, 0.0});
  const ModeTrajectory tz = solve_galerkin(zero, 32);
  for (const auto& g : tz.coeffs)
    for (double v : g) CHECK(v == 0.0);

  // Single mode reduces to solve_mode_closed.
  const SpectralProblem one = tiny_problem(0.5, 2.0, {3.0}, {1.0}, {0.7});
  const ModeTrajectory t1 = solve_galerkin(one, 64);
  for (std::size_t k = 0; k <= 64; ++k) {
    const double expect = solve_mode_closed(6.0, 0.7, 1.0, 0.5, t1.node(k));
    CHECK(t1.coeffs[0][k] == doctest::Approx(expect).epsilon(1e-14));
  }
  CHECK(t1.coeffs[0][0] == 0.7); // exact initial condition

  // Modes decouple: shared modes identical bitwise between n = 2 and n = 4.
  const SpectralProblem small =
      tiny_problem(0.4, 1.0, {1.0, 4.0}, {0.5, -0.25}, {1.0, 0.5});
  const SpectralProblem large =
      tiny_problem(0.4, 1.0, {1.0, 4.0, 9.0, 16.0}, {0.5, -0.25, 0.1, 0.05},
                   {1.0, 0.5, -0.3, 0.2});
  const ModeTrajectory ts = solve_galerkin(small, 48);
  const ModeTrajectory tl = solve_galerkin(large, 48);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k <= 48; ++k) CHECK(ts.coeffs[i][k] == tl.coeffs[i][k]);
}

TEST_CASE("energy inequalities hold with scheme-error slack") {
  // Single decaying mode.
  const SpectralProblem one = tiny_problem(0.5, 1.0, {2.0}, {0.0}, {1.0});
  const EnergyReport rep = check_energy(solve_galerkin(one, 256), one);
  CHECK(rep.min_energy_slack >= -1e-10);
  CHECK(rep.min_young_slack >= -1e-10);
  CHECK(rep.max_h_derivative <= 1e-10);

  // Forced problem with u0 = 0: Young bound with C(rho) = 1/rho.
  const SpectralProblem forced =
      tiny_problem(0.5, 0.5, {1.0, 4.0, 9.0}, {1.0, 0.5, 0.25}, {0.0, 0.0, 0.0});
  const EnergyReport rf = check_energy(solve_galerkin(forced, 256), forced);
  CHECK(rf.min_energy_slack >= -1e-10);
  CHECK(rf.min_young_slack >= -1e-10);

  // Randomized suite with the refinement-calibrated allowance.
  testkit::Rng rng(2024);
  for (int it = 0; it < 12; ++it) {
    const double alpha = 0.25 + 0.25 * rng.below(3);
    const int n = 1 + rng.below(8);
    const double rho = rng.uniform(0.25, 4.0);
    std::vector<double> lambdas(n), f(n), u0(n);
    for (int i = 0; i < n; ++i) {
      lambdas[i] = rng.uniform(0.5, 100.0);
      f[i] = (it % 4 == 0) ? 0.0 : rng.uniform(-3.0, 3.0);
      u0[i] = rng.uniform(-2.0, 2.0);
    }
    std::sort(lambdas.begin(), lambdas.end());
    const SpectralProblem p = tiny_problem(alpha, rho, lambdas, f, u0);
    double c_cal = 0.0;
    for (std::size_t level : {64u, 128u}) {
      const EnergyReport r = check_energy(solve_galerkin(p, level), p);
      const double worst =
          std::max(std::max(0.0, -r.min_energy_slack), std::max(0.0, -r.min_young_slack));
      c_cal = std::max(c_cal, worst * std::pow(static_cast<double>(level), 1.0 - alpha));
    }
    const double eps =
        std::max(1e-9, 3.0 * c_cal * std::pow(256.0, -(1.0 - alpha)));
    const EnergyReport r = check_energy(solve_galerkin(p, 256), p);
    CHECK(r.min_energy_slack >= -eps);
    CHECK(r.min_young_slack >= -eps);
  }
}

TEST_CASE("with zero forcing the H-norm never exceeds its initial value") {
  const SpectralProblem p =
      tiny_problem(0.4, 1.5, {1.0, 3.0, 7.0}, {0.0, 0.0, 0.0}, {1.0, -0.5, 0.25});
  const ModeTrajectory traj = solve_galerkin(p, 128);
  const double e0 = traj.h_norm2(0);
  for (std::size_t k = 0; k <= 128; ++k) CHECK(traj.h_norm2(k) <= e0 * (1.0 + 1e-12));
}

TEST_CASE("continuity into H at t = 0 under refinement") {
  const SpectralProblem p = tiny_problem(0.5, 1.0, {1.0, 9.0}, {0.3, 0.1}, {1.0, 0.4});
  double prev = 1e9;
  for (std::size_t n : {64u, 256u, 1024u}) {
    const ModeTrajectory traj = solve_galerkin(p, n);
    const double jump = std::abs(traj.h_norm2(1) - traj.h_norm2(0));
    CHECK(jump < prev);
    prev = jump;
  }
}

TEST_CASE("check_convergence tail norms") {
  // Data supported on the first two modes: tails vanish identically.
  const SpectralProblem low = tiny_problem(0.5, 1.0, {1.0, 4.0, 9.0, 16.0},
                                           {1.0, 0.5, 0.0, 0.0}, {0.2, 0.1, 0.0, 0.0});
  const std::vector<double> z = check_convergence(low, {2, 4}, 64);
  CHECK(z[0] == 0.0);
  CHECK(z[1] == 0.0);

  // 1/i coefficients: strictly decreasing tails.
  const int n = 32;
  std::vector<double> lambdas(n), f(n), u0(n);
  for (int i = 1; i <= n; ++i) {
    lambdas[i - 1] = static_cast<double>(i) * i;
    f[i - 1] = 1.0 / i;
    u0[i - 1] = 1.0 / i;
  }
  const SpectralProblem p = tiny_problem(0.5, 1.0, lambdas, f, u0);
  const std::vector<double> tails = check_convergence(p, {4, 8, 16, 32}, 128);
  for (std::size_t j = 1; j < tails.size(); ++j) CHECK(tails[j] < tails[j - 1]);
  CHECK(tails.back() == 0.0);

  // 1/i^2 coefficients and u0 = 0: doubling n at least halves the tail.
  std::vector<double> f2(n), zero(n, 0.0);
  for (int i = 1; i <= n; ++i) f2[i - 1] = 1.0 / (static_cast<double>(i) * i);
  const SpectralProblem q = tiny_problem(0.5, 1.0, lambdas, f2, zero);
  const std::vector<double> t2 = check_convergence(q, {4, 8, 16, 32}, 128);
  for (std::size_t j = 1; j + 1 < t2.size(); ++j) CHECK(t2[j] <= 0.5 * t2[j - 1]);

  CHECK_THROWS_AS(check_convergence(p, {8}, 64), std::domain_error);
  CHECK_THROWS_AS(check_convergence(p, {16, 8}, 64), std::domain_error);
  CHECK_THROWS_AS(check_convergence(p, {8, 64}, 64), std::domain_error);
}
