// Exercises the shared-library surface: handle lifecycles, error-code
// mapping, and numerical round trips through the C API.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "fraccalc.h"

TEST_CASE("version and status names") {
  CHECK(std::string(fc_version()) == "0.1.0");
  CHECK(std::string(fc_status_name(FC_OK)) == "ok");
  CHECK(std::string(fc_status_name(FC_ERR_DOMAIN)) == "domain-error");
  CHECK(std::string(fc_status_name(FC_ERR_SEARCH)) == "search-exhausted");
}

TEST_CASE("scalar functions and error mapping") {
  double v = 0.0;
  CHECK(fc_gamma(4.0, &v) == FC_OK);
  CHECK(v == doctest::Approx(6.0));
  CHECK(fc_gamma(-2.0, &v) == FC_ERR_DOMAIN);
  CHECK(std::strlen(fc_last_error()) > 0);
  CHECK(fc_gamma(200.0, &v) == FC_ERR_OVERFLOW);
  CHECK(fc_gamma(1.0, nullptr) == FC_ERR_BADARG);

  CHECK(fc_log_gamma(10.5, &v) == FC_OK);
  CHECK(v == doctest::Approx(13.940625219403763633).epsilon(1e-13));
  CHECK(fc_log_gamma(-1.0, &v) == FC_ERR_DOMAIN);

  CHECK(fc_digamma(1.0, &v) == FC_OK);
  CHECK(v == doctest::Approx(-0.57721566490153286061).epsilon(1e-13));

  CHECK(fc_frac_binomial(0.5, 2, &v) == FC_OK);
  CHECK(v == doctest::Approx(-0.125));

  CHECK(fc_mittag_leffler(0.5, 1.0, -1.0, &v) == FC_OK);
  CHECK(v == doctest::Approx(0.42758357615580700441).epsilon(1e-12));
  CHECK(fc_mittag_leffler(0.5, 1.0, 6.0, &v) == FC_ERR_EVAL);

  int holds = 0;
  CHECK(fc_gautschi_check(100, 0.5, &holds) == FC_OK);
  CHECK(holds == 1);

  const double a[2] = {0.0, 2.0};
  const double b[2] = {0.5, 1.5};
  CHECK(fc_alzer_check(3.7, a, b, 2, &holds) == FC_OK);
  CHECK(holds == 1);
  const double bad_a[2] = {0.0, 3.0};
  CHECK(fc_alzer_check(3.7, bad_a, b, 2, &holds) == FC_ERR_PRECONDITION);

  CHECK(fc_psi(2, 2, 0.5, &v) == FC_OK);
  double gamma45 = 0.0;
  CHECK(fc_gamma(4.5, &gamma45) == FC_OK);
  CHECK(v == doctest::Approx(4.0 * 5.5 * 0.5 / gamma45).epsilon(1e-12));
  CHECK(fc_phi(3, 0, 0.5, &v) == FC_OK);
  CHECK(v == doctest::Approx(0.0));

  std::vector<double> seq(11);
  CHECK(fc_phi_sequence(0.5, 10, seq.data()) == FC_OK);
  for (int k = 0; k < 10; ++k) CHECK(seq[k + 1] > seq[k]);
}

TEST_CASE("polynomial and expansion round trip") {
  const double coeffs[3] = {1.0, 0.0, 2.0};
  fc_poly* p = fc_poly_create(0.5, coeffs, 3);
  REQUIRE(p != nullptr);
  CHECK(fc_poly_degree(p) == 2);
  CHECK(fc_poly_t0(p) == 0.5);
  double v = 0.0;
  CHECK(fc_poly_eval(p, 1.5, &v) == FC_OK);
  CHECK(v == doctest::Approx(1.0 + 2.0 * 1.0));
  CHECK(fc_poly_coeff(p, 2, &v) == FC_OK);
  CHECK(v == 2.0);

  fc_expansion* d = fc_rl_deriv(p, 0.5);
  REQUIRE(d != nullptr);
  CHECK(fc_expansion_num_terms(d) == 2);
  double c = 0.0, e = 0.0;
  CHECK(fc_expansion_term(d, 0, &c, &e) == FC_OK);
  CHECK(e == doctest::Approx(-0.5));
  CHECK(fc_expansion_eval(d, 1.5, &v) == FC_OK);
  CHECK(fc_expansion_eval(d, 0.5, &v) == FC_ERR_DOMAIN); // singular at t0

  fc_poly* sq = fc_poly_multiply(p, p);
  REQUIRE(sq != nullptr);
  CHECK(fc_poly_degree(sq) == 4);

  double gap = 0.0, quad = 0.0, scale = 0.0;
  CHECK(fc_gap(p, 0.5, 1.7, FC_GAP_RL, &gap) == FC_OK);
  CHECK(fc_quadratic_form_gap(p, 0.5, 1.7, FC_GAP_RL, &quad) == FC_OK);
  CHECK(fc_gap_scale(p, 0.5, 1.7, FC_GAP_RL, &scale) == FC_OK);
  CHECK(std::abs(gap - quad) <= 1e-9 * scale);
  CHECK(gap > 0.0);
  CHECK(fc_gap(p, 0.5, 0.5, FC_GAP_RL, &gap) == FC_ERR_DOMAIN); // t = t0

  double lgap = 0.0;
  CHECK(fc_lambda_gap(p, 2.0, 0.5, 1.7, FC_GAP_CAPUTO, &lgap) == FC_OK);
  CHECK(lgap <= 1e-10 * scale);

  fc_expansion_destroy(d);
  fc_poly_destroy(sq);
  fc_poly_destroy(p);

  const double mono[3] = {0.0, 0.0, 1.0};
  fc_poly* q = fc_poly_from_monomial(mono, 3, 2.0);
  REQUIRE(q != nullptr);
  CHECK(fc_poly_coeff(q, 0, &v) == FC_OK);
  CHECK(v == doctest::Approx(4.0));
  fc_poly_destroy(q);
}

TEST_CASE("matrix surface") {
  fc_matrix* a = fc_build_a(6, 0.5);
  REQUIRE(a != nullptr);
  CHECK(fc_matrix_order(a) == 6);
  CHECK(fc_matrix_index_lo(a) == 1);
  double v = 0.0;
  CHECK(fc_matrix_entry(a, 1, 1, &v) == FC_OK);
  CHECK(v > 0.0);
  CHECK(fc_matrix_entry(a, 0, 1, &v) == FC_ERR_BADARG);

  int pd = 0, fail_index = -1;
  double pivot = 0.0;
  CHECK(fc_cholesky_pd(a, 1e-12, &pd, &fail_index, &pivot) == FC_OK);
  CHECK(pd == 1);
  CHECK(fail_index == 0);
  CHECK(pivot > 0.0);

  fc_matrix* b = fc_build_b(6, 0.5);
  REQUIRE(b != nullptr);
  double d = 0.0;
  fc_matrix* schur = nullptr;
  CHECK(fc_schur_split(b, &d, &schur) == FC_OK);
  REQUIRE(schur != nullptr);
  CHECK(d > 0.0);
  CHECK(fc_cholesky_pd(schur, 1e-12, &pd, &fail_index, &pivot) == FC_OK);
  CHECK(pd == 1);
  fc_matrix_destroy(schur);
  fc_matrix_destroy(b);
  fc_matrix_destroy(a);

  int holds = 0;
  CHECK(fc_verify_psi_monotone(8, 0.5, &holds) == FC_OK);
  CHECK(holds == 1);
  CHECK(fc_verify_phi_product(6, 0.3, &holds) == FC_OK);
  CHECK(holds == 1);
  CHECK(fc_verify_border_inequality(5, 0.7, &holds) == FC_OK);
  CHECK(holds == 1);
  CHECK(fc_psd_verify_exact(24, 1, 2, 1, &holds) == FC_OK);
  CHECK(holds == 1);
  long num = 0, den = 0;
  CHECK(fc_rationalize(0.65, 1000000, &num, &den) == FC_OK);
  CHECK(num == 13);
  CHECK(den == 20);
}

TEST_CASE("sampled-function surface") {
  std::vector<double> vals(129);
  for (std::size_t k = 0; k < vals.size(); ++k) vals[k] = std::sin(3.0 * k / 128.0);
  fc_sampled* f = fc_sampled_create(0.0, 3.0, vals.data(), vals.size());
  REQUIRE(f != nullptr);
  CHECK(fc_sampled_num_values(f) == 129);
  double v = 0.0;
  CHECK(fc_sampled_node(f, 128, &v) == FC_OK);
  CHECK(v == doctest::Approx(3.0));

  fc_sampled* j = fc_rl_integral_num(f, 0.5);
  fc_sampled* dc = fc_caputo_deriv_num(f, 0.5);
  fc_sampled* dr = fc_rl_deriv_num(f, 0.5);
  REQUIRE(j != nullptr);
  REQUIRE(dc != nullptr);
  REQUIRE(dr != nullptr);
  CHECK(fc_sampled_value(j, 0, &v) == FC_OK);
  CHECK(v == 0.0);

  double min_gap = 0.0, t_arg = 0.0;
  size_t argmin = 0;
  CHECK(fc_check_inequality_sampled(f, 0.5, FC_GAP_CAPUTO, &min_gap, &argmin, &t_arg) == FC_OK);
  CHECK(min_gap >= -1e-3);

  fc_sampled_destroy(dr);
  fc_sampled_destroy(dc);
  fc_sampled_destroy(j);
  fc_sampled_destroy(f);

  const double too_short[2] = {0.0, 1.0};
  CHECK(fc_sampled_create(0.0, 1.0, too_short, 2) == nullptr);
  CHECK(std::strlen(fc_last_error()) > 0);
}

TEST_CASE("counterexample surface") {
  fc_counterexample_info info;
  fc_poly* poly = nullptr;
  CHECK(fc_caputo_counterexample(1.5, 0.5, &info, &poly) == FC_OK);
  REQUIRE(poly != nullptr);
  CHECK(info.has_interval == 1);
  CHECK(info.interval_hi == doctest::Approx(3.0));
  CHECK(info.gap_at_witness > 0.0);
  double check_gap = 0.0;
  CHECK(fc_lambda_gap(poly, 1.5, 0.5, info.witness_t, FC_GAP_CAPUTO, &check_gap) == FC_OK);
  CHECK(check_gap == doctest::Approx(info.gap_at_witness));
  fc_poly_destroy(poly);

  CHECK(fc_caputo_counterexample(2.0, 0.5, &info, nullptr) == FC_ERR_DOMAIN);
  CHECK(fc_rl_counterexample(1.5, 0.5, 2000, &info, nullptr) == FC_OK);
  CHECK(info.degree >= 2);
  CHECK(fc_rl_counterexample(1.99, 0.5, 50, &info, nullptr) == FC_ERR_SEARCH);
}

TEST_CASE("galerkin surface") {
  const double lambdas[3] = {1.0, 4.0, 9.0};
  const double f[3] = {1.0, 0.5, 0.25};
  const double u0[3] = {0.5, 0.0, -0.25};
  fc_problem* p = fc_problem_modal(0.5, 1.0, 1.0, lambdas, f, u0, 3);
  REQUIRE(p != nullptr);
  CHECK(fc_problem_num_modes(p) == 3);
  double lam = 0.0, fc_ = 0.0, uc = 0.0;
  CHECK(fc_problem_mode(p, 1, &lam, &fc_, &uc) == FC_OK);
  CHECK(lam == 4.0);

  fc_trajectory* traj = fc_solve_galerkin(p, 64);
  REQUIRE(traj != nullptr);
  CHECK(fc_trajectory_steps(traj) == 64);
  double g0 = 0.0;
  CHECK(fc_trajectory_coeff(traj, 0, 0, &g0) == FC_OK);
  CHECK(g0 == 0.5);
  double h2 = 0.0, v2 = 0.0;
  CHECK(fc_trajectory_h_norm2(traj, 0, &h2) == FC_OK);
  CHECK(h2 == doctest::Approx(0.5 * 0.5 + 0.25 * 0.25));
  CHECK(fc_trajectory_v_norm2(traj, p, 0, &v2) == FC_OK);
  CHECK(v2 == doctest::Approx(1.0 * 0.25 + 9.0 * 0.0625));

  double e_slack = 0.0, y_slack = 0.0, dmax = 0.0;
  size_t ae = 0, ay = 0;
  CHECK(fc_check_energy(p, 128, &e_slack, &ae, &y_slack, &ay, &dmax) == FC_OK);
  CHECK(e_slack >= -1e-9);
  CHECK(y_slack >= -1e-9);

  const size_t levels[2] = {1, 3};
  double tails[2] = {0.0, 0.0};
  CHECK(fc_check_convergence(p, levels, 2, 64, tails) == FC_OK);
  CHECK(tails[0] > 0.0);
  CHECK(tails[1] == 0.0);

  fc_trajectory_destroy(traj);
  fc_problem_destroy(p);

  double closed = 0.0;
  CHECK(fc_solve_mode_closed(1.0, 1.0, 0.0, 0.5, 1.0, &closed) == FC_OK);
  std::vector<double> l1(4097);
  CHECK(fc_solve_mode_l1(1.0, 1.0, 0.0, 0.5, 1.0, 4096, l1.data()) == FC_OK);
  CHECK(std::abs(closed - l1.back()) < 1e-4);

  // Builder with callbacks through the C ABI.
  fc_problem* d1 = fc_problem_dirichlet_1d(
      3, 1.0, 0.5, 1.0, [](double x, void*) { return std::sin(x); }, nullptr,
      [](double, void*) { return 0.0; }, nullptr);
  REQUIRE(d1 != nullptr);
  CHECK(fc_problem_mode(d1, 0, &lam, &fc_, &uc) == FC_OK);
  CHECK(lam == doctest::Approx(1.0));
  CHECK(fc_ == doctest::Approx(std::sqrt(M_PI / 2.0)).epsilon(1e-10));
  fc_problem_destroy(d1);

  fc_problem* s2 = fc_problem_stokes_2d(
      8, 1.0, 0.5, 1.0,
      [](double, double y, double out[2], void*) {
        out[0] = std::sin(y);
        out[1] = 0.0;
      },
      nullptr,
      [](double, double, double out[2], void*) { out[0] = out[1] = 0.0; }, nullptr);
  REQUIRE(s2 != nullptr);
  int k1 = 0, k2 = 0;
  double dir1 = 0.0, dir2 = 0.0;
  CHECK(fc_problem_mode_wave(s2, 0, &k1, &k2, &dir1, &dir2) == FC_OK);
  CHECK(std::abs(k1 * dir1 + k2 * dir2) < 1e-14);
  fc_problem_destroy(s2);

  // Bad modal data surfaces as a creation failure with a message.
  const double bad_lambda[1] = {-1.0};
  CHECK(fc_problem_modal(0.5, 1.0, 1.0, bad_lambda, f, u0, 1) == nullptr);
  CHECK(std::strlen(fc_last_error()) > 0);
}

TEST_CASE("identical inputs give identical bits") {
  double a = 0.0, b = 0.0;
  fc_mittag_leffler(0.5, 1.0, -3.3, &a);
  fc_mittag_leffler(0.5, 1.0, -3.3, &b);
  CHECK(std::memcmp(&a, &b, sizeof a) == 0);
  fc_psi(7, 9, 0.31, &a);
  fc_psi(7, 9, 0.31, &b);
  CHECK(std::memcmp(&a, &b, sizeof a) == 0);
}
