#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "sharpness.hpp"
#include "specfn.hpp"
#include "support.hpp"

using namespace fraccalc;

TEST_CASE("phi sequence starts at 1/Gamma(1-alpha) and increases") {
  for (double alpha : {0.1, 0.5, 0.9}) {
    const PhiSequence seq(alpha, 1000);
    CHECK(seq.values[0] == doctest::Approx(1.0 / gamma(1.0 - alpha)).epsilon(1e-12));
    for (int k = 0; k < 1000; ++k) CHECK(seq.values[k + 1] > seq.values[k]);
  }
}

TEST_CASE("phi ratio sequence increases towards 2^alpha") {
  for (double alpha : {0.1, 0.35, 0.5, 0.75, 0.9}) {
    const PhiSequence seq(alpha, 1000);
    const double limit = std::pow(2.0, alpha);
    double prev = 0.0;
    for (int k = 1; k <= 500; ++k) {
      const double r = seq.ratio(k);
      CHECK(r > prev);
      CHECK(r < limit);
      prev = r;
    }
  }
}

TEST_CASE("lambda_gap vanishes against the theorem constant") {
  // lambda = 2 is the inequality itself: the gap is <= 0 everywhere.
  testkit::Rng rng(5);
  for (int it = 0; it < 50; ++it) {
    const ShiftedPolynomial p = testkit::random_poly(rng, 6);
    const double alpha = rng.uniform(0.1, 0.9);
    const double t = rng.uniform(0.1, 4.0);
    CHECK(lambda_gap(p, 2.0, alpha, t, GapKind::RL) <=
          1e-10 * (1.0 + std::abs(lambda_gap(p, 0.0, alpha, t, GapKind::RL))));
    CHECK(lambda_gap(p, 2.0, alpha, t, GapKind::Caputo) <=
          1e-10 * (1.0 + std::abs(lambda_gap(p, 0.0, alpha, t, GapKind::Caputo))));
  }
}

TEST_CASE("caputo counterexample case (i): lambda below 2/(2-alpha)") {
  const Counterexample c = caputo_counterexample(1.0, 0.5);
  CHECK_FALSE(c.valid_interval.has_value());
  CHECK(c.witness_t == 1.0);
  CHECK(c.gap_at_witness > 0.0);
  // Q = t + 1 and every t > 0 reverses the lambda-inequality.
  for (double t = 0.25; t <= 8.0; t += 0.25)
    CHECK(lambda_gap(c.poly, 1.0, 0.5, t, GapKind::Caputo) > 0.0);
}

TEST_CASE("caputo counterexample case (ii): interval endpoint formula") {
  // 2/(2-alpha) = 4/3 < 1.5 < 2 at alpha = 0.5; endpoint (2-a)(2-l)/(l(2-a)-2) = 3.
  const Counterexample c = caputo_counterexample(1.5, 0.5);
  REQUIRE(c.valid_interval.has_value());
  CHECK(c.valid_interval->first == 0.0);
  CHECK(c.valid_interval->second == 3.0);
  CHECK(c.witness_t == doctest::Approx(1.5));
  CHECK(c.gap_at_witness > 0.0);
}

TEST_CASE("caputo counterexample case (iii): lambda above 2") {
  const Counterexample c = caputo_counterexample(2.5, 0.5);
  REQUIRE(c.valid_interval.has_value());
  CHECK(c.valid_interval->second == doctest::Approx(3.0 / 7.0).epsilon(1e-15));
  CHECK(c.poly.coeffs == std::vector<double>{-1.0, 1.0}); // t - 1
  CHECK(c.gap_at_witness > 0.0);
}

TEST_CASE("caputo interval endpoint is a sign change of the lambda-gap") {
  for (double lambda : {1.5, 2.5}) {
    const Counterexample c = caputo_counterexample(lambda, 0.5);
    REQUIRE(c.valid_interval.has_value());
    const double hi = c.valid_interval->second;
    auto g = [&](double t) { return lambda_gap(c.poly, lambda, 0.5, t, GapKind::Caputo); };
    CHECK(g(hi * 0.999) > 0.0);
    CHECK(g(hi * 1.001) < 0.0);
    // Bisection localizes the root at the endpoint to 1e-8.
    double lo = hi * 0.9, up = hi * 1.1;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + up);
      (g(mid) > 0.0 ? lo : up) = mid;
    }
    CHECK(std::abs(0.5 * (lo + up) - hi) < 1e-8);
  }
}

TEST_CASE("caputo counterexample rejects lambda = 2") {
  CHECK_THROWS_AS(caputo_counterexample(2.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(rl_counterexample(2.0, 0.5, 100), std::domain_error);
}

TEST_CASE("rl counterexample case (i): lambda below 2^alpha") {
  // 2^0.5 > 1, and already k = 1 has phi_2 - phi_1 > 0.
  const Counterexample c = rl_counterexample(1.0, 0.5, 2000);
  CHECK(c.degree == 1);
  CHECK(c.gap_at_witness > 0.0);
  CHECK(c.poly.coeffs == std::vector<double>{1.0, 1.0});
  // The gap stays reversed for larger t (escapes to +infinity).
  CHECK(lambda_gap(c.poly, 1.0, 0.5, 4.0 * c.witness_t, GapKind::RL) > 0.0);
}

TEST_CASE("rl counterexample case (ii): discriminant search") {
  const Counterexample c = rl_counterexample(1.5, 0.5, 2000);
  CHECK(c.degree >= 2);
  CHECK(c.gap_at_witness > 0.0);
  const PhiSequence seq(0.5, 2 * c.degree + 2);
  const double a_k = seq.values[2 * c.degree] - 1.5 * seq.values[c.degree];
  CHECK(a_k < 0.0); // below the 2^alpha threshold the leading term is negative
  const double b_k = 0.5 * seq.values[c.degree] - 1.5 * seq.values[0];
  CHECK(b_k > 0.0);
  CHECK(b_k * b_k - 4.0 * a_k * (1.0 - 1.5) * seq.values[0] > 0.0);
}

TEST_CASE("rl counterexample case (iii): lambda above 2 flips the sign pattern") {
  const Counterexample c = rl_counterexample(2.5, 0.5, 2000);
  CHECK(c.poly.coeffs.front() == -1.0); // t^k - 1
  CHECK(c.poly.coeffs.back() == 1.0);
  CHECK(c.gap_at_witness > 0.0);
  CHECK(c.witness_t > 0.0);
}

TEST_CASE("constructions still succeed just below the sharp constant") {
  const Counterexample cap = caputo_counterexample(1.99, 0.5);
  REQUIRE(cap.valid_interval.has_value());
  CHECK(cap.valid_interval->second > 0.0);
  CHECK(cap.valid_interval->second < 0.02); // interval shrinks towards lambda = 2
  CHECK(cap.gap_at_witness > 0.0);

  // The RL discriminant needs phi_k ~ lambda/(2-lambda) phi_0, i.e. a large
  // degree; the search cap must accommodate it.
  const Counterexample rl = rl_counterexample(1.99, 0.5, 20000);
  CHECK(rl.degree > 2000);
  CHECK(rl.gap_at_witness > 0.0);
}

TEST_CASE("search caps produce reported errors") {
  CHECK_THROWS_AS(rl_counterexample(1.99, 0.5, 100), std::runtime_error);
  CHECK_THROWS_AS(rl_counterexample(1.5, 0.5, 2), std::runtime_error);
}

TEST_CASE("every returned counterexample is re-verified against closed forms") {
  testkit::Rng rng(77);
  for (int it = 0; it < 40; ++it) {
    const double alpha = rng.uniform(0.1, 0.9);
    double lambda = rng.uniform(0.2, 3.0);
    if (std::abs(lambda - 2.0) < 0.05) lambda = 2.2;
    const Counterexample cap = caputo_counterexample(lambda, alpha);
    const double scale =
        1.0 + std::abs(lambda_gap(cap.poly, 0.0, alpha, cap.witness_t, GapKind::Caputo));
    CHECK(cap.gap_at_witness > 1e-12 * scale);
    CHECK(cap.gap_at_witness ==
          doctest::Approx(lambda_gap(cap.poly, lambda, alpha, cap.witness_t, GapKind::Caputo)));
  }
}
