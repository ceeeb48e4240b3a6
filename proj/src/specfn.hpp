#ifndef FRACCALC_SPECFN_HPP
#define FRACCALC_SPECFN_HPP

#include <span>
#include <vector>

// Scalar special functions used throughout the library: gamma, log-gamma,
// digamma, the generalized binomial, the two-parameter Mittag-Leffler
// function, and the classical gamma-ratio inequality checks (Gautschi,
// Alzer). All functions are pure and thread-safe. Invalid inputs throw
// (std::domain_error / std::overflow_error / std::invalid_argument /
// std::runtime_error); results are always finite.

namespace fraccalc {

// Gamma function on the real axis minus the poles {0, -1, -2, ...}.
// Lanczos approximation (g=7, 9 coefficients), reflection for x < 0.5.
// Throws std::domain_error at poles, std::overflow_error for x > 171.624.
double gamma(double x);

// log(Gamma(x)) for x > 0. Safe where gamma() itself would overflow.
double log_gamma(double x);

// 1/Gamma(x) on the whole real axis; zero at the poles of Gamma.
double reciprocal_gamma(double x);

// Digamma function (derivative of log_gamma). Same pole set as gamma.
double digamma(double x);

// Generalized binomial coefficient C(alpha, k) = alpha(alpha-1)...(alpha-k+1)/k!.
// C(alpha, 0) = 1.
double frac_binomial(double alpha, int k);

// Two-parameter Mittag-Leffler function E_{alpha,beta}(z) = sum z^k/Gamma(alpha k + beta)
// for alpha in (0,1], beta > 0, z <= 5 (arbitrarily negative z supported).
// Throws std::runtime_error outside the supported evaluation range.
double mittag_leffler(double alpha, double beta, double z);

// Gautschi's inequality: (1/(n+1))^{1-s} <= Gamma(n+s)/Gamma(n+1) <= (1/n)^{1-s}
// for n >= 1, s in [0,1]. Evaluated in log space; the slack absorbs the
// absolute rounding of the log-gamma values (the bounds are attained at
// s in {0,1}).
bool gautschi_check(long n, double s);

// Alzer's product inequality: prod Gamma(x+a_k)/Gamma(x+b_k) >= 1 whenever
// (a) both sequences are nondecreasing and nonnegative, (b) every partial sum
// of a is dominated by that of b, and (c) the total sums agree. Hypothesis
// violations throw std::invalid_argument (distinct from returning false);
// the product is compared against 1 - 1e-12.
bool alzer_check(double x, std::span<const double> a, std::span<const double> b);

// sin(pi x) / cos(pi x) with exact argument reduction at integers.
double sin_pi(double x);
double cos_pi(double x);

} // namespace fraccalc

#endif
