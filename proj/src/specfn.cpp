#include "specfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fraccalc {

namespace {

constexpr double kGammaOverflowX = 171.624376956302725;
constexpr double kSqrtTwoPi = 2.506628274631000502415765284811;
constexpr double kLogSqrtTwoPi = 0.9189385332046727417803297364056;

// Lanczos approximation, g = 7, 9 coefficients (Godfrey's set).
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

// Rational part of the Lanczos series at z >= 0.5 (argument shifted by 1).
double lanczos_sum(double z) {
  double a = kLanczos[0];
  for (int i = 1; i < 9; ++i) a += kLanczos[i] / (z - 1.0 + i);
  return a;
}

bool is_nonpositive_integer(double x) {
  return x <= 0.0 && x == std::floor(x);
}

[[noreturn]] void throw_pole(const char* fn, double x) {
  throw std::domain_error(std::string(fn) + ": pole at non-positive integer argument " +
                          std::to_string(x));
}

double gamma_positive(double x) {
  // x > 0, not at a pole.
  if (x < 0.5) return gamma_positive(x + 1.0) / x;
  if (x > 20.0) return std::exp(log_gamma(x));
  const double z = x - 1.0;
  const double t = z + kLanczosG + 0.5;
  return kSqrtTwoPi * std::pow(t, z + 0.5) * std::exp(-t) * lanczos_sum(x);
}

} // namespace

double sin_pi(double x) {
  const double n = std::round(x);
  const double r = x - n;
  const double s = std::sin(M_PI * r);
  return (static_cast<long long>(n) % 2 == 0) ? s : -s;
}

double cos_pi(double x) {
  const double n = std::round(x);
  const double r = x - n;
  const double c = std::cos(M_PI * r);
  return (static_cast<long long>(n) % 2 == 0) ? c : -c;
}

double gamma(double x) {
  if (!std::isfinite(x)) throw std::domain_error("gamma: non-finite argument");
  if (is_nonpositive_integer(x)) throw_pole("gamma", x);
  if (x > kGammaOverflowX) throw std::overflow_error("gamma: argument exceeds 171.624");
  if (x > 0.0) return gamma_positive(x);
  if (1.0 - x > kGammaOverflowX)
    throw std::overflow_error("gamma: argument too far down the negative axis");
  // Reflection for the negative axis: Gamma(x) = pi / (sin(pi x) Gamma(1-x)).
  const double s = sin_pi(x);
  return M_PI / (s * gamma_positive(1.0 - x));
}

double log_gamma(double x) {
  if (!std::isfinite(x) || x <= 0.0)
    throw std::domain_error("log_gamma: argument must be positive");
  if (x < 0.5) return log_gamma(x + 1.0) - std::log(x);
  const double z = x - 1.0;
  const double t = z + kLanczosG + 0.5;
  return kLogSqrtTwoPi + (z + 0.5) * std::log(t) - t + std::log(lanczos_sum(x));
}

double reciprocal_gamma(double x) {
  if (!std::isfinite(x)) throw std::domain_error("reciprocal_gamma: non-finite argument");
  if (is_nonpositive_integer(x)) return 0.0;
  if (x > 0.0) {
    if (x > kGammaOverflowX) return std::exp(-log_gamma(x));
    return 1.0 / gamma_positive(x);
  }
  // 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi, entire across the poles.
  return sin_pi(x) * gamma_positive(1.0 - x) / M_PI;
}

double digamma(double x) {
  if (!std::isfinite(x)) throw std::domain_error("digamma: non-finite argument");
  if (is_nonpositive_integer(x)) throw_pole("digamma", x);
  if (x < 0.0) {
    // Reflection: digamma(x) = digamma(1-x) - pi cot(pi x).
    return digamma(1.0 - x) - M_PI * cos_pi(x) / sin_pi(x);
  }
  double result = 0.0;
  // Shift into the asymptotic region.
  while (x < 10.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  // Asymptotic series with Bernoulli numbers B2..B12.
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double series = 0.0;
  static const double bern[6] = {1.0 / 12.0,   -1.0 / 120.0,  1.0 / 252.0,
                                 -1.0 / 240.0, 1.0 / 132.0,   -691.0 / 32760.0};
  double p = inv2;
  for (int i = 0; i < 6; ++i) {
    series += bern[i] * p;
    p *= inv2;
  }
  return result + std::log(x) - 0.5 * inv - series;
}

double frac_binomial(double alpha, int k) {
  if (k < 0) throw std::domain_error("frac_binomial: k must be nonnegative");
  double b = 1.0;
  for (int j = 0; j < k; ++j) b *= (alpha - j) / (j + 1);
  return b;
}

namespace {

// ---- Mittag-Leffler machinery -------------------------------------------
//
// Regimes keyed on s = |z|^{1/alpha} for z < 0:
//   s <= 14 : power series in long double (cancellation bounded by e^s),
//   s >= 28 : asymptotic expansion, truncated at its smallest term,
//   else    : Gorenflo spectral-integral representation (needs beta <= 1,
//             larger beta reduced by the downward recurrence in z).
// For z in [0, 5] the series has positive terms and is used unconditionally.

constexpr int kSeriesCap = 500;

double ml_series(double alpha, double beta, double z) {
  long double sum = 0.0L;
  long double term = 0.0L;
  const long double zl = z;
  long double zpow = 1.0L;
  for (int k = 0; k < kSeriesCap; ++k) {
    const double g = alpha * k + beta;
    term = zpow * static_cast<long double>(reciprocal_gamma(g));
    sum += term;
    zpow *= zl;
    if (k > 2 && std::abs(static_cast<double>(term)) <
                     1e-16 * (1.0 + std::abs(static_cast<double>(sum))) &&
        std::abs(z) < g) {
      return static_cast<double>(sum);
    }
  }
  throw std::runtime_error("mittag_leffler: series did not converge within 500 terms");
}

// Asymptotic expansion of E_{alpha,beta}(-x) for large x > 0:
//   sum_{k>=1} (-1)^{k+1} x^{-k} / Gamma(beta - alpha k),
// truncated at the smallest term (error ~ e^{-x^{1/alpha}}).
double ml_asymptotic(double alpha, double beta, double x) {
  double sum = 0.0;
  double best = std::numeric_limits<double>::infinity();
  double xpow = 1.0 / x;
  double sign = 1.0;
  for (int k = 1; k <= 60; ++k) {
    const double term = sign * xpow * reciprocal_gamma(beta - alpha * k);
    const double mag = std::abs(term);
    if (mag > best && k > 3) break; // divergent tail reached
    sum += term;
    if (mag > 0.0 && mag < best) best = mag;
    xpow /= x;
    sign = -sign;
  }
  return sum;
}

// Spectral kernel of E_{alpha,beta}(-x) for 0 < alpha < 1, beta <= 1, x > 0:
//   E(-x) = int_0^inf K(r) dr,
//   K(r) = (1/(pi alpha)) r^{(1-beta)/alpha} e^{-r^{1/alpha}}
//          [ r sin(pi(1-beta)) + x sin(pi(1-beta+alpha)) ]
//          / ( r^2 + 2 r x cos(pi alpha) + x^2 ).
struct MlKernel {
  double alpha, beta, x;
  double operator()(double r) const {
    if (r <= 0.0) return 0.0;
    const double num =
        r * sin_pi(1.0 - beta) + x * sin_pi(1.0 - beta + alpha);
    const double den = r * r + 2.0 * r * x * cos_pi(alpha) + x * x;
    return std::pow(r, (1.0 - beta) / alpha) * std::exp(-std::pow(r, 1.0 / alpha)) *
           num / (M_PI * alpha * den);
  }
};

double adaptive_simpson(const MlKernel& f, double a, double b, double fa, double fm,
                        double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0) return left + right + delta / 15.0;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate_panel(const MlKernel& f, double a, double b, double tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

double ml_integral(double alpha, double beta, double x) {
  const MlKernel kern{alpha, beta, x};
  // e^{-r^{1/alpha}} < 1e-19 beyond r = 44^alpha; keep the Lorentzian peak
  // (r near x when cos(pi alpha) < 0) inside the refined panels.
  const double rmax = std::max(std::pow(44.0, alpha), 4.0 * x);
  std::vector<double> knots = {0.0, 0.5 * x, x, 2.0 * x, rmax};
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    if (knots[i + 1] <= knots[i]) continue;
    total += integrate_panel(kern, knots[i], knots[i + 1], 2.5e-14);
  }
  return total;
}

double ml_negative(double alpha, double beta, double x); // forward

// E_{alpha,beta}(z) = (E_{alpha,beta-alpha}(z) - 1/Gamma(beta-alpha)) / z
// steps beta down into (0, 1] where the spectral kernel applies.
double ml_integral_with_beta_reduction(double alpha, double beta, double x) {
  if (beta <= 1.0) return ml_integral(alpha, beta, x);
  const double lower = ml_integral_with_beta_reduction(alpha, beta - alpha, x);
  return (lower - reciprocal_gamma(beta - alpha)) / (-x);
}

double ml_negative(double alpha, double beta, double x) {
  const double s = std::pow(x, 1.0 / alpha);
  if (s <= 14.0) return ml_series(alpha, beta, -x);
  if (s >= 28.0) return ml_asymptotic(alpha, beta, x);
  return ml_integral_with_beta_reduction(alpha, beta, x);
}

} // namespace

double mittag_leffler(double alpha, double beta, double z) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::domain_error("mittag_leffler: alpha must lie in (0, 1]");
  if (!(beta > 0.0)) throw std::domain_error("mittag_leffler: beta must be positive");
  if (!std::isfinite(z)) throw std::domain_error("mittag_leffler: non-finite argument");
  if (z > 5.0)
    throw std::runtime_error("mittag_leffler: z > 5 is outside the supported range");

  if (alpha == 1.0) {
    if (beta == 1.0) return std::exp(z);
    if (beta == 2.0) return z == 0.0 ? 1.0 : std::expm1(z) / z;
    if (std::abs(z) <= 5.0) return ml_series(alpha, beta, z);
    throw std::runtime_error(
        "mittag_leffler: alpha=1 with general beta supported only for |z| <= 5");
  }
  if (z >= -5.0 && std::abs(z) <= 5.0) {
    // Still guard small-alpha cancellation on the negative side.
    if (z >= 0.0 || std::pow(-z, 1.0 / alpha) <= 14.0) return ml_series(alpha, beta, z);
  }
  if (z >= 0.0) return ml_series(alpha, beta, z);
  return ml_negative(alpha, beta, -z);
}

bool gautschi_check(long n, double s) {
  if (n < 1) throw std::domain_error("gautschi_check: n must be >= 1");
  if (!(s >= 0.0 && s <= 1.0)) throw std::domain_error("gautschi_check: s must be in [0,1]");
  const double lg_ns = log_gamma(n + s);
  const double lg_n1 = log_gamma(n + 1.0);
  const double ratio_log = lg_ns - lg_n1;
  const double lo = (1.0 - s) * -std::log(n + 1.0);
  const double hi = (1.0 - s) * -std::log(static_cast<double>(n));
  // The bounds are attained at s in {0,1}; the slack must absorb the absolute
  // rounding of the two log-gamma values (~1e-15 relative each).
  const double slack = 1e-12 + 1e-14 * (std::abs(lg_ns) + std::abs(lg_n1));
  return ratio_log >= lo - slack && ratio_log <= hi + slack;
}

bool alzer_check(double x, std::span<const double> a, std::span<const double> b) {
  if (!(x > 0.0)) throw std::invalid_argument("alzer_check: x must be positive");
  if (a.size() != b.size() || a.empty())
    throw std::invalid_argument("alzer_check: sequences must be nonempty and equal length");
  const double tol = 1e-12;
  double sum_a = 0.0, sum_b = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] < 0.0 || b[k] < 0.0)
      throw std::invalid_argument("alzer_check: sequences must be nonnegative");
    if (k > 0 && (a[k] < a[k - 1] - tol || b[k] < b[k - 1] - tol))
      throw std::invalid_argument("alzer_check: sequences must be nondecreasing");
    sum_a += a[k];
    sum_b += b[k];
    const bool last = (k + 1 == a.size());
    if (!last && sum_a > sum_b + tol * (1.0 + std::abs(sum_b)))
      throw std::invalid_argument("alzer_check: partial sums of a must not exceed those of b");
  }
  if (std::abs(sum_a - sum_b) > tol * (1.0 + std::abs(sum_b)))
    throw std::invalid_argument("alzer_check: total sums must agree");
  double log_prod = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    log_prod += log_gamma(x + a[k]) - log_gamma(x + b[k]);
  return log_prod >= std::log1p(-1e-12);
}

} // namespace fraccalc
