#ifndef FRACCALC_TESTS_SUPPORT_HPP
#define FRACCALC_TESTS_SUPPORT_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "polyfrac.hpp"

// Test-only helpers: a seedable PRNG, random polynomials, and independent
// oracles (Jacobi eigenvalues, long-double Mittag-Leffler series) kept apart
// from the implementation paths they check.

namespace testkit {

struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
};

inline fraccalc::ShiftedPolynomial random_poly(Rng& rng, int deg_max, double t0 = 0.0,
                                               double coeff_range = 5.0) {
  const int deg = rng.below(deg_max + 1);
  std::vector<double> c(deg + 1);
  for (double& x : c) x = rng.uniform(-coeff_range, coeff_range);
  if (c.back() == 0.0) c.back() = 1.0;
  return fraccalc::ShiftedPolynomial(t0, std::move(c));
}

// Cyclic Jacobi eigenvalue iteration for small dense symmetric matrices;
// independent of the Cholesky path it cross-checks.
inline std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n) {
  auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    if (off < 1e-26) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (at(p, q) == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * at(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> eig(n);
  for (int i = 0; i < n; ++i) eig[i] = at(i, i);
  return eig;
}

// Direct long-double series for E_{alpha,beta}(z); trustworthy while the
// terms stay below ~1e6 in magnitude (|z|^{1/alpha} up to ~14).
inline double ml_series_oracle(double alpha, double beta, double z, int terms = 400) {
  long double sum = 0.0L;
  long double zpow = 1.0L;
  for (int k = 0; k < terms; ++k) {
    sum += zpow / std::tgammal(static_cast<long double>(alpha) * k + beta);
    zpow *= static_cast<long double>(z);
  }
  return static_cast<double>(sum);
}

inline bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * (1.0 + std::max(std::abs(a), std::abs(b)));
}

} // namespace testkit

#endif
