#include "psimatrix.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "specfn.hpp"

namespace fraccalc {

namespace {

// Gamma(k+1)/Gamma(k+1-alpha) in log space.
double ratio(double k, double alpha) {
  return std::exp(log_gamma(k + 1.0) - log_gamma(k + 1.0 - alpha));
}

void check_alpha(double alpha, const char* fn) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error(std::string(fn) + ": alpha must be in (0,1)");
}

// Strict inequality a > b accepted with floating-point slack scaled by the
// larger of the compared terms.
bool strictly_greater(double a, double b) {
  return a - b > -1e-14 * std::max({1.0, std::abs(a), std::abs(b)});
}

} // namespace

double psi(int i, int j, double alpha) {
  check_alpha(alpha, "psi");
  if (i < 0 || j < 0) throw std::domain_error("psi: indices must be nonnegative");
  const double ri = ratio(i, alpha);
  const double rj = ratio(j, alpha);
  const double rij = ratio(i + j, alpha);
  return ri + rj - rij;
}

double phi(int i, int j, double alpha) {
  check_alpha(alpha, "phi");
  if (i < 0 || j < 0) throw std::domain_error("phi: indices must be nonnegative");
  const double a = std::exp(log_gamma(i + 1.0) - log_gamma(i + 2.0 - alpha));
  const double b = std::exp(log_gamma(i + j + 1.0) - log_gamma(i + j + 2.0 - alpha));
  return a - b;
}

PsiMatrix build_A(int n, double alpha) {
  check_alpha(alpha, "build_A");
  if (n < 1) throw std::domain_error("build_A: n must be >= 1");
  PsiMatrix m;
  m.order = n;
  m.index_lo = 1;
  m.alpha = alpha;
  m.data.resize(static_cast<std::size_t>(n) * n);
  std::vector<double> r(2 * n + 1);
  for (int k = 0; k <= 2 * n; ++k) r[k] = ratio(k, alpha);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) m.at(i - 1, j - 1) = r[i] + r[j] - r[i + j];
  return m;
}

PsiMatrix build_B(int n, double alpha) {
  check_alpha(alpha, "build_B");
  if (n < 1) throw std::domain_error("build_B: n must be >= 1");
  PsiMatrix m;
  m.order = n + 1;
  m.index_lo = 0;
  m.alpha = alpha;
  m.data.resize(static_cast<std::size_t>(n + 1) * (n + 1));
  std::vector<double> r(2 * n + 1);
  for (int k = 0; k <= 2 * n; ++k) r[k] = ratio(k, alpha);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) m.at(i, j) = r[i] + r[j] - r[i + j];
  return m;
}

PsiMatrix build_A_tilde(int n, double alpha) {
  PsiMatrix a = build_A(n, alpha);
  PsiMatrix m = a;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = a.at(n - 1 - i, n - 1 - j);
  return m;
}

CholeskyReport cholesky_pd(const PsiMatrix& m, double tol) {
  const int n = m.order;
  if (n <= 0) throw std::domain_error("cholesky_pd: empty matrix");
  double max_diag = 0.0;
  for (int i = 0; i < n; ++i) {
    max_diag = std::max(max_diag, std::abs(m.at(i, i)));
    for (int j = 0; j < i; ++j) {
      const double scale = std::max({1.0, std::abs(m.at(i, j)), std::abs(m.at(j, i))});
      if (std::abs(m.at(i, j) - m.at(j, i)) > 1e-12 * scale)
        throw std::invalid_argument("cholesky_pd: matrix is not symmetric");
    }
  }
  const double threshold = tol * max_diag;

  CholeskyReport rep;
  rep.factor.assign(static_cast<std::size_t>(n) * n, 0.0);
  rep.min_pivot = std::numeric_limits<double>::infinity();
  auto L = [&](int r, int c) -> double& {
    return rep.factor[static_cast<std::size_t>(r) * n + c];
  };
  for (int j = 0; j < n; ++j) {
    double d = m.at(j, j);
    for (int k = 0; k < j; ++k) d -= L(j, k) * L(j, k);
    rep.min_pivot = std::min(rep.min_pivot, d);
    if (!(d > threshold)) {
      rep.positive_definite = false;
      rep.fail_index = j + 1;
      rep.min_pivot = d;
      rep.factor.clear();
      return rep;
    }
    L(j, j) = std::sqrt(d);
    for (int i = j + 1; i < n; ++i) {
      double s = m.at(i, j);
      for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
      L(i, j) = s / L(j, j);
    }
  }
  rep.positive_definite = true;
  return rep;
}

SchurSplit schur_split(const PsiMatrix& b) {
  if (b.index_lo != 0 || b.order < 2)
    throw std::invalid_argument("schur_split: expects a bordered matrix with indices 0..n");
  SchurSplit s;
  s.d = b.at(0, 0);
  if (s.d == 0.0) throw std::domain_error("schur_split: singular corner entry");
  const int n = b.order - 1;
  s.e.resize(n);
  for (int i = 0; i < n; ++i) s.e[i] = b.at(i + 1, 0);
  s.D.order = n;
  s.D.index_lo = 1;
  s.D.alpha = b.alpha;
  s.D.data.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      s.D.at(i, j) = b.at(i + 1, j + 1) - s.e[i] * s.e[j] / s.d;
  return s;
}

bool verify_psi_monotone(int n_max, double alpha) {
  if (n_max < 2) throw std::domain_error("verify_psi_monotone: n_max must be >= 2");
  const double row0 = psi(0, 0, alpha);
  for (int i = 0; i <= n_max; ++i) {
    if (std::abs(psi(i, 0, alpha) - row0) > 1e-12 * (1.0 + std::abs(row0))) return false;
    for (int j = 1; j <= n_max; ++j)
      if (!strictly_greater(psi(i + 1, j, alpha), psi(i, j, alpha))) return false;
  }
  return true;
}

bool verify_phi_product(int n_max, double alpha) {
  if (n_max < 2) throw std::domain_error("verify_phi_product: n_max must be >= 2");
  std::vector<double> p1(2 * n_max + 1);
  for (int k = 0; k <= 2 * n_max; ++k) p1[k] = phi(k, 1, alpha);
  for (int i = 1; i <= n_max; ++i)
    for (int j = 1; j <= n_max; ++j)
      for (int k = 0; k < i; ++k)
        for (int l = 0; l < j; ++l)
          if (!strictly_greater(p1[k + l] * p1[i + j], p1[i + l] * p1[j + k])) return false;
  return true;
}

bool verify_border_inequality(int n, double alpha) {
  if (n < 2) throw std::domain_error("verify_border_inequality: n must be >= 2");
  const PsiMatrix at = build_A_tilde(n, alpha);
  std::vector<double> h(n);
  for (int k = 0; k < n; ++k) h[k] = psi(n + 1, n - k, alpha); // (psi(n+1,n),...,psi(n+1,1))
  double quad = 0.0;
  double norm2 = 0.0;
  for (int i = 0; i < n; ++i) {
    norm2 += h[i] * h[i];
    for (int j = 0; j < n; ++j) quad += h[i] * at.at(i, j) * h[j];
  }
  const double rhs = norm2 * norm2 / psi(n + 1, n + 1, alpha);
  return quad - rhs >= -1e-12 * std::max({1.0, std::abs(quad), std::abs(rhs)});
}

double quadratic_form_gap(const ShiftedPolynomial& p, double alpha, double t, GapKind kind) {
  check_alpha(alpha, "quadratic_form_gap");
  if (kind == GapKind::RL && !(t > p.t0))
    throw std::domain_error("quadratic_form_gap: RL requires t > t0");
  if (t < p.t0) throw std::domain_error("quadratic_form_gap: requires t >= t0");
  const int deg = p.degree();
  if (deg < 0) return 0.0;                               // zero polynomial
  if (kind == GapKind::Caputo && deg == 0) return 0.0;   // empty form
  const double u = t - p.t0;
  if (kind == GapKind::RL && deg == 0)
    return p.coeffs[0] * p.coeffs[0] * psi(0, 0, alpha) * std::pow(u, -alpha);

  const int lo = (kind == GapKind::RL) ? 0 : 1;
  std::vector<double> v;
  v.reserve(deg + 1 - lo);
  double upow = (lo == 0) ? 1.0 : u;
  for (int k = lo; k <= deg; ++k) {
    v.push_back(p.coeffs[k] * upow);
    upow *= u;
  }
  const PsiMatrix m = (kind == GapKind::RL) ? build_B(deg, alpha) : build_A(deg, alpha);
  double quad = 0.0;
  const int n = static_cast<int>(v.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) quad += v[i] * m.at(i, j) * v[j];
  // The gap carries the positive prefactor (t-t0)^{-alpha} that the pure
  // quadratic form drops.
  return quad * std::pow(u, -alpha);
}

void rationalize(double x, long max_den, long& num, long& den) {
  // Continued-fraction expansion with denominator cap.
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double v = x;
  for (int it = 0; it < 64; ++it) {
    const double fl = std::floor(v);
    const long a = static_cast<long>(fl);
    const long p2 = a * p1 + p0;
    const long q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    const double frac = v - fl;
    if (frac < 1e-15) break;
    v = 1.0 / frac;
  }
  num = p1;
  den = q1;
}

namespace {

// Exact scaled entries: Gamma(1-a) * Gamma(k+1)/Gamma(k+1-a) for a = p/q.
std::vector<mpq_class> scaled_ratios(int kmax, long p, long q) {
  std::vector<mpq_class> rho(kmax + 1);
  rho[0] = 1;
  mpz_class num = 1, den = 1;
  for (int m = 1; m <= kmax; ++m) {
    num *= m;
    num *= q;
    den *= mpz_class(m) * q - p;
    rho[m] = mpq_class(num, den);
    rho[m].canonicalize();
  }
  return rho;
}

// Exact Gaussian elimination; PD iff all pivots positive (Sylvester).
bool pivots_all_positive(std::vector<std::vector<mpq_class>>& m) {
  const std::size_t n = m.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (m[k][k] <= 0) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m[i][k] == 0) continue;
      const mpq_class f = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return true;
}

} // namespace

bool psd_verify_exact(int n, long alpha_num, long alpha_den, bool bordered) {
  if (n < 1) throw std::domain_error("psd_verify_exact: n must be >= 1");
  if (alpha_den <= 0 || alpha_num <= 0 || alpha_num >= alpha_den)
    throw std::domain_error("psd_verify_exact: alpha must be a rational in (0,1)");
  const auto rho = scaled_ratios(2 * n, alpha_num, alpha_den);
  std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      m[i - 1][j - 1] = rho[i] + rho[j] - rho[i + j];
      // Scaled bordered matrix has corner 1 and unit border, so its Schur
      // complement is the same matrix minus the all-ones matrix.
      if (bordered) m[i - 1][j - 1] -= 1;
    }
  // Positive pivots certify every leading minor, i.e. all orders k <= n.
  return pivots_all_positive(m);
}

} // namespace fraccalc
