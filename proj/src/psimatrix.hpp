#ifndef FRACCALC_PSIMATRIX_HPP
#define FRACCALC_PSIMATRIX_HPP

#include <vector>

#include "polyfrac.hpp"

// The gamma-ratio matrices behind the polynomial Leibniz inequality:
// psi/phi entries, the matrices A_n (indices 1..n), the bordered B (0..n),
// the reversed A~_n, Schur splits, and the positivity checks.

namespace fraccalc {

// psi(i,j) = G(i+1)/G(i+1-a) + G(j+1)/G(j+1-a) - G(i+j+1)/G(i+j+1-a),
// each ratio computed in log space and summed once.
double psi(int i, int j, double alpha);

// phi(i,j) = G(i+1)/G(i+2-a) - G(i+j+1)/G(i+j+2-a); positive for j >= 1.
double phi(int i, int j, double alpha);

// Dense symmetric matrix of psi entries over a stated index range
// [index_lo, index_lo + order).
struct PsiMatrix {
  int order = 0;
  int index_lo = 0; // 1 for A_n / A~_n, 0 for the bordered B
  double alpha = 0.0;
  std::vector<double> data; // row-major, order x order

  double& at(int r, int c) { return data[static_cast<std::size_t>(r) * order + c]; }
  double at(int r, int c) const { return data[static_cast<std::size_t>(r) * order + c]; }
  // Accessor by the mathematical index range (r, c in [index_lo, index_lo+order)).
  double entry(int i, int j) const { return at(i - index_lo, j - index_lo); }
};

PsiMatrix build_A(int n, double alpha);       // (psi(i,j)), i,j in 1..n
PsiMatrix build_B(int n, double alpha);       // bordered, indices 0..n
PsiMatrix build_A_tilde(int n, double alpha); // index reversal of A_n

struct CholeskyReport {
  bool positive_definite = false;
  int fail_index = 0;    // 1-based pivot index of the first failure, 0 if none
  double min_pivot = 0;  // smallest accepted pivot (or the failing one)
  std::vector<double> factor; // lower-triangular L when successful
};

// Cholesky with relative pivot threshold: succeeds iff every pivot exceeds
// tol * max diagonal entry. Asymmetric input (beyond 1e-12 relative) throws.
CholeskyReport cholesky_pd(const PsiMatrix& m, double tol);

struct SchurSplit {
  double d = 0.0;          // corner entry
  std::vector<double> e;   // border
  PsiMatrix D;             // A - e e^T / d
};

// Splits a bordered matrix (index range {0..n}) into corner, border, and the
// Schur complement D. B is PD iff d > 0 and D is PD. Corner 0 throws.
SchurSplit schur_split(const PsiMatrix& b);

// Monotonicity of psi: psi(i+1,j) > psi(i,j) for all 0 <= i <= n_max,
// 1 <= j <= n_max, and row j=0 constant.
bool verify_psi_monotone(int n_max, double alpha);

// Strict product inequality phi(k+l,1)phi(i+j,1) - phi(i+l,1)phi(j+k,1) > 0
// for 1 <= i,j <= n_max, 0 <= k <= i-1, 0 <= l <= j-1.
bool verify_phi_product(int n_max, double alpha);

// Border inequality (h_n, A~_n h_n) >= ||h_n||^4 / psi(n+1,n+1) with
// h_n = (psi(n+1,n), ..., psi(n+1,1)); 1e-12 relative slack.
bool verify_border_inequality(int n, double alpha);

// Quadratic-form route to the polynomial gap: builds v_a(t) (or u_a(t)
// without a_0) and returns (t-t0)^{-alpha} (v, B v) (resp. (u, A u)), which
// equals gap_rl / gap_caputo. RL requires t > t0; a degree-0 polynomial with
// the Caputo kind yields an empty form (0).
double quadratic_form_gap(const ShiftedPolynomial& p, double alpha, double t, GapKind kind);

// Exact-arithmetic positive-definiteness of the scaled matrix family for
// rational alpha = p/q in (0,1). Gamma(1-a) A_n = (rho_i + rho_j - rho_{i+j})
// with rho_k = k! q^k / prod_{m=1..k}(m q - p) rational, so Sylvester's
// criterion is decided exactly. Verifies A_k for every k <= n; with
// `bordered` also B_k for every k <= n via the exact Schur complement
// (d = 1, e = ones). Double-precision Cholesky loses the sign of the pivots
// around n = 10 (smallest eigenvalue decays exponentially), hence this path.
bool psd_verify_exact(int n, long alpha_num, long alpha_den, bool bordered);

// Nearest rational p/q with q <= max_den (continued fractions); used to map
// grid alphas onto exact rationals.
void rationalize(double x, long max_den, long& num, long& den);

} // namespace fraccalc

#endif
