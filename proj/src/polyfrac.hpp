#ifndef FRACCALC_POLYFRAC_HPP
#define FRACCALC_POLYFRAC_HPP

#include <cstddef>
#include <vector>

// Exact fractional calculus on real polynomials stored in the shifted basis
// (t - t0)^k. In this basis the Riemann-Liouville / Caputo derivatives and
// the fractional integral act diagonally via gamma ratios, so every operation
// here is closed-form.

namespace fraccalc {

// Which fractional derivative a gap/inequality check refers to.
enum class GapKind { RL, Caputo };

// Polynomial sum a_k (t - t0)^k in canonical form: either empty (the zero
// polynomial) or with nonzero trailing coefficient.
struct ShiftedPolynomial {
  double t0 = 0.0;
  std::vector<double> coeffs; // coeffs[k] multiplies (t - t0)^k

  ShiftedPolynomial() = default;
  ShiftedPolynomial(double t0_, std::vector<double> coeffs_);

  bool is_zero() const { return coeffs.empty(); }
  int degree() const { return static_cast<int>(coeffs.size()) - 1; } // -1 for zero
  double eval(double t) const;                                       // Horner
  ShiftedPolynomial derivative() const;                              // classical d/dt
};

// Finite sum c_m (t - t0)^{e_m} with real exponents, strictly increasing,
// all > -1, coefficients nonzero.
struct FracExpansion {
  struct Term {
    double coeff;
    double exponent;
  };
  double t0 = 0.0;
  std::vector<Term> terms;

  // Evaluates sum c_m (t - t0)^{e_m}. Requires t >= t0; t == t0 throws if a
  // negative exponent is present (the RL derivative is singular there).
  double eval(double t) const;
};

// Exponents closer than this are merged when combining expansions.
inline constexpr double kExponentMergeTol = 1e-9;

// Builds the canonical expansion from raw terms (sorts, merges, drops zeros).
FracExpansion make_expansion(double t0, std::vector<FracExpansion::Term> terms);

// Rewrites sum b_k t^k around t0: a_k = sum_i b_i C(i,k) t0^{i-k}.
ShiftedPolynomial from_monomial(const std::vector<double>& b, double t0);

// Riemann-Liouville derivative of order alpha in (0,1):
// a_k (t-t0)^k -> a_k Gamma(k+1)/Gamma(k+1-alpha) (t-t0)^{k-alpha}, including
// the k=0 term with exponent -alpha.
FracExpansion rl_deriv(const ShiftedPolynomial& p, double alpha);

// Caputo derivative: identical to rl_deriv with the k=0 term removed.
FracExpansion caputo_deriv(const ShiftedPolynomial& p, double alpha);

// Termwise RL derivative of an expansion:
// c (t-t0)^e -> c Gamma(e+1)/Gamma(e+1-alpha) (t-t0)^{e-alpha}; every
// resulting exponent must stay > -1.
FracExpansion rl_deriv(const FracExpansion& e, double alpha);

// Riemann-Liouville integral of any positive order:
// a_k (t-t0)^k -> a_k Gamma(k+1)/Gamma(k+1+alpha) (t-t0)^{k+alpha}.
FracExpansion rl_integral(const ShiftedPolynomial& p, double alpha);

// Fractional integral applied to an expansion (termwise); every exponent
// must exceed -1 (integrability at t0).
FracExpansion rl_integral(const FracExpansion& e, double alpha);

// Cauchy product; both factors must share t0.
ShiftedPolynomial multiply(const ShiftedPolynomial& p, const ShiftedPolynomial& q);

ShiftedPolynomial add(const ShiftedPolynomial& p, const ShiftedPolynomial& q);
ShiftedPolynomial scale(const ShiftedPolynomial& p, double factor);

// Truncated fractional Leibniz series
//   D^alpha(fg) = sum_{k=0}^{deg f} C(alpha,k) f^{(k)} D^{alpha-k} g,
// where D^{alpha-k} for k >= 1 is the fractional integral J^{k-alpha}.
// The sum is exact: higher classical derivatives of f vanish.
FracExpansion leibniz_series_rl(const ShiftedPolynomial& f, const ShiftedPolynomial& g,
                                double alpha);

// Leibniz-inequality gap 2 [D^alpha P](t) P(t) - [D^alpha P^2](t), nonnegative
// by the inequality and strictly positive for nonzero P. Requires t > t0.
double gap_rl(const ShiftedPolynomial& p, double alpha, double t);

// Caputo variant; defined for t >= t0 and identically zero for constants.
double gap_caputo(const ShiftedPolynomial& p, double alpha, double t);

// Scale used for relative gap tolerances: 1 + |2 [D^alpha P](t) P(t)|.
double gap_scale_rl(const ShiftedPolynomial& p, double alpha, double t);
double gap_scale_caputo(const ShiftedPolynomial& p, double alpha, double t);

// Termwise comparison on the union of exponents; |c1-c2| <= tol * scale with
// scale = 1 + max |coeff| over both expansions.
bool expansions_close(const FracExpansion& a, const FracExpansion& b, double tol);

} // namespace fraccalc

#endif
