#include "polyfrac.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "specfn.hpp"

namespace fraccalc {

namespace {

void check_finite(const std::vector<double>& v, const char* what) {
  for (double x : v)
    if (!std::isfinite(x)) throw std::domain_error(std::string(what) + ": non-finite value");
}

// Gamma(p)/Gamma(q) for positive arguments, in log space.
double gamma_ratio(double p, double q) { return std::exp(log_gamma(p) - log_gamma(q)); }

} // namespace

ShiftedPolynomial::ShiftedPolynomial(double t0_, std::vector<double> coeffs_)
    : t0(t0_), coeffs(std::move(coeffs_)) {
  check_finite(coeffs, "ShiftedPolynomial");
  while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
}

double ShiftedPolynomial::eval(double t) const {
  const double u = t - t0;
  double acc = 0.0;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * u + coeffs[i];
  return acc;
}

ShiftedPolynomial ShiftedPolynomial::derivative() const {
  if (coeffs.size() <= 1) return ShiftedPolynomial(t0, {});
  std::vector<double> d(coeffs.size() - 1);
  for (std::size_t k = 1; k < coeffs.size(); ++k) d[k - 1] = coeffs[k] * static_cast<double>(k);
  return ShiftedPolynomial(t0, std::move(d));
}

double FracExpansion::eval(double t) const {
  const double u = t - t0;
  if (u < 0.0) throw std::domain_error("FracExpansion::eval: t < t0");
  double acc = 0.0;
  for (const Term& term : terms) {
    if (u == 0.0) {
      if (term.exponent < 0.0)
        throw std::domain_error("FracExpansion::eval: singular at t = t0");
      if (term.exponent == 0.0) acc += term.coeff;
      continue; // positive exponent contributes 0 at t0
    }
    acc += term.coeff * std::pow(u, term.exponent);
  }
  return acc;
}

FracExpansion make_expansion(double t0, std::vector<FracExpansion::Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.exponent < b.exponent; });
  FracExpansion out;
  out.t0 = t0;
  for (const auto& term : terms) {
    if (!std::isfinite(term.coeff) || !std::isfinite(term.exponent))
      throw std::domain_error("FracExpansion: non-finite term");
    if (term.exponent <= -1.0)
      throw std::domain_error("FracExpansion: exponent must exceed -1");
    if (!out.terms.empty() &&
        std::abs(out.terms.back().exponent - term.exponent) <= kExponentMergeTol) {
      out.terms.back().coeff += term.coeff;
      if (out.terms.back().coeff == 0.0) out.terms.pop_back();
    } else if (term.coeff != 0.0) {
      out.terms.push_back(term);
    }
  }
  return out;
}

ShiftedPolynomial from_monomial(const std::vector<double>& b, double t0) {
  check_finite(b, "from_monomial");
  const std::size_t n = b.size();
  std::vector<double> a(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double binom = 1.0; // C(i, k) built up incrementally over i
    double power = 1.0; // t0^{i-k}
    for (std::size_t i = k; i < n; ++i) {
      a[k] += b[i] * binom * power;
      binom *= static_cast<double>(i + 1) / static_cast<double>(i + 1 - k);
      power *= t0;
    }
  }
  return ShiftedPolynomial(t0, std::move(a));
}

FracExpansion rl_deriv(const ShiftedPolynomial& p, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("rl_deriv: alpha must be in (0,1)");
  std::vector<FracExpansion::Term> terms;
  terms.reserve(p.coeffs.size());
  for (std::size_t k = 0; k < p.coeffs.size(); ++k) {
    if (p.coeffs[k] == 0.0) continue;
    const double factor = gamma_ratio(k + 1.0, k + 1.0 - alpha);
    terms.push_back({p.coeffs[k] * factor, static_cast<double>(k) - alpha});
  }
  return make_expansion(p.t0, std::move(terms));
}

FracExpansion caputo_deriv(const ShiftedPolynomial& p, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("caputo_deriv: alpha must be in (0,1)");
  std::vector<FracExpansion::Term> terms;
  for (std::size_t k = 1; k < p.coeffs.size(); ++k) {
    if (p.coeffs[k] == 0.0) continue;
    const double factor = gamma_ratio(k + 1.0, k + 1.0 - alpha);
    terms.push_back({p.coeffs[k] * factor, static_cast<double>(k) - alpha});
  }
  return make_expansion(p.t0, std::move(terms));
}

FracExpansion rl_deriv(const FracExpansion& e, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("rl_deriv: alpha must be in (0,1)");
  std::vector<FracExpansion::Term> terms;
  terms.reserve(e.terms.size());
  for (const auto& term : e.terms) {
    const double p1 = term.exponent + 1.0;
    const double q1 = p1 - alpha;
    // Gamma(q1) sits on the negative axis when the exponent is below
    // alpha - 1; the reciprocal form covers that range (zero at poles).
    const double factor = q1 > 0.0 ? std::exp(log_gamma(p1) - log_gamma(q1))
                                   : gamma(p1) * reciprocal_gamma(q1);
    terms.push_back({term.coeff * factor, term.exponent - alpha});
  }
  return make_expansion(e.t0, std::move(terms));
}

FracExpansion rl_integral(const ShiftedPolynomial& p, double alpha) {
  if (!(alpha > 0.0)) throw std::domain_error("rl_integral: order must be positive");
  std::vector<FracExpansion::Term> terms;
  for (std::size_t k = 0; k < p.coeffs.size(); ++k) {
    if (p.coeffs[k] == 0.0) continue;
    const double factor = gamma_ratio(k + 1.0, k + 1.0 + alpha);
    terms.push_back({p.coeffs[k] * factor, static_cast<double>(k) + alpha});
  }
  return make_expansion(p.t0, std::move(terms));
}

FracExpansion rl_integral(const FracExpansion& e, double alpha) {
  if (!(alpha > 0.0)) throw std::domain_error("rl_integral: order must be positive");
  std::vector<FracExpansion::Term> terms;
  terms.reserve(e.terms.size());
  for (const auto& term : e.terms) {
    const double factor = gamma_ratio(term.exponent + 1.0, term.exponent + 1.0 + alpha);
    terms.push_back({term.coeff * factor, term.exponent + alpha});
  }
  return make_expansion(e.t0, std::move(terms));
}

ShiftedPolynomial multiply(const ShiftedPolynomial& p, const ShiftedPolynomial& q) {
  if (p.t0 != q.t0) throw std::invalid_argument("multiply: expansion points differ");
  if (p.is_zero() || q.is_zero()) return ShiftedPolynomial(p.t0, {});
  std::vector<double> c(p.coeffs.size() + q.coeffs.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.coeffs.size(); ++i)
    for (std::size_t j = 0; j < q.coeffs.size(); ++j) c[i + j] += p.coeffs[i] * q.coeffs[j];
  return ShiftedPolynomial(p.t0, std::move(c));
}

ShiftedPolynomial add(const ShiftedPolynomial& p, const ShiftedPolynomial& q) {
  if (p.t0 != q.t0) throw std::invalid_argument("add: expansion points differ");
  std::vector<double> c(std::max(p.coeffs.size(), q.coeffs.size()), 0.0);
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) c[i] += p.coeffs[i];
  for (std::size_t i = 0; i < q.coeffs.size(); ++i) c[i] += q.coeffs[i];
  return ShiftedPolynomial(p.t0, std::move(c));
}

ShiftedPolynomial scale(const ShiftedPolynomial& p, double factor) {
  std::vector<double> c = p.coeffs;
  for (double& x : c) x *= factor;
  return ShiftedPolynomial(p.t0, std::move(c));
}

FracExpansion leibniz_series_rl(const ShiftedPolynomial& f, const ShiftedPolynomial& g,
                                double alpha) {
  if (f.t0 != g.t0) throw std::invalid_argument("leibniz_series_rl: expansion points differ");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("leibniz_series_rl: alpha must be in (0,1)");
  std::vector<FracExpansion::Term> terms;
  ShiftedPolynomial fk = f; // f^{(k)}
  const int kmax = std::max(f.degree(), 0);
  for (int k = 0; k <= kmax && !fk.is_zero(); ++k) {
    const double binom = frac_binomial(alpha, k);
    // D^{alpha-k} g: RL derivative for k=0, fractional integral J^{k-alpha} after.
    const FracExpansion dg =
        (k == 0) ? rl_deriv(g, alpha) : rl_integral(g, static_cast<double>(k) - alpha);
    for (std::size_t m = 0; m < fk.coeffs.size(); ++m) {
      if (fk.coeffs[m] == 0.0) continue;
      for (const auto& term : dg.terms)
        terms.push_back({binom * fk.coeffs[m] * term.coeff,
                         term.exponent + static_cast<double>(m)});
    }
    fk = fk.derivative();
  }
  return make_expansion(f.t0, std::move(terms));
}

namespace {

double gap_impl(const ShiftedPolynomial& p, double alpha, double t, bool caputo) {
  const ShiftedPolynomial p2 = multiply(p, p);
  const FracExpansion dp = caputo ? caputo_deriv(p, alpha) : rl_deriv(p, alpha);
  const FracExpansion dp2 = caputo ? caputo_deriv(p2, alpha) : rl_deriv(p2, alpha);
  return 2.0 * dp.eval(t) * p.eval(t) - dp2.eval(t);
}

} // namespace

double gap_rl(const ShiftedPolynomial& p, double alpha, double t) {
  if (!(t > p.t0)) throw std::domain_error("gap_rl: requires t > t0");
  return gap_impl(p, alpha, t, false);
}

double gap_caputo(const ShiftedPolynomial& p, double alpha, double t) {
  if (!(t >= p.t0)) throw std::domain_error("gap_caputo: requires t >= t0");
  return gap_impl(p, alpha, t, true);
}

double gap_scale_rl(const ShiftedPolynomial& p, double alpha, double t) {
  return 1.0 + std::abs(2.0 * rl_deriv(p, alpha).eval(t) * p.eval(t));
}

double gap_scale_caputo(const ShiftedPolynomial& p, double alpha, double t) {
  return 1.0 + std::abs(2.0 * caputo_deriv(p, alpha).eval(t) * p.eval(t));
}

bool expansions_close(const FracExpansion& a, const FracExpansion& b, double tol) {
  double scale = 1.0;
  for (const auto& term : a.terms) scale = std::max(scale, std::abs(term.coeff));
  for (const auto& term : b.terms) scale = std::max(scale, std::abs(term.coeff));
  std::size_t i = 0, j = 0;
  while (i < a.terms.size() || j < b.terms.size()) {
    const bool take_a =
        j >= b.terms.size() ||
        (i < a.terms.size() &&
         a.terms[i].exponent < b.terms[j].exponent - kExponentMergeTol);
    const bool take_b =
        i >= a.terms.size() ||
        (j < b.terms.size() &&
         b.terms[j].exponent < a.terms[i].exponent - kExponentMergeTol);
    double diff;
    if (take_a) {
      diff = a.terms[i++].coeff;
    } else if (take_b) {
      diff = b.terms[j++].coeff;
    } else {
      diff = a.terms[i++].coeff - b.terms[j++].coeff;
    }
    if (std::abs(diff) > tol * scale) return false;
  }
  return true;
}

} // namespace fraccalc
