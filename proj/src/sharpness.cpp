#include "sharpness.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "specfn.hpp"

namespace fraccalc {

namespace {

void check_alpha(double alpha, const char* fn) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error(std::string(fn) + ": alpha must be in (0,1)");
}

Counterexample verified(Counterexample c) {
  const double scale = 1.0 + std::abs(lambda_gap(c.poly, 0.0, c.alpha, c.witness_t, c.kind));
  c.gap_at_witness = lambda_gap(c.poly, c.lambda, c.alpha, c.witness_t, c.kind);
  if (!(c.gap_at_witness > 1e-12 * scale))
    throw std::runtime_error("counterexample: closed-form verification failed at witness");
  return c;
}

} // namespace

PhiSequence::PhiSequence(double alpha_, int k_max) : alpha(alpha_) {
  check_alpha(alpha, "PhiSequence");
  if (k_max < 2) throw std::domain_error("PhiSequence: k_max must be >= 2");
  values.resize(k_max + 1);
  for (int k = 0; k <= k_max; ++k)
    values[k] = std::exp(log_gamma(k + 1.0) - log_gamma(k + 1.0 - alpha));
  for (int k = 0; k < k_max; ++k)
    if (!(values[k + 1] > values[k]))
      throw std::logic_error("PhiSequence: sequence must be strictly increasing");
}

double lambda_gap(const ShiftedPolynomial& p, double lambda, double alpha, double t,
                  GapKind kind) {
  const ShiftedPolynomial p2 = multiply(p, p);
  const FracExpansion dp = (kind == GapKind::RL) ? rl_deriv(p, alpha) : caputo_deriv(p, alpha);
  const FracExpansion dp2 =
      (kind == GapKind::RL) ? rl_deriv(p2, alpha) : caputo_deriv(p2, alpha);
  return dp2.eval(t) - lambda * dp.eval(t) * p.eval(t);
}

Counterexample caputo_counterexample(double lambda, double alpha) {
  check_alpha(alpha, "caputo_counterexample");
  if (lambda == 2.0)
    throw std::domain_error("caputo_counterexample: no counterexample exists at lambda = 2");

  Counterexample c;
  c.lambda = lambda;
  c.alpha = alpha;
  c.kind = GapKind::Caputo;
  c.degree = 1;

  const double split = 2.0 / (2.0 - alpha);
  if (lambda <= split) {
    // Q(t) = t + 1 reverses the lambda-inequality for every t > 0.
    c.poly = ShiftedPolynomial(0.0, {1.0, 1.0});
    c.witness_t = 1.0;
  } else if (lambda < 2.0) {
    c.poly = ShiftedPolynomial(0.0, {1.0, 1.0});
    const double hi = (2.0 - alpha) * (2.0 - lambda) / (lambda * (2.0 - alpha) - 2.0);
    c.valid_interval = {0.0, hi};
    c.witness_t = 0.5 * hi;
  } else {
    c.poly = ShiftedPolynomial(0.0, {-1.0, 1.0}); // t - 1
    const double hi = (2.0 - alpha) * (lambda - 2.0) / (lambda * (2.0 - alpha) - 2.0);
    c.valid_interval = {0.0, hi};
    c.witness_t = 0.5 * hi;
  }
  return verified(std::move(c));
}

Counterexample rl_counterexample(double lambda, double alpha, int k_cap) {
  check_alpha(alpha, "rl_counterexample");
  if (lambda == 2.0)
    throw std::domain_error("rl_counterexample: no counterexample exists at lambda = 2");
  if (k_cap < 2) throw std::domain_error("rl_counterexample: k_cap must be >= 2");

  const PhiSequence phi(alpha, 2 * k_cap);
  const double phi0 = phi.values[0];
  const double C = (1.0 - lambda) * phi0;
  const double two_pow = std::pow(2.0, alpha);

  Counterexample c;
  c.lambda = lambda;
  c.alpha = alpha;
  c.kind = GapKind::RL;

  auto monomial_plus = [&](int k, double sign) {
    std::vector<double> coeffs(k + 1, 0.0);
    coeffs[0] = sign;
    coeffs[k] = 1.0;
    return ShiftedPolynomial(0.0, std::move(coeffs));
  };

  if (lambda < two_pow) {
    // A_k eventually positive; the quartic-in-t^k polynomial escapes to +inf.
    for (int k = 1; k <= k_cap; ++k) {
      const double a_k = phi.values[2 * k] - lambda * phi.values[k];
      if (a_k <= 0.0) continue;
      c.poly = monomial_plus(k, 1.0);
      c.degree = k;
      double t = 1.0;
      for (int step = 0; step <= 60; ++step) {
        if (lambda_gap(c.poly, lambda, alpha, t, GapKind::RL) > 0.0) {
          c.witness_t = t;
          return verified(std::move(c));
        }
        t *= 2.0;
      }
      throw std::runtime_error("rl_counterexample: witness scan exhausted at t = 2^60");
    }
    throw std::runtime_error(
        "rl_counterexample: no k <= k_cap with phi_{2k} - lambda phi_k > 0");
  }

  const bool plus_one = lambda < 2.0; // case (ii) P = t^k + 1, case (iii) P = t^k - 1
  for (int k = 1; k <= k_cap; ++k) {
    const double a_k = phi.values[2 * k] - lambda * phi.values[k]; // < 0 here
    const double b_k = (2.0 - lambda) * phi.values[k] - lambda * phi0;
    if (plus_one && b_k <= 0.0) continue;
    const double disc = b_k * b_k - 4.0 * a_k * C;
    if (disc <= 0.0) continue;
    // Vertex of A u^2 + B u + C (u = t^k) for (ii); A u^2 - B u + C for (iii).
    const double u = plus_one ? (-b_k / (2.0 * a_k)) : (b_k / (2.0 * a_k));
    if (!(u > 0.0)) continue;
    c.poly = monomial_plus(k, plus_one ? 1.0 : -1.0);
    c.degree = k;
    c.witness_t = std::pow(u, 1.0 / static_cast<double>(k));
    return verified(std::move(c));
  }
  throw std::runtime_error(
      "rl_counterexample: discriminant condition not met for any k <= k_cap");
}

} // namespace fraccalc
