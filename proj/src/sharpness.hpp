#ifndef FRACCALC_SHARPNESS_HPP
#define FRACCALC_SHARPNESS_HPP

#include <optional>
#include <utility>

#include "polyfrac.hpp"

// Explicit counterexamples showing the constant 2 in the fractional Leibniz
// inequality is optimal: for any lambda != 2 a polynomial reverses the
// lambda-version of the inequality somewhere. Everything here works at
// t0 = 0 (general t0 is exercised in the polynomial module).

namespace fraccalc {

// phi_k = Gamma(k+1)/Gamma(k+1-alpha), strictly increasing, phi_{2k}/phi_k
// increasing towards 2^alpha.
struct PhiSequence {
  double alpha;
  std::vector<double> values; // phi_0 .. phi_k_max
  PhiSequence(double alpha_, int k_max);
  double ratio(int k) const { return values[2 * k] / values[k]; } // needs 2k <= k_max
};

struct Counterexample {
  double lambda = 0.0;
  double alpha = 0.0;
  GapKind kind = GapKind::Caputo;
  ShiftedPolynomial poly;                          // P_lambda / Q_lambda, t0 = 0
  double witness_t = 0.0;                          // > 0
  std::optional<std::pair<double, double>> valid_interval;
  double gap_at_witness = 0.0;                     // D[P^2] - lambda (D P) P > 0
  int degree = 1;
};

// lambda-gap D^alpha[P^2](t) - lambda [D^alpha P](t) P(t) via the closed
// forms; positive means the lambda-inequality is reversed at t.
double lambda_gap(const ShiftedPolynomial& p, double lambda, double alpha, double t,
                  GapKind kind);

// Caputo counterexample Q(t) = t + 1 (or t - 1 for lambda > 2); case split on
// lambda against 2/(2 - alpha). lambda = 2 throws std::domain_error.
Counterexample caputo_counterexample(double lambda, double alpha);

// RL counterexample P(t) = t^k +/- 1; the degree k is searched up to k_cap
// by the sign conditions on A_k = phi_{2k} - lambda phi_k,
// B_k = (2-lambda) phi_k - lambda phi_0, C = (1-lambda) phi_0 and the
// discriminant B_k^2 - 4 A_k C. Exhausted search throws std::runtime_error
// naming the failing condition.
Counterexample rl_counterexample(double lambda, double alpha, int k_cap);

} // namespace fraccalc

#endif
