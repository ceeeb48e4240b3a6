#ifndef FRACCALC_NUMFRAC_HPP
#define FRACCALC_NUMFRAC_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include "polyfrac.hpp"

// Discretized fractional operators on uniformly sampled functions: the
// product-trapezoidal fractional integral (order 2), the L1 Caputo
// derivative (order 2-alpha), and the RL derivative via the identity
// RL = Caputo + f(t0)(t-t0)^{-alpha}/Gamma(1-alpha).

namespace fraccalc {

struct SampledFunction {
  double t0 = 0.0;
  double t1 = 1.0;
  std::vector<double> values; // N+1 nodes at t0 + k h, h = (t1-t0)/N, N >= 2

  SampledFunction() = default;
  SampledFunction(double t0_, double t1_, std::vector<double> values_);
  static SampledFunction sample(const std::function<double(double)>& f, double t0, double t1,
                                std::size_t n_intervals);

  std::size_t intervals() const { return values.size() - 1; }
  double step() const { return (t1 - t0) / static_cast<double>(intervals()); }
  double node(std::size_t k) const { return t0 + step() * static_cast<double>(k); }
};

// L1 weights b_j = (j+1)^{1-alpha} - j^{1-alpha}; b_0 = 1, positive, strictly
// decreasing (checked on construction).
struct L1Weights {
  double alpha;
  std::vector<double> b;
  L1Weights(double alpha_, std::size_t count);
};

// Product-trapezoidal J^alpha: node k approximates
// (1/Gamma(alpha)) \int_{t0}^{t_k} (t_k - s)^{alpha-1} f(s) ds with f
// piecewise linear (exact kernel moments); node 0 is 0.
SampledFunction rl_integral_num(const SampledFunction& f, double alpha);

// L1 Caputo derivative: node k is h^{-alpha}/Gamma(2-alpha)
// sum_{j=0}^{k-1} b_j (f_{k-j} - f_{k-j-1}); node 0 is 0 by convention.
SampledFunction caputo_deriv_num(const SampledFunction& f, double alpha);

// RL derivative: Caputo plus f(t0)(t_k-t0)^{-alpha}/Gamma(1-alpha) at k >= 1.
// Node 0 follows the Caputo convention (0) and is meaningful only when
// f(t0) = 0; use rl_deriv_num_at for point queries.
SampledFunction rl_deriv_num(const SampledFunction& f, double alpha);

// Point query; k = 0 with f(t0) != 0 throws (the derivative is singular there).
double rl_deriv_num_at(const SampledFunction& f, double alpha, std::size_t k);

struct WorstGapReport {
  double min_gap = 0.0;
  std::size_t argmin = 0;
  double t_argmin = 0.0;
};

// Discrete Leibniz gap g_k = 2 (D f)_k f_k - (D f^2)_k with the matching
// operator applied to f and its pointwise square; minimum over nodes k >= 1
// (both kinds; the Caputo gap at node 0 is identically 0 by convention).
WorstGapReport check_inequality_sampled(const SampledFunction& f, double alpha, GapKind kind);

// Scheme-error allowance eps(N) = C N^{-(1-alpha)}: C is calibrated from the
// worst negative gap at two coarser dyadic levels (N/4, N/2), scaled by
// `safety`, with an absolute floor. A genuine inequality violation does not
// shrink under refinement and fails the finest-level check.
double calibrate_allowance(const std::function<double(double)>& f, double t0, double t1,
                           double alpha, GapKind kind, std::size_t n_intervals,
                           double safety = 3.0, double floor_eps = 1e-12);

} // namespace fraccalc

#endif
