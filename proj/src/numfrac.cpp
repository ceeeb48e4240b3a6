#include "numfrac.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "specfn.hpp"

namespace fraccalc {

SampledFunction::SampledFunction(double t0_, double t1_, std::vector<double> values_)
    : t0(t0_), t1(t1_), values(std::move(values_)) {
  if (!(t1 > t0)) throw std::domain_error("SampledFunction: requires t1 > t0");
  if (values.size() < 3) throw std::domain_error("SampledFunction: requires N >= 2");
  for (double v : values)
    if (!std::isfinite(v)) throw std::domain_error("SampledFunction: non-finite sample");
}

SampledFunction SampledFunction::sample(const std::function<double(double)>& f, double t0,
                                        double t1, std::size_t n_intervals) {
  std::vector<double> v(n_intervals + 1);
  const double h = (t1 - t0) / static_cast<double>(n_intervals);
  for (std::size_t k = 0; k <= n_intervals; ++k) v[k] = f(t0 + h * static_cast<double>(k));
  return SampledFunction(t0, t1, std::move(v));
}

L1Weights::L1Weights(double alpha_, std::size_t count) : alpha(alpha_) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("L1Weights: alpha must be in (0,1)");
  b.resize(count);
  for (std::size_t j = 0; j < count; ++j)
    b[j] = std::pow(j + 1.0, 1.0 - alpha) - std::pow(static_cast<double>(j), 1.0 - alpha);
  if (!b.empty() && b[0] != 1.0) throw std::logic_error("L1Weights: b_0 must be 1");
  for (std::size_t j = 0; j + 1 < b.size(); ++j)
    if (!(b[j + 1] > 0.0 && b[j + 1] < b[j]))
      throw std::logic_error("L1Weights: weights must be positive and strictly decreasing");
}

SampledFunction rl_integral_num(const SampledFunction& f, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::domain_error("rl_integral_num: alpha must be in (0,1]");
  const std::size_t n = f.intervals();
  const double h = f.step();
  const double c = std::pow(h, alpha) / (gamma(alpha) * alpha * (alpha + 1.0));
  std::vector<double> out(n + 1, 0.0);
  // Piecewise-linear weights: second differences of m^{alpha+1} inside, with
  // boundary weights at i = 0 and i = k.
  std::vector<double> mp(n + 2); // m^{alpha+1}
  for (std::size_t m = 0; m <= n + 1; ++m) mp[m] = std::pow(static_cast<double>(m), alpha + 1.0);
  for (std::size_t k = 1; k <= n; ++k) {
    const double kd = static_cast<double>(k);
    double acc = (mp[k - 1] - (kd - alpha - 1.0) * std::pow(kd, alpha)) * f.values[0] +
                 f.values[k];
    for (std::size_t i = 1; i < k; ++i) {
      const std::size_t d = k - i;
      acc += (mp[d + 1] - 2.0 * mp[d] + mp[d - 1]) * f.values[i];
    }
    out[k] = c * acc;
  }
  return SampledFunction(f.t0, f.t1, std::move(out));
}

SampledFunction caputo_deriv_num(const SampledFunction& f, double alpha) {
  const std::size_t n = f.intervals();
  const L1Weights w(alpha, n);
  const double h = f.step();
  const double c = std::pow(h, -alpha) / gamma(2.0 - alpha);
  std::vector<double> out(n + 1, 0.0);
  std::vector<double> df(n);
  for (std::size_t k = 0; k < n; ++k) df[k] = f.values[k + 1] - f.values[k];
  for (std::size_t k = 1; k <= n; ++k) {
    double acc = 0.0;
    for (std::size_t j = 0; j < k; ++j) acc += w.b[j] * df[k - j - 1];
    out[k] = c * acc;
  }
  return SampledFunction(f.t0, f.t1, std::move(out));
}

SampledFunction rl_deriv_num(const SampledFunction& f, double alpha) {
  SampledFunction out = caputo_deriv_num(f, alpha);
  const double f0 = f.values[0];
  if (f0 != 0.0) {
    const double g1 = 1.0 / gamma(1.0 - alpha);
    for (std::size_t k = 1; k < out.values.size(); ++k)
      out.values[k] += f0 * g1 * std::pow(out.node(k) - out.t0, -alpha);
  }
  return out;
}

double rl_deriv_num_at(const SampledFunction& f, double alpha, std::size_t k) {
  if (k >= f.values.size()) throw std::out_of_range("rl_deriv_num_at: node out of range");
  if (k == 0) {
    if (f.values[0] != 0.0)
      throw std::domain_error("rl_deriv_num_at: singular at t0 when f(t0) != 0");
    return 0.0;
  }
  return rl_deriv_num(f, alpha).values[k];
}

WorstGapReport check_inequality_sampled(const SampledFunction& f, double alpha, GapKind kind) {
  SampledFunction sq = f;
  for (double& v : sq.values) v *= v;
  const SampledFunction df =
      (kind == GapKind::RL) ? rl_deriv_num(f, alpha) : caputo_deriv_num(f, alpha);
  const SampledFunction dsq =
      (kind == GapKind::RL) ? rl_deriv_num(sq, alpha) : caputo_deriv_num(sq, alpha);
  WorstGapReport rep;
  rep.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < f.values.size(); ++k) {
    const double g = 2.0 * df.values[k] * f.values[k] - dsq.values[k];
    if (g < rep.min_gap) {
      rep.min_gap = g;
      rep.argmin = k;
      rep.t_argmin = f.node(k);
    }
  }
  return rep;
}

double calibrate_allowance(const std::function<double(double)>& f, double t0, double t1,
                           double alpha, GapKind kind, std::size_t n_intervals, double safety,
                           double floor_eps) {
  if (n_intervals < 16) throw std::domain_error("calibrate_allowance: N too small");
  double c = 0.0;
  for (std::size_t level : {n_intervals / 4, n_intervals / 2}) {
    const SampledFunction s = SampledFunction::sample(f, t0, t1, level);
    const WorstGapReport rep = check_inequality_sampled(s, alpha, kind);
    const double violation = std::max(0.0, -rep.min_gap);
    c = std::max(c, violation * std::pow(static_cast<double>(level), 1.0 - alpha));
  }
  const double eps =
      safety * c * std::pow(static_cast<double>(n_intervals), -(1.0 - alpha));
  return std::max(eps, floor_eps);
}

} // namespace fraccalc
