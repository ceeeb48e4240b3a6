#include "galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "numfrac.hpp"
#include "specfn.hpp"

namespace fraccalc {

void SpectralProblem::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::domain_error("SpectralProblem: alpha must be in (0,1]");
  if (!(rho > 0.0)) throw std::domain_error("SpectralProblem: rho must be positive");
  if (!(T > 0.0)) throw std::domain_error("SpectralProblem: T must be positive");
  if (modes.empty()) throw std::domain_error("SpectralProblem: needs at least one mode");
  double prev = 0.0;
  for (const Mode& m : modes) {
    if (!(m.lambda > 0.0))
      throw std::domain_error("SpectralProblem: eigenvalues must be positive");
    if (m.lambda < prev)
      throw std::domain_error("SpectralProblem: eigenvalues must be nondecreasing");
    if (!std::isfinite(m.f_coef) || !std::isfinite(m.u0_coef))
      throw std::domain_error("SpectralProblem: non-finite mode data");
    prev = m.lambda;
  }
}

double SpectralProblem::forcing_dual_norm2() const {
  double s = 0.0;
  for (const Mode& m : modes) s += m.f_coef * m.f_coef / m.lambda;
  return s;
}

namespace {

// Composite Simpson on [a, b] with an even panel count.
double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double acc = f(a) + f(b);
  for (int i = 1; i < panels; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

} // namespace

SpectralProblem build_dirichlet_1d(int n_modes, double rho, double alpha, double T,
                                   const std::function<double(double)>& forcing,
                                   const std::function<double(double)>& initial) {
  if (n_modes < 1) throw std::domain_error("build_dirichlet_1d: n must be >= 1");
  SpectralProblem p;
  p.alpha = alpha;
  p.rho = rho;
  p.T = T;
  p.basis = BasisTag::dirichlet_laplace_1d;
  const double norm = std::sqrt(2.0 / M_PI);
  for (int i = 1; i <= n_modes; ++i) {
    Mode m;
    m.lambda = static_cast<double>(i) * i;
    auto project = [&](const std::function<double(double)>& g) {
      return simpson([&](double x) { return g(x) * norm * std::sin(i * x); }, 0.0, M_PI, 2048);
    };
    m.f_coef = project(forcing);
    m.u0_coef = project(initial);
    p.modes.push_back(m);
  }
  p.validate();
  return p;
}

SpectralProblem build_stokes_2d(
    int n_modes, double rho, double alpha, double T,
    const std::function<std::array<double, 2>(double, double)>& forcing,
    const std::function<std::array<double, 2>(double, double)>& initial) {
  if (n_modes < 1) throw std::domain_error("build_stokes_2d: n must be >= 1");
  // Enumerate wavevectors in the half-lattice (k1 > 0, or k1 == 0 && k2 > 0)
  // by |k|^2 ascending; each carries a cosine and a sine mode.
  struct Wave {
    int k1, k2, trig; // trig: 0 = cos, 1 = sin
  };
  std::vector<Wave> waves;
  const int kmax = 1 + static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n_modes))));
  for (int k1 = 0; k1 <= kmax; ++k1)
    for (int k2 = -kmax; k2 <= kmax; ++k2) {
      if (k1 == 0 && k2 <= 0) continue;
      waves.push_back({k1, k2, 0});
      waves.push_back({k1, k2, 1});
    }
  std::stable_sort(waves.begin(), waves.end(), [](const Wave& a, const Wave& b) {
    const int na = a.k1 * a.k1 + a.k2 * a.k2, nb = b.k1 * b.k1 + b.k2 * b.k2;
    if (na != nb) return na < nb;
    if (a.k1 != b.k1) return a.k1 < b.k1;
    if (a.k2 != b.k2) return a.k2 < b.k2;
    return a.trig < b.trig;
  });
  if (static_cast<int>(waves.size()) < n_modes)
    throw std::logic_error("build_stokes_2d: wavevector enumeration too small");

  SpectralProblem p;
  p.alpha = alpha;
  p.rho = rho;
  p.T = T;
  p.basis = BasisTag::stokes_fourier_2d;

  // Tensor trapezoid on the periodic box is spectrally accurate.
  const int grid = 48;
  const double cell = 2.0 * M_PI / grid;
  const double inv_norm = 1.0 / std::sqrt(2.0 * M_PI * M_PI); // \int cos^2(kx) = 2 pi^2

  for (int idx = 0; idx < n_modes; ++idx) {
    const Wave& w = waves[idx];
    Mode m;
    const double nk = std::sqrt(static_cast<double>(w.k1 * w.k1 + w.k2 * w.k2));
    m.lambda = static_cast<double>(w.k1 * w.k1 + w.k2 * w.k2);
    m.wavevector = {w.k1, w.k2};
    m.direction = {-w.k2 / nk, w.k1 / nk}; // unit vector orthogonal to k
    auto project = [&](const std::function<std::array<double, 2>(double, double)>& g) {
      double acc = 0.0;
      for (int ix = 0; ix < grid; ++ix)
        for (int iy = 0; iy < grid; ++iy) {
          const double x = ix * cell, y = iy * cell;
          const double phase = w.k1 * x + w.k2 * y;
          const double tr = w.trig == 0 ? std::cos(phase) : std::sin(phase);
          const auto v = g(x, y);
          acc += (v[0] * m.direction[0] + v[1] * m.direction[1]) * tr;
        }
      return acc * cell * cell * inv_norm;
    };
    m.f_coef = project(forcing);
    m.u0_coef = project(initial);
    p.modes.push_back(m);
  }
  p.validate();
  return p;
}

SpectralProblem build_modal(std::vector<Mode> modes, double rho, double alpha, double T) {
  SpectralProblem p;
  p.alpha = alpha;
  p.rho = rho;
  p.T = T;
  p.basis = BasisTag::modal;
  p.modes = std::move(modes);
  p.validate();
  return p;
}

double solve_mode_closed(double mu, double g0, double c, double alpha, double t) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::domain_error("solve_mode_closed: alpha must be in (0,1]");
  if (mu < 0.0) throw std::domain_error("solve_mode_closed: mu must be nonnegative");
  if (t < 0.0) throw std::domain_error("solve_mode_closed: t must be nonnegative");
  if (t == 0.0) return g0;
  const double ta = std::pow(t, alpha);
  const double z = -mu * ta;
  double value = 0.0;
  if (g0 != 0.0) value += g0 * mittag_leffler(alpha, 1.0, z);
  if (c != 0.0) value += c * ta * mittag_leffler(alpha, alpha + 1.0, z);
  return value;
}

std::vector<double> solve_mode_l1(double mu, double g0, double c, double alpha, double T,
                                  std::size_t n_steps) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("solve_mode_l1: alpha must be in (0,1)");
  if (mu < 0.0) throw std::domain_error("solve_mode_l1: mu must be nonnegative");
  if (n_steps < 2) throw std::domain_error("solve_mode_l1: needs N >= 2");
  const double h = T / static_cast<double>(n_steps);
  const L1Weights w(alpha, n_steps);
  const double a0 = std::pow(h, -alpha) / gamma(2.0 - alpha);
  std::vector<double> g(n_steps + 1);
  g[0] = g0;
  for (std::size_t k = 1; k <= n_steps; ++k) {
    // a0 sum_j b_j (g_{k-j} - g_{k-j-1}) + mu g_k = c, solved for g_k.
    double history = 0.0;
    for (std::size_t j = 1; j < k; ++j) history += w.b[j] * (g[k - j] - g[k - j - 1]);
    g[k] = (c + a0 * (g[k - 1] - history)) / (a0 + mu);
  }
  return g;
}

double ModeTrajectory::h_norm2(std::size_t k) const {
  double s = 0.0;
  for (const auto& g : coeffs) s += g[k] * g[k];
  return s;
}

double ModeTrajectory::v_norm2(std::size_t k, const SpectralProblem& p) const {
  double s = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    s += p.modes[i].lambda * coeffs[i][k] * coeffs[i][k];
  return s;
}

ModeTrajectory solve_galerkin(const SpectralProblem& p, std::size_t n_steps) {
  p.validate();
  if (n_steps < 2) throw std::domain_error("solve_galerkin: needs N >= 2");
  ModeTrajectory traj;
  traj.T = p.T;
  traj.steps = n_steps;
  traj.coeffs.resize(p.modes.size());
  for (std::size_t i = 0; i < p.modes.size(); ++i) {
    const Mode& m = p.modes[i];
    const double mu = p.rho * m.lambda;
    auto& g = traj.coeffs[i];
    g.resize(n_steps + 1);
    for (std::size_t k = 0; k <= n_steps; ++k)
      g[k] = solve_mode_closed(mu, m.u0_coef, m.f_coef, p.alpha, traj.node(k));
  }
  return traj;
}

EnergyReport check_energy(const ModeTrajectory& traj, const SpectralProblem& p) {
  if (traj.coeffs.size() != p.modes.size())
    throw std::invalid_argument("check_energy: trajectory does not match problem");
  const std::size_t n = traj.steps;
  std::vector<double> h2(n + 1);
  for (std::size_t k = 0; k <= n; ++k) h2[k] = traj.h_norm2(k);
  const SampledFunction energy(0.0, traj.T, h2);
  const SampledFunction dh2 = caputo_deriv_num(energy, p.alpha);

  EnergyReport rep;
  rep.min_energy_slack = std::numeric_limits<double>::infinity();
  rep.min_young_slack = std::numeric_limits<double>::infinity();
  rep.max_h_derivative = -std::numeric_limits<double>::infinity();
  const double young_rhs = p.forcing_dual_norm2() / p.rho;
  for (std::size_t k = 1; k <= n; ++k) {
    const double v2 = traj.v_norm2(k, p);
    double fg = 0.0;
    for (std::size_t i = 0; i < p.modes.size(); ++i) fg += p.modes[i].f_coef * traj.coeffs[i][k];
    const double energy_slack = fg - 0.5 * dh2.values[k] - p.rho * v2;
    const double young_slack = young_rhs - dh2.values[k] - p.rho * v2;
    if (energy_slack < rep.min_energy_slack) {
      rep.min_energy_slack = energy_slack;
      rep.argmin_energy = k;
    }
    if (young_slack < rep.min_young_slack) {
      rep.min_young_slack = young_slack;
      rep.argmin_young = k;
    }
    rep.max_h_derivative = std::max(rep.max_h_derivative, dh2.values[k]);
  }
  return rep;
}

std::vector<double> check_convergence(const SpectralProblem& p,
                                      const std::vector<std::size_t>& truncations,
                                      std::size_t n_steps) {
  p.validate();
  if (truncations.size() < 2)
    throw std::domain_error("check_convergence: needs at least two truncation levels");
  for (std::size_t j = 0; j + 1 < truncations.size(); ++j)
    if (!(truncations[j] < truncations[j + 1]))
      throw std::domain_error("check_convergence: truncations must be increasing");
  if (truncations.back() > p.modes.size())
    throw std::domain_error("check_convergence: truncation exceeds available modes");

  const ModeTrajectory traj = solve_galerkin(p, n_steps);
  const std::size_t n_top = truncations.back();
  const double h = p.T / static_cast<double>(n_steps);
  std::vector<double> tails;
  for (std::size_t level : truncations) {
    // Modes decouple, so u_{n_j} - u_{n_top} consists of modes level..n_top-1.
    double acc = 0.0;
    for (std::size_t k = 0; k <= n_steps; ++k) {
      double v2 = 0.0;
      for (std::size_t i = level; i < n_top; ++i)
        v2 += p.modes[i].lambda * traj.coeffs[i][k] * traj.coeffs[i][k];
      acc += v2 * ((k == 0 || k == n_steps) ? 0.5 : 1.0);
    }
    tails.push_back(std::sqrt(acc * h));
  }
  return tails;
}

} // namespace fraccalc
