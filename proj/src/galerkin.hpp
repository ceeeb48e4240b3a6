#ifndef FRACCALC_GALERKIN_HPP
#define FRACCALC_GALERKIN_HPP

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

// Spectral Faedo-Galerkin solver for the time-fractional Stokes/diffusion
// system cD^alpha u - rho Lap u + grad p = f on an explicit eigenbasis.
// The Galerkin system decouples into scalar fractional ODEs
// cD^alpha g + rho lambda_i g = f_i solved in closed form via Mittag-Leffler
// (and independently by implicit L1 stepping).

namespace fraccalc {

enum class BasisTag { dirichlet_laplace_1d, stokes_fourier_2d, modal };

struct Mode {
  double lambda = 1.0; // eigenvalue of -Laplacian, > 0
  double f_coef = 0.0; // <f, w_i>
  double u0_coef = 0.0; // (u0, w_i)_H
  std::array<int, 2> wavevector = {0, 0}; // stokes_fourier_2d only
  std::array<double, 2> direction = {0.0, 0.0}; // unit vector orthogonal to k
};

struct SpectralProblem {
  double alpha = 0.5; // in (0,1]
  double rho = 1.0;   // viscosity, > 0
  double T = 1.0;     // horizon, > 0
  BasisTag basis = BasisTag::modal;
  std::vector<Mode> modes; // eigenvalues strictly positive and nondecreasing

  void validate() const;
  // ||f||_{V'}^2 = sum f_i^2 / lambda_i.
  double forcing_dual_norm2() const;
};

// Sine eigenbasis of the Dirichlet Laplacian on (0, pi): lambda_i = i^2,
// w_i = sqrt(2/pi) sin(i x). Forcing and initial data are projected by
// composite-Simpson quadrature.
SpectralProblem build_dirichlet_1d(int n_modes, double rho, double alpha, double T,
                                   const std::function<double(double)>& forcing,
                                   const std::function<double(double)>& initial);

// Divergence-free Fourier modes on the periodic box (0,2pi)^2, lambda = |k|^2,
// enumerated by |k|^2 ascending (cos and sin branch per wavevector). Vector
// fields are projected mode-by-mode; the pressure gradient drops out of every
// projection (Leray). `forcing(x, y)` returns the two components.
SpectralProblem build_stokes_2d(int n_modes, double rho, double alpha, double T,
                                const std::function<std::array<double, 2>(double, double)>& forcing,
                                const std::function<std::array<double, 2>(double, double)>& initial);

// Direct construction from per-mode data (lambdas must be positive,
// nondecreasing).
SpectralProblem build_modal(std::vector<Mode> modes, double rho, double alpha, double T);

// Closed-form solution of cD^alpha g + mu g = c, g(0) = g0:
// g(t) = g0 E_{alpha,1}(-mu t^alpha) + c t^alpha E_{alpha,alpha+1}(-mu t^alpha).
double solve_mode_closed(double mu, double g0, double c, double alpha, double t);

// Implicit L1 stepping of the same scalar equation on a uniform grid with
// n_steps intervals over [0, T]; unconditionally stable for mu >= 0.
std::vector<double> solve_mode_l1(double mu, double g0, double c, double alpha, double T,
                                  std::size_t n_steps);

struct ModeTrajectory {
  double T = 1.0;
  std::size_t steps = 0;                    // grid has steps+1 nodes
  std::vector<std::vector<double>> coeffs;  // [mode][node]

  double node(std::size_t k) const { return T * static_cast<double>(k) / steps; }
  double h_norm2(std::size_t k) const;                       // sum g_i^2
  double v_norm2(std::size_t k, const SpectralProblem& p) const; // sum lambda_i g_i^2
};

// Per-mode closed-form trajectories on the uniform grid.
ModeTrajectory solve_galerkin(const SpectralProblem& p, std::size_t n_steps);

struct EnergyReport {
  // min over nodes k >= 1 of RHS - LHS for the two discrete inequalities
  //   (1/2)(cD^alpha ||u||_H^2)_k + rho ||u||_V^2 <= sum f_i g_i(t_k)
  //   (cD^alpha ||u||_H^2)_k + rho ||u||_V^2 <= (1/rho) ||f||_{V'}^2
  double min_energy_slack = 0.0;
  std::size_t argmin_energy = 0;
  double min_young_slack = 0.0;
  std::size_t argmin_young = 0;
  // max over nodes k >= 1 of (cD^alpha ||u||_H^2)_k, for the f = 0 decay check
  double max_h_derivative = 0.0;
};

EnergyReport check_energy(const ModeTrajectory& traj, const SpectralProblem& p);

// Discrete L^2(0,T;V) distances || u_{n_j} - u_{n_last} || for a nested family
// of truncations of the same problem (modes beyond each n_j dropped);
// trapezoidal in time. Returns one value per truncation level.
std::vector<double> check_convergence(const SpectralProblem& p,
                                      const std::vector<std::size_t>& truncations,
                                      std::size_t n_steps);

} // namespace fraccalc

#endif
