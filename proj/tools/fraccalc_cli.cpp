// fraccalc command-line driver: verification campaigns and the spectral
// solver, emitting deterministic CSV reports with CI-friendly exit codes
// (0 = all contracts pass, 1 = contract violation, 2 = usage error,
// 3 = internal evaluation failure).

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fraccalc.h"
#include "cli_util.hpp"

namespace cli {

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> out;
  const auto c1 = spec.find(':');
  if (c1 == std::string::npos) {
    out.push_back(std::stod(spec));
    return out;
  }
  const auto c2 = spec.find(':', c1 + 1);
  if (c2 == std::string::npos) throw CLI::ValidationError("grid must be start:end:step");
  const double start = std::stod(spec.substr(0, c1));
  const double end = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
  const double step = std::stod(spec.substr(c2 + 1));
  if (!(step > 0.0) || end < start) throw CLI::ValidationError("bad grid " + spec);
  for (double v = start; v <= end + 1e-12; v += step) out.push_back(std::min(v, end));
  if (out.empty()) throw CLI::ValidationError("empty grid " + spec);
  return out;
}

} // namespace cli

namespace {

using cli::Row;
using cli::SplitMix64;
using cli::fmt;

constexpr const char* kPass = "pass";
constexpr const char* kFail = "fail";
constexpr const char* kInfo = "info";

std::string pass_fail(bool ok) { return ok ? kPass : kFail; }

// RAII for C handles.
template <typename T, void (*Destroy)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  explicit Handle(T* p) : ptr(p) {}
  ~Handle() { if (ptr) Destroy(ptr); }
  Handle(Handle&& o) noexcept : ptr(o.ptr) { o.ptr = nullptr; }
  Handle& operator=(Handle&& o) noexcept {
    std::swap(ptr, o.ptr);
    return *this;
  }
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  explicit operator bool() const { return ptr != nullptr; }
  T* get() const { return ptr; }
};

using PolyHandle = Handle<fc_poly, fc_poly_destroy>;
using ExpansionHandle = Handle<fc_expansion, fc_expansion_destroy>;
using MatrixHandle = Handle<fc_matrix, fc_matrix_destroy>;
using SampledHandle = Handle<fc_sampled, fc_sampled_destroy>;
using ProblemHandle = Handle<fc_problem, fc_problem_destroy>;

[[noreturn]] void die_internal(const std::string& context) {
  std::cerr << "fraccalc: internal error in " << context << ": " << fc_last_error() << "\n";
  std::exit(3);
}

void check_ok(fc_status s, const std::string& context) {
  if (s != FC_OK) die_internal(context + " (" + fc_status_name(s) + ")");
}

// Random shifted polynomial with coefficients uniform in [-5, 5], t0 = 0.
PolyHandle random_poly(SplitMix64& rng, int deg_max) {
  const int deg = static_cast<int>(rng.below(deg_max + 1));
  std::vector<double> c(deg + 1);
  for (double& x : c) x = rng.uniform(-5.0, 5.0);
  if (c.back() == 0.0) c.back() = 1.0;
  PolyHandle p(fc_poly_create(0.0, c.data(), c.size()));
  if (!p) die_internal("fc_poly_create");
  return p;
}

// ---- field presets (C callbacks for the problem builders) ----------------

extern "C" {
double field_zero(double, void*) { return 0.0; }
double field_sinx(double x, void*) { return std::sin(x); }
double field_mixed(double x, void*) {
  return std::sin(x) + 0.25 * std::sin(2.0 * x) + 0.1 * std::sin(5.0 * x);
}
double field_bump(double x, void*) { return x * (M_PI - x); }
void vfield_zero(double, double, double out[2], void*) { out[0] = out[1] = 0.0; }
void vfield_shear(double, double y, double out[2], void*) {
  out[0] = std::sin(y);
  out[1] = 0.0;
}
void vfield_swirl(double x, double y, double out[2], void*) {
  out[0] = std::sin(y);
  out[1] = std::sin(x);
}
}

fc_scalar_field scalar_preset(const std::string& name) {
  if (name == "zero") return field_zero;
  if (name == "sinx") return field_sinx;
  if (name == "mixed") return field_mixed;
  if (name == "bump") return field_bump;
  throw CLI::ValidationError("unknown scalar preset " + name);
}

fc_vector_field vector_preset(const std::string& name) {
  if (name == "zero") return vfield_zero;
  if (name == "shear") return vfield_shear;
  if (name == "swirl") return vfield_swirl;
  throw CLI::ValidationError("unknown vector preset " + name);
}

std::vector<double> modal_pattern(const std::string& name, int n) {
  std::vector<double> v(n, 0.0);
  for (int i = 1; i <= n; ++i) {
    if (name == "zero") v[i - 1] = 0.0;
    else if (name == "ones") v[i - 1] = 1.0;
    else if (name == "inv_i") v[i - 1] = 1.0 / i;
    else if (name == "inv_i2") v[i - 1] = 1.0 / (static_cast<double>(i) * i);
    else throw CLI::ValidationError("unknown modal pattern " + name);
  }
  return v;
}

// ---- commands -------------------------------------------------------------

struct Report {
  std::vector<Row> rows;
  std::size_t n_params = 0;
  std::string config;
};

Report cmd_psd_sweep(int n_max, const std::string& alpha_spec) {
  const std::vector<double> alphas = cli::parse_grid(alpha_spec);
  Report rep;
  rep.n_params = 3;
  rep.config = "n-max=" + fmt(n_max) + " alpha-grid=" + alpha_spec;
  const int border_max = std::min(12, n_max);

  rep.rows = cli::run_cells(alphas.size(), [&](std::size_t cell) {
    const double alpha = alphas[cell];
    std::vector<Row> rows;
    long num = 0, den = 1;
    check_ok(fc_rationalize(alpha, 1000000, &num, &den), "fc_rationalize");
    int exact_a = 0, exact_b = 0;
    check_ok(fc_psd_verify_exact(n_max, num, den, 0, &exact_a), "fc_psd_verify_exact(A)");
    check_ok(fc_psd_verify_exact(n_max, num, den, 1, &exact_b), "fc_psd_verify_exact(B)");
    for (int n = 1; n <= n_max; ++n) {
      MatrixHandle a(fc_build_a(n, alpha));
      MatrixHandle b(fc_build_b(n, alpha));
      if (!a || !b) die_internal("fc_build_a/b");
      int pd = 0, fail_index = 0;
      double pivot_a = 0.0, pivot_b = 0.0;
      check_ok(fc_cholesky_pd(a.get(), 1e-12, &pd, &fail_index, &pivot_a), "fc_cholesky_pd");
      rows.push_back(cli::make_row("psd-sweep",
                                   {"check=A", "n=" + fmt(n), "alpha=" + fmt(alpha)}, 3,
                                   fmt(pivot_a), "exact-pd", pass_fail(exact_a == 1)));
      check_ok(fc_cholesky_pd(b.get(), 1e-12, &pd, &fail_index, &pivot_b), "fc_cholesky_pd");
      rows.push_back(cli::make_row("psd-sweep",
                                   {"check=B", "n=" + fmt(n), "alpha=" + fmt(alpha)}, 3,
                                   fmt(pivot_b), "exact-pd", pass_fail(exact_b == 1)));
    }
    for (int n = 2; n <= border_max; ++n) {
      int holds = 0;
      check_ok(fc_verify_border_inequality(n, alpha, &holds), "fc_verify_border_inequality");
      rows.push_back(cli::make_row("psd-sweep",
                                   {"check=border", "n=" + fmt(n), "alpha=" + fmt(alpha)}, 3,
                                   fmt(holds), "1", pass_fail(holds == 1)));
    }
    int phi_ok = 0;
    check_ok(fc_verify_phi_product(border_max, alpha, &phi_ok), "fc_verify_phi_product");
    rows.push_back(cli::make_row(
        "psd-sweep", {"check=phi-product", "n=" + fmt(border_max), "alpha=" + fmt(alpha)}, 3,
        fmt(phi_ok), "1", pass_fail(phi_ok == 1)));
    int mono_ok = 0;
    check_ok(fc_verify_psi_monotone(border_max, alpha, &mono_ok), "fc_verify_psi_monotone");
    rows.push_back(cli::make_row(
        "psd-sweep", {"check=psi-monotone", "n=" + fmt(border_max), "alpha=" + fmt(alpha)}, 3,
        fmt(mono_ok), "1", pass_fail(mono_ok == 1)));
    return rows;
  });
  return rep;
}

Report cmd_poly_gap(std::uint64_t seed, int count, int deg_max, const std::string& alpha_spec,
                    const std::string& t_spec) {
  const std::vector<double> alphas = cli::parse_grid(alpha_spec);
  const std::vector<double> ts = cli::parse_grid(t_spec);
  Report rep;
  rep.n_params = 3;
  rep.config = "seed=" + fmt(static_cast<std::size_t>(seed)) + " count=" + fmt(count) +
               " deg-max=" + fmt(deg_max) + " alpha-grid=" + alpha_spec + " t-grid=" + t_spec;

  struct Acc {
    std::vector<double> min_rl, min_caputo; // scaled gaps per alpha
    double max_quad_dev = 0.0;
    Acc(std::size_t n) : min_rl(n, 1e300), min_caputo(n, 1e300) {}
    void merge(const Acc& o) {
      for (std::size_t i = 0; i < min_rl.size(); ++i) {
        min_rl[i] = std::min(min_rl[i], o.min_rl[i]);
        min_caputo[i] = std::min(min_caputo[i], o.min_caputo[i]);
      }
      max_quad_dev = std::max(max_quad_dev, o.max_quad_dev);
    }
  };

  Acc total(alphas.size());
  std::mutex merge_mutex;
  cli::run_cells(count, [&](std::size_t cell) -> std::vector<Row> {
    SplitMix64 rng = SplitMix64::split(seed, cell);
    PolyHandle p = random_poly(rng, deg_max);
    Acc acc(alphas.size());
    for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
      const double alpha = alphas[ai];
      for (double t : ts) {
        double grl = 0.0, gcap = 0.0, srl = 0.0, scap = 0.0;
        check_ok(fc_gap(p.get(), alpha, t, FC_GAP_RL, &grl), "fc_gap(rl)");
        check_ok(fc_gap(p.get(), alpha, t, FC_GAP_CAPUTO, &gcap), "fc_gap(caputo)");
        check_ok(fc_gap_scale(p.get(), alpha, t, FC_GAP_RL, &srl), "fc_gap_scale");
        check_ok(fc_gap_scale(p.get(), alpha, t, FC_GAP_CAPUTO, &scap), "fc_gap_scale");
        acc.min_rl[ai] = std::min(acc.min_rl[ai], grl / srl);
        acc.min_caputo[ai] = std::min(acc.min_caputo[ai], gcap / scap);
      }
      // Quadratic-form cross-check at one random grid point per (P, alpha).
      const double t = ts[rng.below(ts.size())];
      for (fc_gap_kind kind : {FC_GAP_RL, FC_GAP_CAPUTO}) {
        double g = 0.0, q = 0.0, s = 0.0;
        check_ok(fc_gap(p.get(), alpha, t, kind, &g), "fc_gap");
        check_ok(fc_quadratic_form_gap(p.get(), alpha, t, kind, &q), "fc_quadratic_form_gap");
        check_ok(fc_gap_scale(p.get(), alpha, t, kind, &s), "fc_gap_scale");
        acc.max_quad_dev = std::max(acc.max_quad_dev, std::abs(g - q) / s);
      }
    }
    std::lock_guard<std::mutex> lock(merge_mutex);
    total.merge(acc);
    return {};
  });

  for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
    rep.rows.push_back(cli::make_row(
        "poly-gap", {"metric=min-scaled-gap-rl", "alpha=" + fmt(alphas[ai]), "count=" + fmt(count)},
        3, fmt(total.min_rl[ai]), fmt(-1e-10), pass_fail(total.min_rl[ai] >= -1e-10)));
    rep.rows.push_back(cli::make_row(
        "poly-gap",
        {"metric=min-scaled-gap-caputo", "alpha=" + fmt(alphas[ai]), "count=" + fmt(count)}, 3,
        fmt(total.min_caputo[ai]), fmt(-1e-10), pass_fail(total.min_caputo[ai] >= -1e-10)));
  }
  rep.rows.push_back(cli::make_row(
      "poly-gap", {"metric=max-quadform-deviation", "alpha=all", "count=" + fmt(count)}, 3,
      fmt(total.max_quad_dev), fmt(1e-9), pass_fail(total.max_quad_dev <= 1e-9)));
  return rep;
}

// Max scaled termwise deviation between two expansions.
double expansion_deviation(const fc_expansion* a, const fc_expansion* b) {
  struct Term {
    double c, e;
  };
  auto get = [](const fc_expansion* x) {
    std::vector<Term> v(fc_expansion_num_terms(x));
    for (std::size_t i = 0; i < v.size(); ++i)
      check_ok(fc_expansion_term(x, i, &v[i].c, &v[i].e), "fc_expansion_term");
    return v;
  };
  const std::vector<Term> ta = get(a), tb = get(b);
  double scale = 1.0;
  for (const auto& t : ta) scale = std::max(scale, std::abs(t.c));
  for (const auto& t : tb) scale = std::max(scale, std::abs(t.c));
  double worst = 0.0;
  std::size_t i = 0, j = 0;
  while (i < ta.size() || j < tb.size()) {
    double diff;
    if (j >= tb.size() || (i < ta.size() && ta[i].e < tb[j].e - 1e-9))
      diff = ta[i++].c;
    else if (i >= ta.size() || tb[j].e < ta[i].e - 1e-9)
      diff = tb[j++].c;
    else
      diff = ta[i++].c - tb[j++].c;
    worst = std::max(worst, std::abs(diff) / scale);
  }
  return worst;
}

Report cmd_series_leibniz(std::uint64_t seed, int count, int deg_max,
                          const std::string& alpha_spec) {
  const std::vector<double> alphas = cli::parse_grid(alpha_spec);
  Report rep;
  rep.n_params = 3;
  rep.config = "seed=" + fmt(static_cast<std::size_t>(seed)) + " count=" + fmt(count) +
               " deg-max=" + fmt(deg_max) + " alpha-grid=" + alpha_spec;

  std::vector<double> worst(alphas.size(), 0.0);
  std::mutex merge_mutex;
  cli::run_cells(count, [&](std::size_t cell) -> std::vector<Row> {
    SplitMix64 rng = SplitMix64::split(seed, cell);
    PolyHandle f = random_poly(rng, deg_max);
    PolyHandle g = random_poly(rng, deg_max);
    PolyHandle fg(fc_poly_multiply(f.get(), g.get()));
    if (!fg) die_internal("fc_poly_multiply");
    std::vector<double> local(alphas.size(), 0.0);
    for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
      ExpansionHandle series(fc_leibniz_series_rl(f.get(), g.get(), alphas[ai]));
      ExpansionHandle direct(fc_rl_deriv(fg.get(), alphas[ai]));
      if (!series || !direct) die_internal("fc_leibniz_series_rl/fc_rl_deriv");
      local[ai] = expansion_deviation(series.get(), direct.get());
    }
    std::lock_guard<std::mutex> lock(merge_mutex);
    for (std::size_t ai = 0; ai < alphas.size(); ++ai)
      worst[ai] = std::max(worst[ai], local[ai]);
    return {};
  });

  for (std::size_t ai = 0; ai < alphas.size(); ++ai)
    rep.rows.push_back(cli::make_row(
        "series-leibniz",
        {"alpha=" + fmt(alphas[ai]), "count=" + fmt(count), "deg-max=" + fmt(deg_max)}, 3,
        fmt(worst[ai]), fmt(1e-10), pass_fail(worst[ai] <= 1e-10)));
  return rep;
}

double sampled_preset(const std::string& name, double t) {
  if (name == "sin") return std::sin(t);
  if (name == "cos2") return std::cos(2.0 * t) + 1.5;
  if (name == "expdec") return std::exp(-t);
  if (name == "poly8") {
    // Fixed degree-8 polynomial with mixed signs.
    const double c[9] = {0.5, 1.0, -0.75, 0.3, 0.1, -0.05, 0.02, -0.004, 0.001};
    double acc = 0.0;
    for (int k = 8; k >= 0; --k) acc = acc * t + c[k];
    return acc;
  }
  throw CLI::ValidationError("unknown sampled preset " + name);
}

SampledHandle sample_preset(const std::string& name, double t0, double t1, std::size_t n) {
  std::vector<double> v(n + 1);
  for (std::size_t k = 0; k <= n; ++k)
    v[k] = sampled_preset(name, t0 + (t1 - t0) * static_cast<double>(k) / n);
  SampledHandle h(fc_sampled_create(t0, t1, v.data(), v.size()));
  if (!h) die_internal("fc_sampled_create");
  return h;
}

Report cmd_sampled_ineq(const std::string& fn, const std::string& kind_name, double t0,
                        double t1, double alpha, std::size_t n) {
  const fc_gap_kind kind = kind_name == "rl" ? FC_GAP_RL : FC_GAP_CAPUTO;
  Report rep;
  rep.n_params = 4;
  rep.config = "fn=" + fn + " kind=" + kind_name + " t0=" + fmt(t0) + " t1=" + fmt(t1) +
               " alpha=" + fmt(alpha) + " n=" + fmt(n);

  // Three-level refinement study fixes the scheme-error allowance
  // eps(N) = C N^{-(1-alpha)} from the two coarser levels.
  double c_cal = 0.0;
  for (std::size_t level : {n / 4, n / 2}) {
    SampledHandle s = sample_preset(fn, t0, t1, level);
    double min_gap = 0.0;
    std::size_t argmin = 0;
    double targ = 0.0;
    check_ok(fc_check_inequality_sampled(s.get(), alpha, kind, &min_gap, &argmin, &targ),
             "fc_check_inequality_sampled");
    c_cal = std::max(c_cal, std::max(0.0, -min_gap) *
                                std::pow(static_cast<double>(level), 1.0 - alpha));
    rep.rows.push_back(cli::make_row(
        "sampled-ineq",
        {"fn=" + fn, "kind=" + kind_name, "alpha=" + fmt(alpha), "n=" + fmt(level)}, 4,
        fmt(min_gap), "", kInfo));
  }
  const double eps =
      std::max(1e-12, 3.0 * c_cal * std::pow(static_cast<double>(n), -(1.0 - alpha)));
  SampledHandle s = sample_preset(fn, t0, t1, n);
  double min_gap = 0.0;
  std::size_t argmin = 0;
  double targ = 0.0;
  check_ok(fc_check_inequality_sampled(s.get(), alpha, kind, &min_gap, &argmin, &targ),
           "fc_check_inequality_sampled");
  rep.rows.push_back(cli::make_row(
      "sampled-ineq", {"fn=" + fn, "kind=" + kind_name, "alpha=" + fmt(alpha), "n=" + fmt(n)},
      4, fmt(min_gap), fmt(-eps), pass_fail(min_gap >= -eps)));
  return rep;
}

Report cmd_sharpness(const std::string& kind_name, double lambda, double alpha, int k_cap) {
  Report rep;
  rep.n_params = 4;
  rep.config =
      "kind=" + kind_name + " lambda=" + fmt(lambda) + " alpha=" + fmt(alpha) +
      (kind_name == "rl" ? " k-cap=" + fmt(k_cap) : "");

  fc_counterexample_info info;
  fc_poly* raw = nullptr;
  const fc_status st =
      kind_name == "rl" ? fc_rl_counterexample(lambda, alpha, k_cap, &info, &raw)
                        : fc_caputo_counterexample(lambda, alpha, &info, &raw);
  check_ok(st, "counterexample construction");
  PolyHandle poly(raw);

  const std::vector<std::string> base = {"kind=" + kind_name, "lambda=" + fmt(lambda),
                                         "alpha=" + fmt(alpha)};
  auto with_detail = [&](const std::string& d) {
    std::vector<std::string> p = base;
    p.push_back(d);
    return p;
  };
  if (info.has_interval) {
    rep.rows.push_back(cli::make_row("sharpness", with_detail("interval-lo"), 4,
                                     fmt(info.interval_lo), "", kInfo));
    rep.rows.push_back(cli::make_row("sharpness", with_detail("interval-hi"), 4,
                                     fmt(info.interval_hi), "", kInfo));
  }
  rep.rows.push_back(
      cli::make_row("sharpness", with_detail("degree"), 4, fmt(info.degree), "", kInfo));
  rep.rows.push_back(
      cli::make_row("sharpness", with_detail("witness-t"), 4, fmt(info.witness_t), "", kInfo));
  rep.rows.push_back(cli::make_row("sharpness", with_detail("reversed-gap"), 4,
                                   fmt(info.gap_at_witness), "0",
                                   pass_fail(info.gap_at_witness > 0.0)));
  return rep;
}

Report cmd_solve(const std::string& basis, int modes, double rho, double alpha, double T,
                 std::size_t steps, const std::string& forcing, const std::string& initial,
                 bool emit_trajectory) {
  Report rep;
  rep.n_params = 4;
  rep.config = "basis=" + basis + " modes=" + fmt(modes) + " rho=" + fmt(rho) +
               " alpha=" + fmt(alpha) + " T=" + fmt(T) + " steps=" + fmt(steps) +
               " forcing=" + forcing + " initial=" + initial +
               (emit_trajectory ? " emit-trajectory" : "");

  ProblemHandle problem;
  if (basis == "dirichlet1d") {
    problem = ProblemHandle(fc_problem_dirichlet_1d(modes, rho, alpha, T,
                                                    scalar_preset(forcing), nullptr,
                                                    scalar_preset(initial), nullptr));
  } else if (basis == "stokes2d") {
    problem = ProblemHandle(fc_problem_stokes_2d(modes, rho, alpha, T, vector_preset(forcing),
                                                 nullptr, vector_preset(initial), nullptr));
  } else if (basis == "modal") {
    std::vector<double> lambdas(modes);
    for (int i = 1; i <= modes; ++i) lambdas[i - 1] = static_cast<double>(i) * i;
    const std::vector<double> f = modal_pattern(forcing, modes);
    const std::vector<double> u0 = modal_pattern(initial, modes);
    problem = ProblemHandle(
        fc_problem_modal(alpha, rho, T, lambdas.data(), f.data(), u0.data(), modes));
  } else {
    throw CLI::ValidationError("unknown basis " + basis);
  }
  if (!problem) die_internal("problem construction");

  Handle<fc_trajectory, fc_trajectory_destroy> traj(
      fc_solve_galerkin(problem.get(), steps));
  if (!traj) die_internal("fc_solve_galerkin");

  // Initial condition is reproduced exactly at t = 0.
  double worst_ic = 0.0;
  for (std::size_t i = 0; i < fc_problem_num_modes(problem.get()); ++i) {
    double lambda = 0.0, fcoef = 0.0, u0coef = 0.0, g0 = 0.0;
    check_ok(fc_problem_mode(problem.get(), i, &lambda, &fcoef, &u0coef), "fc_problem_mode");
    check_ok(fc_trajectory_coeff(traj.get(), i, 0, &g0), "fc_trajectory_coeff");
    worst_ic = std::max(worst_ic, std::abs(g0 - u0coef));
  }
  rep.rows.push_back(cli::make_row("solve", {"check=initial-condition", "", "", ""}, 4,
                                   fmt(worst_ic), "0", pass_fail(worst_ic == 0.0)));

  // Closed form vs implicit L1 stepping at t = T, mode by mode.
  if (alpha < 1.0) {
    std::vector<double> l1(steps + 1);
    for (std::size_t i = 0; i < fc_problem_num_modes(problem.get()); ++i) {
      double lambda = 0.0, fcoef = 0.0, u0coef = 0.0, closed = 0.0;
      check_ok(fc_problem_mode(problem.get(), i, &lambda, &fcoef, &u0coef), "fc_problem_mode");
      const double mu = rho * lambda;
      check_ok(fc_solve_mode_closed(mu, u0coef, fcoef, alpha, T, &closed),
               "fc_solve_mode_closed");
      check_ok(fc_solve_mode_l1(mu, u0coef, fcoef, alpha, T, steps, l1.data()),
               "fc_solve_mode_l1");
      const double diff = std::abs(closed - l1[steps]);
      const double tol = 1e-4 * (1.0 + std::abs(closed));
      rep.rows.push_back(cli::make_row(
          "solve", {"check=closed-vs-l1", "mode=" + fmt(i), "mu=" + fmt(mu), "t=" + fmt(T)}, 4,
          fmt(diff), fmt(tol), pass_fail(diff <= tol)));
    }
  }

  if (basis == "stokes2d") {
    // Divergence-free constraint: mode direction is orthogonal to its wavevector.
    double worst = 0.0;
    for (std::size_t i = 0; i < fc_problem_num_modes(problem.get()); ++i) {
      int k1 = 0, k2 = 0;
      double d1 = 0.0, d2 = 0.0;
      check_ok(fc_problem_mode_wave(problem.get(), i, &k1, &k2, &d1, &d2),
               "fc_problem_mode_wave");
      worst = std::max(worst, std::abs(k1 * d1 + k2 * d2));
    }
    rep.rows.push_back(cli::make_row("solve", {"check=divergence-free", "", "", ""}, 4,
                                     fmt(worst), fmt(1e-12), pass_fail(worst <= 1e-12)));
  }

  if (emit_trajectory) {
    const std::size_t stride = std::max<std::size_t>(1, steps / 16);
    for (std::size_t k = 0; k <= steps; k += stride) {
      double t = 0.0, h2 = 0.0, v2 = 0.0;
      check_ok(fc_trajectory_node(traj.get(), k, &t), "fc_trajectory_node");
      check_ok(fc_trajectory_h_norm2(traj.get(), k, &h2), "fc_trajectory_h_norm2");
      check_ok(fc_trajectory_v_norm2(traj.get(), problem.get(), k, &v2),
               "fc_trajectory_v_norm2");
      rep.rows.push_back(cli::make_row(
          "solve", {"check=trajectory", "node=" + fmt(k), "t=" + fmt(t), "vnorm2=" + fmt(v2)},
          4, fmt(h2), "", kInfo));
    }
  }
  return rep;
}

Report cmd_energy(std::uint64_t seed, int count, int modes_max, double lambda_max,
                  std::size_t steps) {
  Report rep;
  rep.n_params = 4;
  rep.config = "seed=" + fmt(static_cast<std::size_t>(seed)) + " count=" + fmt(count) +
               " modes-max=" + fmt(modes_max) + " lambda-max=" + fmt(lambda_max) +
               " steps=" + fmt(steps);
  const double alphas[3] = {0.25, 0.5, 0.75};

  rep.rows = cli::run_cells(count, [&](std::size_t cell) {
    SplitMix64 rng = SplitMix64::split(seed, cell);
    const double alpha = alphas[rng.below(3)];
    const int n = 1 + static_cast<int>(rng.below(modes_max));
    const double rho = rng.uniform(0.25, 4.0);
    const bool zero_forcing = (cell % 5 == 0);
    std::vector<double> lambdas(n), f(n), u0(n);
    for (int i = 0; i < n; ++i) {
      lambdas[i] = rng.uniform(0.5, lambda_max);
      f[i] = zero_forcing ? 0.0 : rng.uniform(-3.0, 3.0);
      u0[i] = rng.uniform(-2.0, 2.0);
    }
    std::sort(lambdas.begin(), lambdas.end());
    ProblemHandle problem(
        fc_problem_modal(alpha, rho, 1.0, lambdas.data(), f.data(), u0.data(), n));
    if (!problem) die_internal("fc_problem_modal");

    // Scheme-error allowance from the two coarser levels.
    double c_energy = 0.0, c_young = 0.0, c_decay = 0.0;
    double scale = 1.0;
    for (int i = 0; i < n; ++i) scale += u0[i] * u0[i] + f[i] * f[i] / (rho * lambdas[i]);
    for (std::size_t level : {steps / 4, steps / 2}) {
      double e_slack = 0.0, y_slack = 0.0, dmax = 0.0;
      std::size_t ae = 0, ay = 0;
      check_ok(fc_check_energy(problem.get(), level, &e_slack, &ae, &y_slack, &ay, &dmax),
               "fc_check_energy");
      const double w = std::pow(static_cast<double>(level), 1.0 - alpha);
      c_energy = std::max(c_energy, std::max(0.0, -e_slack) * w);
      c_young = std::max(c_young, std::max(0.0, -y_slack) * w);
      if (zero_forcing) c_decay = std::max(c_decay, std::max(0.0, dmax) * w);
    }
    const double shrink = std::pow(static_cast<double>(steps), -(1.0 - alpha));
    const double floor_eps = 1e-10 * scale;
    const double eps_energy = std::max(floor_eps, 3.0 * c_energy * shrink);
    const double eps_young = std::max(floor_eps, 3.0 * c_young * shrink);
    const double eps_decay = std::max(floor_eps, 3.0 * c_decay * shrink);

    double e_slack = 0.0, y_slack = 0.0, dmax = 0.0;
    std::size_t ae = 0, ay = 0;
    check_ok(fc_check_energy(problem.get(), steps, &e_slack, &ae, &y_slack, &ay, &dmax),
             "fc_check_energy");
    std::vector<Row> rows;
    const std::string pcell = "problem=" + fmt(cell);
    const std::string palpha = "alpha=" + fmt(alpha);
    rows.push_back(cli::make_row("energy",
                                 {"check=testeineine-slack", pcell, palpha, "modes=" + fmt(n)},
                                 4, fmt(e_slack), fmt(-eps_energy),
                                 pass_fail(e_slack >= -eps_energy)));
    rows.push_back(cli::make_row("energy",
                                 {"check=young-slack", pcell, palpha, "modes=" + fmt(n)}, 4,
                                 fmt(y_slack), fmt(-eps_young),
                                 pass_fail(y_slack >= -eps_young)));
    if (zero_forcing)
      rows.push_back(cli::make_row(
          "energy", {"check=zero-forcing-decay", pcell, palpha, "modes=" + fmt(n)}, 4,
          fmt(dmax), fmt(eps_decay), pass_fail(dmax <= eps_decay)));
    return rows;
  });
  return rep;
}

Report cmd_convergence(int modes, const std::string& levels_spec, const std::string& coef,
                       double rho, double alpha, std::size_t steps) {
  Report rep;
  rep.n_params = 3;
  rep.config = "modes=" + fmt(modes) + " levels=" + levels_spec + " coef=" + coef +
               " rho=" + fmt(rho) + " alpha=" + fmt(alpha) + " steps=" + fmt(steps);

  std::vector<std::size_t> levels;
  std::stringstream ss(levels_spec);
  for (std::string item; std::getline(ss, item, ',');)
    levels.push_back(static_cast<std::size_t>(std::stoul(item)));
  if (levels.size() < 2) throw CLI::ValidationError("need at least two levels");

  std::vector<double> lambdas(modes), f(modes), u0(modes);
  const std::vector<double> pattern = modal_pattern(coef, modes);
  for (int i = 1; i <= modes; ++i) {
    lambdas[i - 1] = static_cast<double>(i) * i;
    f[i - 1] = pattern[i - 1];
    u0[i - 1] = pattern[i - 1];
  }
  ProblemHandle problem(
      fc_problem_modal(alpha, rho, 1.0, lambdas.data(), f.data(), u0.data(), modes));
  if (!problem) die_internal("fc_problem_modal");

  std::vector<double> tails(levels.size());
  check_ok(fc_check_convergence(problem.get(), levels.data(), levels.size(), steps,
                                tails.data()),
           "fc_check_convergence");
  for (std::size_t j = 0; j < levels.size(); ++j) {
    bool ok = true;
    if (j > 0) ok = tails[j] <= tails[j - 1] * (1.0 + 1e-12) + 1e-300;
    if (j + 1 == levels.size()) ok = ok && tails[j] == 0.0;
    rep.rows.push_back(cli::make_row(
        "convergence", {"truncation=" + fmt(levels[j]), "modes=" + fmt(modes), "coef=" + coef},
        3, fmt(tails[j]), "nonincreasing", pass_fail(ok)));
  }
  return rep;
}

Report cmd_special_fn(std::uint64_t seed, long n_max, int alzer_count, int alzer_violations) {
  Report rep;
  rep.n_params = 3;
  rep.config = "seed=" + fmt(static_cast<std::size_t>(seed)) + " n-max=" + fmt(n_max) +
               " alzer-count=" + fmt(alzer_count) + " alzer-violations=" + fmt(alzer_violations);

  // Gautschi sweep: one row per s value, min log-space margin over n.
  for (int si = 0; si <= 20; ++si) {
    const double s = 0.05 * si;
    bool all_ok = true;
    double min_margin = 1e300;
    for (long n = 1; n <= n_max; ++n) {
      int holds = 0;
      check_ok(fc_gautschi_check(n, s, &holds), "fc_gautschi_check");
      all_ok = all_ok && holds == 1;
      double lg_ns = 0.0, lg_n1 = 0.0;
      check_ok(fc_log_gamma(n + s, &lg_ns), "fc_log_gamma");
      check_ok(fc_log_gamma(n + 1.0, &lg_n1), "fc_log_gamma");
      const double ratio = lg_ns - lg_n1;
      const double lo = (1.0 - s) * -std::log(static_cast<double>(n + 1));
      const double hi = (1.0 - s) * -std::log(static_cast<double>(n));
      min_margin = std::min({min_margin, ratio - lo, hi - ratio});
    }
    rep.rows.push_back(cli::make_row("special-fn",
                                     {"check=gautschi", "s=" + fmt(s), "n-max=" + fmt(n_max)},
                                     3, fmt(min_margin), "within-slack", pass_fail(all_ok)));
  }

  // Alzer: hypothesis-satisfying instances must hold; violated hypotheses
  // must raise precondition errors.
  SplitMix64 rng = SplitMix64::split(seed, 7001);
  auto gen_valid = [&](std::vector<double>& a, std::vector<double>& b) {
    const int n = 1 + static_cast<int>(rng.below(6));
    b.resize(n);
    for (double& x : b) x = rng.uniform(0.0, 4.0);
    std::sort(b.begin(), b.end());
    a = b;
    for (int transfer = 0; transfer < 3 && n >= 2; ++transfer) {
      const int i = static_cast<int>(rng.below(n - 1));
      const int j = i + 1 + static_cast<int>(rng.below(n - 1 - i));
      double cap = (i > 0) ? a[i] - a[i - 1] : a[i];
      if (j + 1 < n) cap = std::min(cap, a[j + 1] - a[j]);
      if (cap <= 0.0) continue;
      const double delta = cap * rng.uniform(0.0, 0.9);
      a[i] -= delta;
      a[j] += delta;
    }
  };
  int ok_count = 0;
  for (int it = 0; it < alzer_count; ++it) {
    std::vector<double> a, b;
    gen_valid(a, b);
    const double x = rng.uniform(0.2, 8.0);
    int holds = 0;
    const fc_status st = fc_alzer_check(x, a.data(), b.data(), a.size(), &holds);
    if (st == FC_OK && holds == 1) ++ok_count;
  }
  rep.rows.push_back(cli::make_row("special-fn",
                                   {"check=alzer-holds", "count=" + fmt(alzer_count), ""}, 3,
                                   fmt(ok_count), fmt(alzer_count),
                                   pass_fail(ok_count == alzer_count)));
  int raised = 0;
  for (int it = 0; it < alzer_violations; ++it) {
    std::vector<double> a, b;
    gen_valid(a, b);
    switch (it % 3) {
      case 0: a.back() += 1.0; break;              // totals differ
      case 1: a[0] = -0.5; break;                  // negativity
      default:                                     // break monotonicity of b
        b.back() = -1.0;
        break;
    }
    const double x = rng.uniform(0.2, 8.0);
    int holds = 0;
    if (fc_alzer_check(x, a.data(), b.data(), a.size(), &holds) == FC_ERR_PRECONDITION)
      ++raised;
  }
  rep.rows.push_back(cli::make_row(
      "special-fn", {"check=alzer-violations", "count=" + fmt(alzer_violations), ""}, 3,
      fmt(raised), fmt(alzer_violations), pass_fail(raised == alzer_violations)));

  // Gamma recurrence fuzz and log-space consistency.
  double worst_rec = 0.0;
  for (int it = 0; it < 1000; ++it) {
    const double x = rng.uniform(0.1, 50.0);
    double gx = 0.0, gx1 = 0.0;
    check_ok(fc_gamma(x, &gx), "fc_gamma");
    check_ok(fc_gamma(x + 1.0, &gx1), "fc_gamma");
    worst_rec = std::max(worst_rec, std::abs(x * gx - gx1) / std::abs(gx1));
  }
  rep.rows.push_back(cli::make_row("special-fn",
                                   {"check=gamma-recurrence", "count=1000", ""}, 3,
                                   fmt(worst_rec), fmt(1e-12), pass_fail(worst_rec <= 1e-12)));
  double worst_exp = 0.0;
  for (double x = 0.1; x <= 170.0; x += 0.37) {
    double g = 0.0, lg = 0.0;
    check_ok(fc_gamma(x, &g), "fc_gamma");
    check_ok(fc_log_gamma(x, &lg), "fc_log_gamma");
    worst_exp = std::max(worst_exp, std::abs(g - std::exp(lg)) / g);
  }
  rep.rows.push_back(cli::make_row("special-fn", {"check=gamma-vs-log-gamma", "", ""}, 3,
                                   fmt(worst_exp), fmt(1e-12), pass_fail(worst_exp <= 1e-12)));

  // Digamma recurrence on [0.5, 100].
  double worst_dig = 0.0;
  for (double x = 0.5; x <= 100.0; x += 0.61) {
    double d0 = 0.0, d1 = 0.0;
    check_ok(fc_digamma(x, &d0), "fc_digamma");
    check_ok(fc_digamma(x + 1.0, &d1), "fc_digamma");
    worst_dig = std::max(worst_dig, std::abs(d1 - d0 - 1.0 / x));
  }
  rep.rows.push_back(cli::make_row("special-fn", {"check=digamma-recurrence", "", ""}, 3,
                                   fmt(worst_dig), fmt(1e-12), pass_fail(worst_dig <= 1e-12)));

  // Mittag-Leffler sanity: E_{1,1} = exp on [-5,5]; relaxation is monotone.
  double worst_ml = 0.0;
  for (double z = -5.0; z <= 5.0; z += 0.25) {
    double v = 0.0;
    check_ok(fc_mittag_leffler(1.0, 1.0, z, &v), "fc_mittag_leffler");
    worst_ml = std::max(worst_ml, std::abs(v - std::exp(z)));
  }
  rep.rows.push_back(cli::make_row("special-fn", {"check=mittag-leffler-exp", "", ""}, 3,
                                   fmt(worst_ml), fmt(1e-10), pass_fail(worst_ml <= 1e-10)));
  bool monotone = true;
  for (double alpha : {0.3, 0.5, 0.75}) {
    for (double mu : {1.0, 10.0}) {
      double prev = 1.0;
      for (double t = 0.05; t <= 4.0; t += 0.05) {
        double v = 0.0;
        check_ok(fc_mittag_leffler(alpha, 1.0, -mu * std::pow(t, alpha), &v),
                 "fc_mittag_leffler");
        monotone = monotone && v <= prev + 1e-12 && v > 0.0;
        prev = v;
      }
    }
  }
  rep.rows.push_back(cli::make_row("special-fn", {"check=mittag-leffler-monotone", "", ""}, 3,
                                   fmt(monotone ? 1 : 0), "1", pass_fail(monotone)));
  return rep;
}

int emit(const Report& rep, const std::string& command, std::uint64_t seed,
         const std::string& output_path) {
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!output_path.empty()) {
    file.open(output_path, std::ios::binary);
    if (!file) {
      std::cerr << "fraccalc: cannot open output file " << output_path << "\n";
      return 2;
    }
    os = &file;
  }
  std::vector<std::string> header = {"command"};
  for (std::size_t i = 1; i <= rep.n_params; ++i) header.push_back("param_" + fmt(i));
  header.push_back("value");
  header.push_back("threshold");
  header.push_back("status");
  cli::write_csv_row(*os, header);

  Row meta = cli::make_row(command,
                           {"version=" + std::string(fc_version()),
                            "seed=" + fmt(static_cast<std::size_t>(seed)), "config=" + rep.config},
                           rep.n_params, "", "", "meta");
  cli::write_csv_row(*os, meta.fields);

  bool any_fail = false, any_error = false;
  for (const Row& r : rep.rows) {
    cli::write_csv_row(*os, r.fields);
    any_fail = any_fail || r.failed;
    any_error = any_error || r.errored;
  }
  os->flush();
  if (any_error) return 3;
  return any_fail ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"fraccalc: fractional-calculus verification campaigns"};
  app.require_subcommand(1);
  app.fallthrough(); // global flags may follow the subcommand

  std::string output;
  std::uint64_t seed = 0;
  app.add_option("--output", output, "CSV output path (default: stdout)");
  app.add_option("--seed", seed, "PRNG seed recorded in the report");

  // psd-sweep
  auto* psd = app.add_subcommand("psd-sweep", "positive definiteness of the psi matrices");
  int psd_n_max = 40;
  std::string psd_alpha = "0.05:0.95:0.05";
  psd->add_option("--n-max", psd_n_max, "largest matrix order");
  psd->add_option("--alpha-grid", psd_alpha, "alpha grid start:end:step");

  // poly-gap
  auto* pg = app.add_subcommand("poly-gap", "polynomial Leibniz-gap fuzzing");
  int pg_count = 1000, pg_deg = 12;
  std::string pg_alpha = "0.05:0.95:0.05", pg_t = "0.05:5:0.05";
  pg->add_option("--count", pg_count, "number of random polynomials");
  pg->add_option("--deg-max", pg_deg, "maximum degree");
  pg->add_option("--alpha-grid", pg_alpha, "alpha grid");
  pg->add_option("--t-grid", pg_t, "t grid");

  // series-leibniz
  auto* sl = app.add_subcommand("series-leibniz", "Leibniz series vs direct derivative");
  int sl_count = 200, sl_deg = 6;
  std::string sl_alpha = "0.05:0.95:0.05";
  sl->add_option("--count", sl_count, "number of random pairs");
  sl->add_option("--deg-max", sl_deg, "maximum degree");
  sl->add_option("--alpha-grid", sl_alpha, "alpha grid");

  // sampled-ineq
  auto* si = app.add_subcommand("sampled-ineq", "discrete Leibniz inequality on samples");
  std::string si_fn = "sin", si_kind = "caputo";
  double si_t0 = 0.0, si_t1 = 3.0, si_alpha = 0.5;
  std::size_t si_n = 2048;
  si->add_option("--fn", si_fn, "test function preset (sin|cos2|expdec|poly8)");
  si->add_option("--kind", si_kind, "rl|caputo");
  si->add_option("--t0", si_t0, "interval start");
  si->add_option("--t1", si_t1, "interval end");
  si->add_option("--alpha", si_alpha, "fractional order");
  si->add_option("--n", si_n, "finest grid intervals");

  // sharpness
  auto* sh = app.add_subcommand("sharpness", "counterexamples for lambda != 2");
  std::string sh_kind = "caputo";
  double sh_lambda = 1.5, sh_alpha = 0.5;
  int sh_kcap = 2000;
  sh->add_option("--kind", sh_kind, "rl|caputo");
  sh->add_option("--lambda", sh_lambda, "constant to refute");
  sh->add_option("--alpha", sh_alpha, "fractional order");
  sh->add_option("--k-cap", sh_kcap, "degree search cap (rl)");

  // solve
  auto* so = app.add_subcommand("solve", "spectral Galerkin solve + cross-checks");
  std::string so_basis = "dirichlet1d", so_forcing = "sinx", so_initial = "zero";
  int so_modes = 8;
  double so_rho = 1.0, so_alpha = 0.5, so_T = 1.0;
  std::size_t so_steps = 4096;
  bool so_traj = false;
  so->add_option("--basis", so_basis, "dirichlet1d|stokes2d|modal");
  so->add_option("--modes", so_modes, "mode count");
  so->add_option("--rho", so_rho, "viscosity");
  so->add_option("--alpha", so_alpha, "fractional order");
  so->add_option("--T", so_T, "time horizon");
  so->add_option("--steps", so_steps, "time steps");
  so->add_option("--forcing", so_forcing, "forcing preset");
  so->add_option("--initial", so_initial, "initial-data preset");
  so->add_flag("--emit-trajectory", so_traj, "emit norm trajectory rows");

  // energy
  auto* en = app.add_subcommand("energy", "randomized discrete energy-inequality suite");
  int en_count = 50, en_modes = 32;
  double en_lambda_max = 1000.0;
  std::size_t en_steps = 512;
  en->add_option("--count", en_count, "number of random problems");
  en->add_option("--modes-max", en_modes, "max modes per problem");
  en->add_option("--lambda-max", en_lambda_max, "largest eigenvalue");
  en->add_option("--steps", en_steps, "finest time steps");

  // convergence
  auto* cv = app.add_subcommand("convergence", "Galerkin truncation tails");
  int cv_modes = 32;
  std::string cv_levels = "4,8,16,32", cv_coef = "inv_i";
  double cv_rho = 1.0, cv_alpha = 0.5;
  std::size_t cv_steps = 256;
  cv->add_option("--modes", cv_modes, "finest truncation");
  cv->add_option("--levels", cv_levels, "comma-separated truncation levels");
  cv->add_option("--coef", cv_coef, "coefficient pattern (ones|inv_i|inv_i2)");
  cv->add_option("--rho", cv_rho, "viscosity");
  cv->add_option("--alpha", cv_alpha, "fractional order");
  cv->add_option("--steps", cv_steps, "time steps");

  // special-fn
  auto* sf = app.add_subcommand("special-fn", "scalar special-function checks");
  long sf_nmax = 10000;
  int sf_alzer = 500, sf_alzer_bad = 100;
  sf->add_option("--n-max", sf_nmax, "Gautschi n range");
  sf->add_option("--alzer-count", sf_alzer, "valid Alzer instances");
  sf->add_option("--alzer-violations", sf_alzer_bad, "violating Alzer instances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Report rep;
    std::string command;
    if (psd->parsed()) {
      command = "psd-sweep";
      rep = cmd_psd_sweep(psd_n_max, psd_alpha);
    } else if (pg->parsed()) {
      command = "poly-gap";
      rep = cmd_poly_gap(seed, pg_count, pg_deg, pg_alpha, pg_t);
    } else if (sl->parsed()) {
      command = "series-leibniz";
      rep = cmd_series_leibniz(seed, sl_count, sl_deg, sl_alpha);
    } else if (si->parsed()) {
      command = "sampled-ineq";
      rep = cmd_sampled_ineq(si_fn, si_kind, si_t0, si_t1, si_alpha, si_n);
    } else if (sh->parsed()) {
      command = "sharpness";
      rep = cmd_sharpness(sh_kind, sh_lambda, sh_alpha, sh_kcap);
    } else if (so->parsed()) {
      command = "solve";
      rep = cmd_solve(so_basis, so_modes, so_rho, so_alpha, so_T, so_steps, so_forcing,
                      so_initial, so_traj);
    } else if (en->parsed()) {
      command = "energy";
      rep = cmd_energy(seed, en_count, en_modes, en_lambda_max, en_steps);
    } else if (cv->parsed()) {
      command = "convergence";
      rep = cmd_convergence(cv_modes, cv_levels, cv_coef, cv_rho, cv_alpha, cv_steps);
    } else {
      command = "special-fn";
      rep = cmd_special_fn(seed, sf_nmax, sf_alzer, sf_alzer_bad);
    }
    return emit(rep, command, seed, output);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "fraccalc: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "fraccalc: internal error: " << e.what() << "\n";
    return 3;
  }
}
