#include "fraccalc.h"

#include <cstring>
#include <exception>
#include <new>
#include <stdexcept>
#include <string>

#include "galerkin.hpp"
#include "numfrac.hpp"
#include "polyfrac.hpp"
#include "psimatrix.hpp"
#include "sharpness.hpp"
#include "specfn.hpp"

// Opaque handle definitions: thin owning wrappers over the core types.
struct fc_poly {
  fraccalc::ShiftedPolynomial value;
};
struct fc_expansion {
  fraccalc::FracExpansion value;
};
struct fc_matrix {
  fraccalc::PsiMatrix value;
};
struct fc_sampled {
  fraccalc::SampledFunction value;
};
struct fc_problem {
  fraccalc::SpectralProblem value;
};
struct fc_trajectory {
  fraccalc::ModeTrajectory value;
};

namespace {

thread_local std::string g_last_error;

fc_status classify(const std::exception& e) {
  if (dynamic_cast<const std::invalid_argument*>(&e)) return FC_ERR_PRECONDITION;
  if (dynamic_cast<const std::domain_error*>(&e)) return FC_ERR_DOMAIN;
  if (dynamic_cast<const std::overflow_error*>(&e)) return FC_ERR_OVERFLOW;
  if (dynamic_cast<const std::out_of_range*>(&e)) return FC_ERR_BADARG;
  if (dynamic_cast<const std::bad_alloc*>(&e)) return FC_ERR_EVAL;
  const std::string what = e.what();
  if (what.find("exhaust") != std::string::npos || what.find("no k <=") != std::string::npos)
    return FC_ERR_SEARCH;
  return FC_ERR_EVAL;
}

template <typename Fn>
fc_status guard(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return FC_OK;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return classify(e);
  } catch (...) {
    g_last_error = "unknown error";
    return FC_ERR_EVAL;
  }
}

// Creator wrapper: returns nullptr on failure and records the message.
template <typename Handle, typename Fn>
Handle* create(Fn&& fn) {
  try {
    g_last_error.clear();
    return new Handle{fn()};
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return nullptr;
  } catch (...) {
    g_last_error = "unknown error";
    return nullptr;
  }
}

fc_status need(bool ok) {
  if (!ok) {
    g_last_error = "null pointer or malformed argument";
    return FC_ERR_BADARG;
  }
  return FC_OK;
}

fraccalc::GapKind to_kind(fc_gap_kind k) {
  return k == FC_GAP_RL ? fraccalc::GapKind::RL : fraccalc::GapKind::Caputo;
}

void fill_info(const fraccalc::Counterexample& c, fc_counterexample_info* out,
               fc_poly** poly_out) {
  out->lambda = c.lambda;
  out->alpha = c.alpha;
  out->kind = c.kind == fraccalc::GapKind::RL ? FC_GAP_RL : FC_GAP_CAPUTO;
  out->degree = c.degree;
  out->witness_t = c.witness_t;
  out->gap_at_witness = c.gap_at_witness;
  out->has_interval = c.valid_interval.has_value() ? 1 : 0;
  out->interval_lo = c.valid_interval ? c.valid_interval->first : 0.0;
  out->interval_hi = c.valid_interval ? c.valid_interval->second : 0.0;
  if (poly_out) *poly_out = new fc_poly{c.poly};
}

} // namespace

extern "C" {

const char* fc_version(void) { return "0.1.0"; }

const char* fc_status_name(fc_status s) {
  switch (s) {
    case FC_OK: return "ok";
    case FC_ERR_DOMAIN: return "domain-error";
    case FC_ERR_OVERFLOW: return "overflow";
    case FC_ERR_PRECONDITION: return "precondition-violation";
    case FC_ERR_EVAL: return "evaluation-error";
    case FC_ERR_SEARCH: return "search-exhausted";
    case FC_ERR_BADARG: return "bad-argument";
  }
  return "unknown";
}

const char* fc_last_error(void) { return g_last_error.c_str(); }

/* ---- scalars ---- */

fc_status fc_gamma(double x, double* out) {
  if (fc_status s = need(out); s != FC_OK) return s;
  return guard([&] { *out = fraccalc::gamma(x); });
}

fc_status fc_log_gamma(double x, double* out) {
  if (fc_status s = need(out); s != FC_OK) return s;
  return guard([&] { *out = fraccalc::log_gamma(x); });
}

fc_status fc_digamma(double x, double* out) {
  if (fc_status s = need(out); s != FC_OK) return s;
  return guard([&] { *out = fraccalc::digamma(x); });
}

fc_status fc_frac_binomial(double alpha, int k, double* out) {
  if (fc_status s = need(out); s != FC_OK) return s;
  return guard([&] { *out = fraccalc::frac_binomial(alpha, k); });
}

fc_status fc_mittag_leffler(double alpha, double beta, double z, double* out) {
  if (fc_status s = need(out); s != FC_OK) return s;
  return guard([&] { *out = fraccalc::mittag_leffler(alpha, beta, z); });
}

fc_status fc_gautschi_check(long n, double s, int* holds) {
  if (fc_status st = need(holds); st != FC_OK) return st;
  return guard([&] { *holds = fraccalc::gautschi_check(n, s) ? 1 : 0; });
}

fc_status fc_alzer_check(double x, const double* a, const double* b, size_t len, int* holds) {
  if (fc_status st = need(holds && a && b && len > 0); st != FC_OK) return st;
  return guard([&] {
    *holds = fraccalc::alzer_check(x, {a, len}, {b, len}) ? 1 : 0;
  });
}

fc_status fc_psi(int i, int j, double alpha, double* out) {
  if (fc_status s = need(out); s != FC_OK) return s;
  return guard([&] { *out = fraccalc::psi(i, j, alpha); });
}

fc_status fc_phi(int i, int j, double alpha, double* out) {
  if (fc_status s = need(out); s != FC_OK) return s;
  return guard([&] { *out = fraccalc::phi(i, j, alpha); });
}

fc_status fc_phi_sequence(double alpha, int k_max, double* out) {
  if (fc_status s = need(out && k_max >= 2); s != FC_OK) return s;
  return guard([&] {
    const fraccalc::PhiSequence seq(alpha, k_max);
    for (int k = 0; k <= k_max; ++k) out[k] = seq.values[k];
  });
}

/* ---- polynomials ---- */

fc_poly* fc_poly_create(double t0, const double* coeffs, size_t len) {
  return create<fc_poly>([&] {
    std::vector<double> c(coeffs, coeffs + len);
    return fraccalc::ShiftedPolynomial(t0, std::move(c));
  });
}

fc_poly* fc_poly_from_monomial(const double* b, size_t len, double t0) {
  return create<fc_poly>([&] {
    std::vector<double> c(b, b + len);
    return fraccalc::from_monomial(c, t0);
  });
}

void fc_poly_destroy(fc_poly* p) { delete p; }

int fc_poly_degree(const fc_poly* p) { return p ? p->value.degree() : -1; }

double fc_poly_t0(const fc_poly* p) { return p ? p->value.t0 : 0.0; }

fc_status fc_poly_coeff(const fc_poly* p, int k, double* out) {
  if (fc_status s = need(p && out && k >= 0); s != FC_OK) return s;
  *out = k <= p->value.degree() ? p->value.coeffs[k] : 0.0;
  return FC_OK;
}

fc_status fc_poly_eval(const fc_poly* p, double t, double* out) {
  if (fc_status s = need(p && out); s != FC_OK) return s;
  return guard([&] { *out = p->value.eval(t); });
}

fc_poly* fc_poly_multiply(const fc_poly* p, const fc_poly* q) {
  if (!p || !q) {
    g_last_error = "null polynomial handle";
    return nullptr;
  }
  return create<fc_poly>([&] { return fraccalc::multiply(p->value, q->value); });
}

fc_expansion* fc_rl_deriv(const fc_poly* p, double alpha) {
  if (!p) { g_last_error = "null polynomial handle"; return nullptr; }
  return create<fc_expansion>([&] { return fraccalc::rl_deriv(p->value, alpha); });
}

fc_expansion* fc_caputo_deriv(const fc_poly* p, double alpha) {
  if (!p) { g_last_error = "null polynomial handle"; return nullptr; }
  return create<fc_expansion>([&] { return fraccalc::caputo_deriv(p->value, alpha); });
}

fc_expansion* fc_rl_integral(const fc_poly* p, double alpha) {
  if (!p) { g_last_error = "null polynomial handle"; return nullptr; }
  return create<fc_expansion>([&] { return fraccalc::rl_integral(p->value, alpha); });
}

fc_expansion* fc_leibniz_series_rl(const fc_poly* f, const fc_poly* g, double alpha) {
  if (!f || !g) { g_last_error = "null polynomial handle"; return nullptr; }
  return create<fc_expansion>(
      [&] { return fraccalc::leibniz_series_rl(f->value, g->value, alpha); });
}

void fc_expansion_destroy(fc_expansion* e) { delete e; }

size_t fc_expansion_num_terms(const fc_expansion* e) { return e ? e->value.terms.size() : 0; }

fc_status fc_expansion_term(const fc_expansion* e, size_t i, double* coeff, double* exponent) {
  if (fc_status s = need(e && coeff && exponent && i < e->value.terms.size()); s != FC_OK)
    return s;
  *coeff = e->value.terms[i].coeff;
  *exponent = e->value.terms[i].exponent;
  return FC_OK;
}

fc_status fc_expansion_eval(const fc_expansion* e, double t, double* out) {
  if (fc_status s = need(e && out); s != FC_OK) return s;
  return guard([&] { *out = e->value.eval(t); });
}

fc_status fc_gap(const fc_poly* p, double alpha, double t, fc_gap_kind kind, double* out) {
  if (fc_status s = need(p && out); s != FC_OK) return s;
  return guard([&] {
    *out = kind == FC_GAP_RL ? fraccalc::gap_rl(p->value, alpha, t)
                             : fraccalc::gap_caputo(p->value, alpha, t);
  });
}

fc_status fc_gap_scale(const fc_poly* p, double alpha, double t, fc_gap_kind kind, double* out) {
  if (fc_status s = need(p && out); s != FC_OK) return s;
  return guard([&] {
    *out = kind == FC_GAP_RL ? fraccalc::gap_scale_rl(p->value, alpha, t)
                             : fraccalc::gap_scale_caputo(p->value, alpha, t);
  });
}

fc_status fc_quadratic_form_gap(const fc_poly* p, double alpha, double t, fc_gap_kind kind,
                                double* out) {
  if (fc_status s = need(p && out); s != FC_OK) return s;
  return guard(
      [&] { *out = fraccalc::quadratic_form_gap(p->value, alpha, t, to_kind(kind)); });
}

fc_status fc_lambda_gap(const fc_poly* p, double lambda, double alpha, double t,
                        fc_gap_kind kind, double* out) {
  if (fc_status s = need(p && out); s != FC_OK) return s;
  return guard(
      [&] { *out = fraccalc::lambda_gap(p->value, lambda, alpha, t, to_kind(kind)); });
}

/* ---- matrices ---- */

fc_matrix* fc_build_a(int n, double alpha) {
  return create<fc_matrix>([&] { return fraccalc::build_A(n, alpha); });
}

fc_matrix* fc_build_b(int n, double alpha) {
  return create<fc_matrix>([&] { return fraccalc::build_B(n, alpha); });
}

fc_matrix* fc_build_a_tilde(int n, double alpha) {
  return create<fc_matrix>([&] { return fraccalc::build_A_tilde(n, alpha); });
}

void fc_matrix_destroy(fc_matrix* m) { delete m; }

int fc_matrix_order(const fc_matrix* m) { return m ? m->value.order : 0; }

int fc_matrix_index_lo(const fc_matrix* m) { return m ? m->value.index_lo : 0; }

fc_status fc_matrix_entry(const fc_matrix* m, int i, int j, double* out) {
  if (fc_status s = need(m && out); s != FC_OK) return s;
  const int lo = m->value.index_lo, hi = lo + m->value.order;
  if (i < lo || i >= hi || j < lo || j >= hi) return need(false);
  *out = m->value.entry(i, j);
  return FC_OK;
}

fc_status fc_cholesky_pd(const fc_matrix* m, double tol, int* pd, int* fail_index,
                         double* min_pivot) {
  if (fc_status s = need(m && pd); s != FC_OK) return s;
  return guard([&] {
    const fraccalc::CholeskyReport rep = fraccalc::cholesky_pd(m->value, tol);
    *pd = rep.positive_definite ? 1 : 0;
    if (fail_index) *fail_index = rep.fail_index;
    if (min_pivot) *min_pivot = rep.min_pivot;
  });
}

fc_status fc_schur_split(const fc_matrix* b, double* d_out, fc_matrix** D_out) {
  if (fc_status s = need(b && d_out && D_out); s != FC_OK) return s;
  return guard([&] {
    fraccalc::SchurSplit split = fraccalc::schur_split(b->value);
    *d_out = split.d;
    *D_out = new fc_matrix{std::move(split.D)};
  });
}

fc_status fc_verify_psi_monotone(int n_max, double alpha, int* holds) {
  if (fc_status s = need(holds); s != FC_OK) return s;
  return guard([&] { *holds = fraccalc::verify_psi_monotone(n_max, alpha) ? 1 : 0; });
}

fc_status fc_verify_phi_product(int n_max, double alpha, int* holds) {
  if (fc_status s = need(holds); s != FC_OK) return s;
  return guard([&] { *holds = fraccalc::verify_phi_product(n_max, alpha) ? 1 : 0; });
}

fc_status fc_verify_border_inequality(int n, double alpha, int* holds) {
  if (fc_status s = need(holds); s != FC_OK) return s;
  return guard([&] { *holds = fraccalc::verify_border_inequality(n, alpha) ? 1 : 0; });
}

fc_status fc_psd_verify_exact(int n, long alpha_num, long alpha_den, int bordered, int* holds) {
  if (fc_status s = need(holds); s != FC_OK) return s;
  return guard([&] {
    *holds = fraccalc::psd_verify_exact(n, alpha_num, alpha_den, bordered != 0) ? 1 : 0;
  });
}

fc_status fc_rationalize(double x, long max_den, long* num, long* den) {
  if (fc_status s = need(num && den && max_den > 0); s != FC_OK) return s;
  return guard([&] { fraccalc::rationalize(x, max_den, *num, *den); });
}

/* ---- sampled functions ---- */

fc_sampled* fc_sampled_create(double t0, double t1, const double* values, size_t n_values) {
  if (!values) { g_last_error = "null values"; return nullptr; }
  return create<fc_sampled>([&] {
    std::vector<double> v(values, values + n_values);
    return fraccalc::SampledFunction(t0, t1, std::move(v));
  });
}

void fc_sampled_destroy(fc_sampled* f) { delete f; }

size_t fc_sampled_num_values(const fc_sampled* f) { return f ? f->value.values.size() : 0; }

fc_status fc_sampled_value(const fc_sampled* f, size_t k, double* out) {
  if (fc_status s = need(f && out && k < f->value.values.size()); s != FC_OK) return s;
  *out = f->value.values[k];
  return FC_OK;
}

fc_status fc_sampled_node(const fc_sampled* f, size_t k, double* out) {
  if (fc_status s = need(f && out && k < f->value.values.size()); s != FC_OK) return s;
  *out = f->value.node(k);
  return FC_OK;
}

fc_sampled* fc_rl_integral_num(const fc_sampled* f, double alpha) {
  if (!f) { g_last_error = "null sampled-function handle"; return nullptr; }
  return create<fc_sampled>([&] { return fraccalc::rl_integral_num(f->value, alpha); });
}

fc_sampled* fc_caputo_deriv_num(const fc_sampled* f, double alpha) {
  if (!f) { g_last_error = "null sampled-function handle"; return nullptr; }
  return create<fc_sampled>([&] { return fraccalc::caputo_deriv_num(f->value, alpha); });
}

fc_sampled* fc_rl_deriv_num(const fc_sampled* f, double alpha) {
  if (!f) { g_last_error = "null sampled-function handle"; return nullptr; }
  return create<fc_sampled>([&] { return fraccalc::rl_deriv_num(f->value, alpha); });
}

fc_status fc_check_inequality_sampled(const fc_sampled* f, double alpha, fc_gap_kind kind,
                                      double* min_gap, size_t* argmin, double* t_argmin) {
  if (fc_status s = need(f && min_gap); s != FC_OK) return s;
  return guard([&] {
    const fraccalc::WorstGapReport rep =
        fraccalc::check_inequality_sampled(f->value, alpha, to_kind(kind));
    *min_gap = rep.min_gap;
    if (argmin) *argmin = rep.argmin;
    if (t_argmin) *t_argmin = rep.t_argmin;
  });
}

/* ---- sharpness ---- */

fc_status fc_caputo_counterexample(double lambda, double alpha, fc_counterexample_info* out,
                                   fc_poly** poly_out) {
  if (fc_status s = need(out); s != FC_OK) return s;
  return guard([&] {
    fill_info(fraccalc::caputo_counterexample(lambda, alpha), out, poly_out);
  });
}

fc_status fc_rl_counterexample(double lambda, double alpha, int k_cap,
                               fc_counterexample_info* out, fc_poly** poly_out) {
  if (fc_status s = need(out); s != FC_OK) return s;
  return guard([&] {
    fill_info(fraccalc::rl_counterexample(lambda, alpha, k_cap), out, poly_out);
  });
}

/* ---- galerkin ---- */

fc_problem* fc_problem_modal(double alpha, double rho, double T, const double* lambdas,
                             const double* f_coefs, const double* u0_coefs, size_t n) {
  if (!lambdas || !f_coefs || !u0_coefs) { g_last_error = "null mode data"; return nullptr; }
  return create<fc_problem>([&] {
    std::vector<fraccalc::Mode> modes(n);
    for (size_t i = 0; i < n; ++i) {
      modes[i].lambda = lambdas[i];
      modes[i].f_coef = f_coefs[i];
      modes[i].u0_coef = u0_coefs[i];
    }
    return fraccalc::build_modal(std::move(modes), rho, alpha, T);
  });
}

fc_problem* fc_problem_dirichlet_1d(int n_modes, double rho, double alpha, double T,
                                    fc_scalar_field forcing, void* forcing_ctx,
                                    fc_scalar_field initial, void* initial_ctx) {
  if (!forcing || !initial) { g_last_error = "null field callback"; return nullptr; }
  return create<fc_problem>([&] {
    return fraccalc::build_dirichlet_1d(
        n_modes, rho, alpha, T, [&](double x) { return forcing(x, forcing_ctx); },
        [&](double x) { return initial(x, initial_ctx); });
  });
}

fc_problem* fc_problem_stokes_2d(int n_modes, double rho, double alpha, double T,
                                 fc_vector_field forcing, void* forcing_ctx,
                                 fc_vector_field initial, void* initial_ctx) {
  if (!forcing || !initial) { g_last_error = "null field callback"; return nullptr; }
  return create<fc_problem>([&] {
    auto wrap = [](fc_vector_field f, void* ctx) {
      return [f, ctx](double x, double y) {
        double out[2];
        f(x, y, out, ctx);
        return std::array<double, 2>{out[0], out[1]};
      };
    };
    return fraccalc::build_stokes_2d(n_modes, rho, alpha, T, wrap(forcing, forcing_ctx),
                                     wrap(initial, initial_ctx));
  });
}

void fc_problem_destroy(fc_problem* p) { delete p; }

size_t fc_problem_num_modes(const fc_problem* p) { return p ? p->value.modes.size() : 0; }

fc_status fc_problem_mode(const fc_problem* p, size_t i, double* lambda, double* f_coef,
                          double* u0_coef) {
  if (fc_status s = need(p && i < p->value.modes.size()); s != FC_OK) return s;
  const fraccalc::Mode& m = p->value.modes[i];
  if (lambda) *lambda = m.lambda;
  if (f_coef) *f_coef = m.f_coef;
  if (u0_coef) *u0_coef = m.u0_coef;
  return FC_OK;
}

fc_status fc_problem_mode_wave(const fc_problem* p, size_t i, int* k1, int* k2, double* d1,
                               double* d2) {
  if (fc_status s = need(p && i < p->value.modes.size()); s != FC_OK) return s;
  if (p->value.basis != fraccalc::BasisTag::stokes_fourier_2d) return need(false);
  const fraccalc::Mode& m = p->value.modes[i];
  if (k1) *k1 = m.wavevector[0];
  if (k2) *k2 = m.wavevector[1];
  if (d1) *d1 = m.direction[0];
  if (d2) *d2 = m.direction[1];
  return FC_OK;
}

fc_status fc_solve_mode_closed(double mu, double g0, double c, double alpha, double t,
                               double* out) {
  if (fc_status s = need(out); s != FC_OK) return s;
  return guard([&] { *out = fraccalc::solve_mode_closed(mu, g0, c, alpha, t); });
}

fc_status fc_solve_mode_l1(double mu, double g0, double c, double alpha, double T,
                           size_t n_steps, double* out) {
  if (fc_status s = need(out && n_steps >= 2); s != FC_OK) return s;
  return guard([&] {
    const std::vector<double> g = fraccalc::solve_mode_l1(mu, g0, c, alpha, T, n_steps);
    std::memcpy(out, g.data(), g.size() * sizeof(double));
  });
}

fc_trajectory* fc_solve_galerkin(const fc_problem* p, size_t n_steps) {
  if (!p) { g_last_error = "null problem handle"; return nullptr; }
  return create<fc_trajectory>([&] { return fraccalc::solve_galerkin(p->value, n_steps); });
}

void fc_trajectory_destroy(fc_trajectory* t) { delete t; }

size_t fc_trajectory_steps(const fc_trajectory* t) { return t ? t->value.steps : 0; }

fc_status fc_trajectory_node(const fc_trajectory* t, size_t k, double* out) {
  if (fc_status s = need(t && out && k <= t->value.steps); s != FC_OK) return s;
  *out = t->value.node(k);
  return FC_OK;
}

fc_status fc_trajectory_coeff(const fc_trajectory* t, size_t mode, size_t k, double* out) {
  if (fc_status s = need(t && out && mode < t->value.coeffs.size() && k <= t->value.steps);
      s != FC_OK)
    return s;
  *out = t->value.coeffs[mode][k];
  return FC_OK;
}

fc_status fc_trajectory_h_norm2(const fc_trajectory* t, size_t k, double* out) {
  if (fc_status s = need(t && out && k <= t->value.steps); s != FC_OK) return s;
  *out = t->value.h_norm2(k);
  return FC_OK;
}

fc_status fc_trajectory_v_norm2(const fc_trajectory* t, const fc_problem* p, size_t k,
                                double* out) {
  if (fc_status s = need(t && p && out && k <= t->value.steps &&
                         t->value.coeffs.size() == p->value.modes.size());
      s != FC_OK)
    return s;
  *out = t->value.v_norm2(k, p->value);
  return FC_OK;
}

fc_status fc_check_energy(const fc_problem* p, size_t n_steps, double* min_energy_slack,
                          size_t* argmin_energy, double* min_young_slack, size_t* argmin_young,
                          double* max_h_derivative) {
  if (fc_status s = need(p && min_energy_slack && min_young_slack); s != FC_OK) return s;
  return guard([&] {
    const fraccalc::ModeTrajectory traj = fraccalc::solve_galerkin(p->value, n_steps);
    const fraccalc::EnergyReport rep = fraccalc::check_energy(traj, p->value);
    *min_energy_slack = rep.min_energy_slack;
    *min_young_slack = rep.min_young_slack;
    if (argmin_energy) *argmin_energy = rep.argmin_energy;
    if (argmin_young) *argmin_young = rep.argmin_young;
    if (max_h_derivative) *max_h_derivative = rep.max_h_derivative;
  });
}

fc_status fc_check_convergence(const fc_problem* p, const size_t* truncations,
                               size_t num_truncations, size_t n_steps, double* out_tails) {
  if (fc_status s = need(p && truncations && out_tails && num_truncations >= 2); s != FC_OK)
    return s;
  return guard([&] {
    const std::vector<std::size_t> levels(truncations, truncations + num_truncations);
    const std::vector<double> tails = fraccalc::check_convergence(p->value, levels, n_steps);
    std::memcpy(out_tails, tails.data(), tails.size() * sizeof(double));
  });
}

} /* extern "C" */
