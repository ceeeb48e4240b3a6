#ifndef FRACCALC_H
#define FRACCALC_H

/* fraccalc: fractional-calculus verification library.
 *
 * C interface to the fraccalc core. Scalar routines return an fc_status and
 * write results through out-parameters; aggregate objects (polynomials,
 * expansions, matrices, sampled functions, spectral problems, trajectories)
 * are opaque handles created by fc_*_create/builders and released with the
 * matching fc_*_destroy. Creators return NULL on failure; fc_last_error()
 * returns a thread-local description of the most recent failure.
 *
 * All functions are thread-safe; handles are immutable after creation and may
 * be shared across threads.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fc_status {
  FC_OK = 0,
  FC_ERR_DOMAIN = 1,       /* argument outside the mathematical domain */
  FC_ERR_OVERFLOW = 2,     /* result not representable */
  FC_ERR_PRECONDITION = 3, /* hypothesis/precondition violated */
  FC_ERR_EVAL = 4,         /* evaluation failed (unsupported regime, ...) */
  FC_ERR_SEARCH = 5,       /* bounded search exhausted */
  FC_ERR_BADARG = 6,       /* null pointer / malformed argument */
} fc_status;

typedef enum fc_gap_kind { FC_GAP_RL = 0, FC_GAP_CAPUTO = 1 } fc_gap_kind;

const char* fc_version(void);
const char* fc_status_name(fc_status s);
/* Message for the most recent error on this thread ("" if none). */
const char* fc_last_error(void);

/* ---- scalar special functions ---------------------------------------- */

fc_status fc_gamma(double x, double* out);
fc_status fc_log_gamma(double x, double* out);
fc_status fc_digamma(double x, double* out);
fc_status fc_frac_binomial(double alpha, int k, double* out);
/* E_{alpha,beta}(z), alpha in (0,1], beta > 0, z <= 5. */
fc_status fc_mittag_leffler(double alpha, double beta, double z, double* out);
/* Gautschi inequality check; *holds is 0/1. */
fc_status fc_gautschi_check(long n, double s, int* holds);
/* Alzer product inequality; hypothesis violations yield FC_ERR_PRECONDITION. */
fc_status fc_alzer_check(double x, const double* a, const double* b, size_t len, int* holds);
/* Gamma-ratio matrix entries. */
fc_status fc_psi(int i, int j, double alpha, double* out);
fc_status fc_phi(int i, int j, double alpha, double* out);
/* Fills out[0..k_max] with phi_k = Gamma(k+1)/Gamma(k+1-alpha). */
fc_status fc_phi_sequence(double alpha, int k_max, double* out);

/* ---- polynomials in the shifted basis (t - t0)^k ---------------------- */

typedef struct fc_poly fc_poly;
typedef struct fc_expansion fc_expansion;

fc_poly* fc_poly_create(double t0, const double* coeffs, size_t len);
/* From monomial coefficients b_0..b_{len-1} of sum b_k t^k. */
fc_poly* fc_poly_from_monomial(const double* b, size_t len, double t0);
void fc_poly_destroy(fc_poly* p);
int fc_poly_degree(const fc_poly* p); /* -1 for the zero polynomial */
double fc_poly_t0(const fc_poly* p);
fc_status fc_poly_coeff(const fc_poly* p, int k, double* out);
fc_status fc_poly_eval(const fc_poly* p, double t, double* out);
fc_poly* fc_poly_multiply(const fc_poly* p, const fc_poly* q);

/* Closed-form fractional operators; alpha in (0,1). */
fc_expansion* fc_rl_deriv(const fc_poly* p, double alpha);
fc_expansion* fc_caputo_deriv(const fc_poly* p, double alpha);
fc_expansion* fc_rl_integral(const fc_poly* p, double alpha);
/* Truncated fractional Leibniz series for D^alpha(fg). */
fc_expansion* fc_leibniz_series_rl(const fc_poly* f, const fc_poly* g, double alpha);

void fc_expansion_destroy(fc_expansion* e);
size_t fc_expansion_num_terms(const fc_expansion* e);
fc_status fc_expansion_term(const fc_expansion* e, size_t i, double* coeff, double* exponent);
fc_status fc_expansion_eval(const fc_expansion* e, double t, double* out);

/* Leibniz-inequality gap 2 (D^alpha P) P - D^alpha(P^2) and its tolerance
 * scale 1 + |2 (D^alpha P) P|. RL requires t > t0, Caputo t >= t0. */
fc_status fc_gap(const fc_poly* p, double alpha, double t, fc_gap_kind kind, double* out);
fc_status fc_gap_scale(const fc_poly* p, double alpha, double t, fc_gap_kind kind, double* out);
/* Same gap through the quadratic form against the psi matrix. */
fc_status fc_quadratic_form_gap(const fc_poly* p, double alpha, double t, fc_gap_kind kind,
                                double* out);
/* lambda-gap D^alpha(P^2) - lambda (D^alpha P) P (positive = reversed). */
fc_status fc_lambda_gap(const fc_poly* p, double lambda, double alpha, double t,
                        fc_gap_kind kind, double* out);

/* ---- psi matrices ------------------------------------------------------ */

typedef struct fc_matrix fc_matrix;

fc_matrix* fc_build_a(int n, double alpha);       /* (psi(i,j)), i,j in 1..n */
fc_matrix* fc_build_b(int n, double alpha);       /* bordered, indices 0..n */
fc_matrix* fc_build_a_tilde(int n, double alpha); /* index reversal of A_n */
void fc_matrix_destroy(fc_matrix* m);
int fc_matrix_order(const fc_matrix* m);
int fc_matrix_index_lo(const fc_matrix* m);
/* Entry by mathematical indices (in [index_lo, index_lo + order)). */
fc_status fc_matrix_entry(const fc_matrix* m, int i, int j, double* out);

/* Cholesky with relative pivot threshold tol * max diagonal. *pd is 0/1;
 * *fail_index is the 1-based first failing pivot (0 when PD); *min_pivot is
 * the smallest pivot seen. */
fc_status fc_cholesky_pd(const fc_matrix* m, double tol, int* pd, int* fail_index,
                         double* min_pivot);
/* Schur split of a bordered matrix: *d_out = corner, *D_out = A - e e^T/d. */
fc_status fc_schur_split(const fc_matrix* b, double* d_out, fc_matrix** D_out);

fc_status fc_verify_psi_monotone(int n_max, double alpha, int* holds);
fc_status fc_verify_phi_product(int n_max, double alpha, int* holds);
fc_status fc_verify_border_inequality(int n, double alpha, int* holds);

/* Exact-arithmetic positive definiteness of A_k (bordered: B_k) for all
 * k <= n at rational alpha = num/den in (0,1). Certifies the sign pattern
 * that double-precision Cholesky loses beyond n ~ 10. */
fc_status fc_psd_verify_exact(int n, long alpha_num, long alpha_den, int bordered, int* holds);
/* Nearest rational with denominator <= max_den (continued fractions). */
fc_status fc_rationalize(double x, long max_den, long* num, long* den);

/* ---- sampled functions ------------------------------------------------- */

typedef struct fc_sampled fc_sampled;

/* values has n_values = N+1 >= 3 uniform samples on [t0, t1]. */
fc_sampled* fc_sampled_create(double t0, double t1, const double* values, size_t n_values);
void fc_sampled_destroy(fc_sampled* f);
size_t fc_sampled_num_values(const fc_sampled* f);
fc_status fc_sampled_value(const fc_sampled* f, size_t k, double* out);
fc_status fc_sampled_node(const fc_sampled* f, size_t k, double* out);

fc_sampled* fc_rl_integral_num(const fc_sampled* f, double alpha);
fc_sampled* fc_caputo_deriv_num(const fc_sampled* f, double alpha);
fc_sampled* fc_rl_deriv_num(const fc_sampled* f, double alpha);

/* Worst discrete Leibniz gap over nodes k >= 1. */
fc_status fc_check_inequality_sampled(const fc_sampled* f, double alpha, fc_gap_kind kind,
                                      double* min_gap, size_t* argmin, double* t_argmin);

/* ---- sharpness counterexamples ----------------------------------------- */

typedef struct fc_counterexample_info {
  double lambda;
  double alpha;
  int kind;     /* fc_gap_kind */
  int degree;   /* degree of the witness polynomial */
  double witness_t;
  double gap_at_witness; /* lambda-gap at the witness, strictly positive */
  int has_interval;
  double interval_lo;
  double interval_hi;
} fc_counterexample_info;

/* poly_out may be NULL; otherwise receives the witness polynomial. */
fc_status fc_caputo_counterexample(double lambda, double alpha, fc_counterexample_info* out,
                                   fc_poly** poly_out);
fc_status fc_rl_counterexample(double lambda, double alpha, int k_cap,
                               fc_counterexample_info* out, fc_poly** poly_out);

/* ---- spectral Galerkin solver ------------------------------------------ */

typedef struct fc_problem fc_problem;
typedef struct fc_trajectory fc_trajectory;

typedef double (*fc_scalar_field)(double x, void* ctx);
typedef void (*fc_vector_field)(double x, double y, double out[2], void* ctx);

/* Direct modal data; lambdas positive and nondecreasing. */
fc_problem* fc_problem_modal(double alpha, double rho, double T, const double* lambdas,
                             const double* f_coefs, const double* u0_coefs, size_t n);
/* Dirichlet Laplacian sine basis on (0, pi); data projected by quadrature. */
fc_problem* fc_problem_dirichlet_1d(int n_modes, double rho, double alpha, double T,
                                    fc_scalar_field forcing, void* forcing_ctx,
                                    fc_scalar_field initial, void* initial_ctx);
/* Divergence-free Fourier modes on the periodic box (0,2pi)^2. */
fc_problem* fc_problem_stokes_2d(int n_modes, double rho, double alpha, double T,
                                 fc_vector_field forcing, void* forcing_ctx,
                                 fc_vector_field initial, void* initial_ctx);
void fc_problem_destroy(fc_problem* p);
size_t fc_problem_num_modes(const fc_problem* p);
fc_status fc_problem_mode(const fc_problem* p, size_t i, double* lambda, double* f_coef,
                          double* u0_coef);
/* Wavevector and direction of a stokes_fourier_2d mode. */
fc_status fc_problem_mode_wave(const fc_problem* p, size_t i, int* k1, int* k2, double* d1,
                               double* d2);

/* g(t) solving cD^alpha g + mu g = c, g(0) = g0, in closed form. */
fc_status fc_solve_mode_closed(double mu, double g0, double c, double alpha, double t,
                               double* out);
/* Implicit L1 stepping of the same equation; out has n_steps+1 nodes. */
fc_status fc_solve_mode_l1(double mu, double g0, double c, double alpha, double T,
                           size_t n_steps, double* out);

fc_trajectory* fc_solve_galerkin(const fc_problem* p, size_t n_steps);
void fc_trajectory_destroy(fc_trajectory* t);
size_t fc_trajectory_steps(const fc_trajectory* t);
fc_status fc_trajectory_node(const fc_trajectory* t, size_t k, double* out);
fc_status fc_trajectory_coeff(const fc_trajectory* t, size_t mode, size_t k, double* out);
fc_status fc_trajectory_h_norm2(const fc_trajectory* t, size_t k, double* out);
fc_status fc_trajectory_v_norm2(const fc_trajectory* t, const fc_problem* p, size_t k,
                                double* out);

/* Discrete energy inequalities over nodes k >= 1 (see README): slack minima
 * of the tested-pairing and Young-bound forms, plus the max discrete Caputo
 * derivative of ||u||_H^2 (for the f = 0 decay check). */
fc_status fc_check_energy(const fc_problem* p, size_t n_steps, double* min_energy_slack,
                          size_t* argmin_energy, double* min_young_slack, size_t* argmin_young,
                          double* max_h_derivative);
/* Discrete L^2(0,T;V) tails ||u_{n_j} - u_{n_last}|| for increasing
 * truncations; out_tails has num_truncations entries. */
fc_status fc_check_convergence(const fc_problem* p, const size_t* truncations,
                               size_t num_truncations, size_t n_steps, double* out_tails);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* FRACCALC_H */
