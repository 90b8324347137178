#ifndef DEFEXP_DEFEXP_H_
#define DEFEXP_DEFEXP_H_

/* C API of libdefexp: two one-parameter deformed exponential functions of
 * two variables, the generalized integer powers and h-difference operators
 * they pair with, the deformed group arithmetic, series expansions, deformed
 * derivatives, and an identity-verification harness.
 *
 * Every fallible call returns a defexp_status; on failure a thread-local
 * message is available from defexp_last_error() until the next call on the
 * same thread.  Out-parameters are written only on DEFEXP_OK. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* ------------------------------------------------------------------ */
/* Status codes and diagnostics                                       */
/* ------------------------------------------------------------------ */

typedef enum defexp_status {
  DEFEXP_OK = 0,
  DEFEXP_ERR_DOMAIN = 1,           /* input outside a mathematical domain */
  DEFEXP_ERR_INVALID_ARGUMENT = 2, /* structurally invalid parameter */
  DEFEXP_ERR_NO_CONVERGENCE = 3,   /* series hit its term budget */
  DEFEXP_ERR_UNKNOWN_IDENTITY = 4, /* id or pattern matches nothing */
  DEFEXP_ERR_EMPTY_GRID = 5,       /* no admissible verification sample */
  DEFEXP_ERR_NONFINITE = 6,        /* a computed value came out non-finite */
  DEFEXP_ERR_INTERNAL = 7
} defexp_status;

extern const char* defexp_version(void);
extern const char* defexp_status_name(defexp_status status);

/* Message for the most recent failing call on this thread ("" if none). */
extern const char* defexp_last_error(void);

/* ------------------------------------------------------------------ */
/* Enumerations                                                        */
/* ------------------------------------------------------------------ */

typedef enum defexp_power_kind {
  DEFEXP_POWER_BACKWARD = 0, /* z(z-h)...(z-(n-1)h) */
  DEFEXP_POWER_FORWARD = 1,  /* z(z+h)...(z+(n-1)h) */
  DEFEXP_POWER_CENTRAL = 2   /* symmetric product pairing z -+ kh */
} defexp_power_kind;

typedef enum defexp_family {
  DEFEXP_FAMILY_SUB = 0, /* {x}_h = ln(1+hx)/h world, e_sub */
  DEFEXP_FAMILY_SUP = 1  /* {x}^h = arcsinh(hx)/h world, e_sup */
} defexp_family;

typedef enum defexp_deriv_kind {
  DEFEXP_DERIV_SUB = 0, /* (1+hz) d/dz */
  DEFEXP_DERIV_SUP = 1  /* sqrt(1+h^2 z^2) d/dz */
} defexp_deriv_kind;

typedef enum defexp_lowering {
  DEFEXP_LOWERING_FORWARD = 0, /* coefficients y^(n,h) */
  DEFEXP_LOWERING_CENTRAL = 1  /* coefficients y^<n,h> */
} defexp_lowering;

typedef enum defexp_expansion {
  DEFEXP_EXPANSION_SUB = 0,     /* sum x^n y^(n,h) / n!  -> e_sub(x,y,h)  */
  DEFEXP_EXPANSION_SUB_NEG = 1, /* sum x^n y^[n,h] / n!  -> e_sub(x,y,-h) */
  DEFEXP_EXPANSION_SUP = 2      /* sum x^n y^<n,h> / n!  -> e_sup(x,y,h)  */
} defexp_expansion;

/* ------------------------------------------------------------------ */
/* Generalized integer powers                                          */
/* ------------------------------------------------------------------ */

extern defexp_status defexp_gen_pow(double z, int n, double h,
                                    defexp_power_kind kind, double* out);

/* Generalized binomial coefficient C(z/h, n) = z^(n,h) / (h^n n!). */
extern defexp_status defexp_binom_via_gen_pow(double z, int n, double h,
                                              double* out);

/* ------------------------------------------------------------------ */
/* h-difference operators over a caller-supplied function              */
/* ------------------------------------------------------------------ */

typedef double (*defexp_real_fn)(double z, void* user);

extern defexp_status defexp_forward_diff(defexp_real_fn f, void* user,
                                         double z, double h, double* out);
extern defexp_status defexp_backward_diff(defexp_real_fn f, void* user,
                                          double z, double h, double* out);
extern defexp_status defexp_central_diff(defexp_real_fn f, void* user,
                                         double z, double h, double* out);

/* ------------------------------------------------------------------ */
/* Deformation maps and group arithmetic                               */
/* ------------------------------------------------------------------ */

extern defexp_status defexp_brace_sub(double x, double h, double* out);
extern defexp_status defexp_brace_sup(double x, double h, double* out);

extern defexp_status defexp_oplus_sub(double x1, double x2, double h,
                                      double* out);
extern defexp_status defexp_ominus_sub(double x1, double x2, double h,
                                       double* out);
extern defexp_status defexp_neg_sub(double x, double h, double* out);
extern defexp_status defexp_oplus_sup(double x1, double x2, double h,
                                      double* out);
extern defexp_status defexp_ominus_sup(double x1, double x2, double h,
                                       double* out);

/* Open validity interval of the requested group; writes -+HUGE_VAL for
 * unbounded ends. */
extern defexp_status defexp_group_domain(double h, defexp_family family,
                                         double* lower, double* upper);

/* ------------------------------------------------------------------ */
/* Deformed exponentials                                               */
/* ------------------------------------------------------------------ */

extern defexp_status defexp_e_sub(double x, double y, double h, double* out);
extern defexp_status defexp_e_sup(double x, double y, double h, double* out);
extern defexp_status defexp_tsallis_q_exp(double x, double q, double* out);
extern defexp_status defexp_kaniadakis_exp(double x, double kappa,
                                           double* out);
extern defexp_status defexp_quantum_group_exp(double y, double p, double* out);
extern defexp_status defexp_sub_to_sup_shift(double x, double h, double* out);

/* ------------------------------------------------------------------ */
/* Series expansions                                                   */
/* ------------------------------------------------------------------ */

typedef struct defexp_series_result {
  double value;
  int terms_used;          /* nonzero terms accumulated, >= 1 */
  int terminated_exactly;  /* 1 when the remaining terms are all zero */
  double tail_estimate;    /* magnitude of the first omitted term */
} defexp_series_result;

/* max_terms <= 0 and tol <= 0 select the built-in defaults (500, 1e-13). */
extern defexp_status defexp_expand(defexp_expansion which, double x, double y,
                                   double h, int max_terms, double tol,
                                   defexp_series_result* out);

/* Writes n_max+1 coefficients into coeffs. */
extern defexp_status defexp_recurrence_coefficients(double y, double h,
                                                    int n_max,
                                                    defexp_lowering op,
                                                    double* coeffs);

/* ------------------------------------------------------------------ */
/* Deformed calculus                                                   */
/* ------------------------------------------------------------------ */

extern double defexp_default_fd_step(double z);

extern defexp_status defexp_deformed_derivative(defexp_real_fn f, void* user,
                                                double z, double h,
                                                defexp_deriv_kind kind,
                                                double fd_step, double* out);

extern defexp_status defexp_deformed_derivative_analytic(
    defexp_deriv_kind kind, defexp_family which_exp, double x, double y,
    double h, double* out);

extern defexp_status defexp_partial_y_factor(double x, double h,
                                             defexp_family which_exp,
                                             double* out);

/* ------------------------------------------------------------------ */
/* Identity verification                                               */
/* ------------------------------------------------------------------ */

typedef struct defexp_verifier_t defexp_verifier_t;
typedef struct defexp_reports_t defexp_reports_t;

typedef enum defexp_sampling {
  DEFEXP_SAMPLING_RANDOM = 0, /* seeded pseudo-random draws */
  DEFEXP_SAMPLING_UNIFORM = 1 /* deterministic equidistributed sequence */
} defexp_sampling;

/* Registry introspection (independent of any verifier instance).  The
 * description pointer stays valid until the next call on the same thread. */
extern int defexp_identity_count(void);
extern const char* defexp_identity_id(int index); /* NULL if out of range */
extern defexp_status defexp_identity_description(const char* id,
                                                 const char** out);

/* A verifier holds a sampling plan: ranges, per-h sample count and seed.
 * Defaults: x,y in [-2,2], h in {-1,-0.5,-0.1,0.1,0.5,1}, 50 samples, seed
 * 42. */
extern defexp_verifier_t* defexp_verifier_create(void);
extern void defexp_verifier_destroy(defexp_verifier_t* v);

extern defexp_status defexp_verifier_set_seed(defexp_verifier_t* v,
                                              uint64_t seed);
extern defexp_status defexp_verifier_set_samples(defexp_verifier_t* v,
                                                 int samples_per_h);
/* axis is 'x' or 'y'. */
extern defexp_status defexp_verifier_set_range(defexp_verifier_t* v, char axis,
                                               double lo, double hi);
extern defexp_status defexp_verifier_set_sampling(defexp_verifier_t* v,
                                                  defexp_sampling mode);

/* Run every identity matching the glob pattern ('*' and '?'; NULL or ""
 * runs the whole registry) in deterministic registry order. */
extern defexp_status defexp_verifier_run(defexp_verifier_t* v,
                                         const char* pattern,
                                         defexp_reports_t** out);

/* Run a single identity; tolerance <= 0 selects the registry default. */
extern defexp_status defexp_verifier_run_one(defexp_verifier_t* v,
                                             const char* id, double tolerance,
                                             defexp_reports_t** out);

extern void defexp_reports_destroy(defexp_reports_t* r);
extern int defexp_reports_count(const defexp_reports_t* r);
extern int defexp_reports_all_passed(const defexp_reports_t* r);

/* Per-report getters; string pointers stay valid until the report set is
 * destroyed.  Out-of-range indices return NULL / 0 / NaN. */
extern const char* defexp_reports_id(const defexp_reports_t* r, int i);
extern const char* defexp_reports_grid(const defexp_reports_t* r, int i);
extern const char* defexp_reports_worst_point(const defexp_reports_t* r,
                                              int i);
extern long long defexp_reports_samples(const defexp_reports_t* r, int i);
extern long long defexp_reports_skipped(const defexp_reports_t* r, int i);
extern double defexp_reports_max_abs_err(const defexp_reports_t* r, int i);
extern double defexp_reports_max_rel_err(const defexp_reports_t* r, int i);
extern double defexp_reports_max_scaled_err(const defexp_reports_t* r, int i);
extern double defexp_reports_tolerance(const defexp_reports_t* r, int i);
extern int defexp_reports_passed(const defexp_reports_t* r, int i);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* DEFEXP_DEFEXP_H_ */
