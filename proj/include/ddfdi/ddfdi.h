/*
 * ddfdi -- data-driven design of dead-beat unknown-input residual generators
 * for fault detection and identification on LTI discrete-time plants.
 *
 * C API over the core library. All matrices are passed as dense row-major
 * double arrays with explicit dimensions. Functions return DDFDI_OK on
 * success; on failure they return a status code and leave a human-readable
 * message in ddfdi_last_error() (thread-local). Handles are opaque and must
 * be released with their _destroy function.
 */

#ifndef DDFDI_H
#define DDFDI_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define DDFDI_API __declspec(dllexport)
#else
#define DDFDI_API __attribute__((visibility("default")))
#endif

typedef enum ddfdi_status {
  DDFDI_OK = 0,
  DDFDI_ERR_INVALID_ARGUMENT = 1,
  DDFDI_ERR_DIMENSION = 2,
  DDFDI_ERR_RANK_DEFICIENT_CE = 3,
  DDFDI_ERR_NOT_RECONSTRUCTABLE = 4,
  DDFDI_ERR_SOLVABILITY = 5,
  DDFDI_ERR_GUARANTEE = 6,
  DDFDI_ERR_HORIZON = 7,
  DDFDI_ERR_FAULTY_DATA = 8,
  DDFDI_ERR_RANK_DEFICIENT_REGRESSOR = 9,
  DDFDI_ERR_RESIDUAL = 10,
  DDFDI_ERR_RANK_MISMATCH = 11,
  DDFDI_ERR_NOT_IDENTIFIABLE = 12,
  DDFDI_ERR_OUT_OF_RANGE = 13,
  DDFDI_ERR_NULL_POINTER = 14,
  DDFDI_ERR_INTERNAL = 15
} ddfdi_status;

/* Rank decisions are relative to the largest singular value; zero checks are
 * absolute. Pass NULL wherever a tolerance is accepted to use the defaults
 * (1e-9, 1e-8). */
typedef struct ddfdi_tolerance {
  double rel_rank_tol;
  double abs_zero_tol;
} ddfdi_tolerance;

typedef struct ddfdi_system ddfdi_system; /* plant (A, B, C, E) */
typedef struct ddfdi_uio ddfdi_uio;       /* residual generator matrices */
typedef struct ddfdi_data ddfdi_data;     /* historical data blocks */

DDFDI_API const char* ddfdi_version(void);
DDFDI_API const char* ddfdi_status_name(ddfdi_status status);
DDFDI_API const char* ddfdi_last_error(void);
DDFDI_API ddfdi_tolerance ddfdi_tolerance_default(void);
DDFDI_API void ddfdi_string_free(char* s);

/* ---- plant ---------------------------------------------------------- */

/* A: n*n, B: n*m, C: p*n, E: n*r (E may be NULL when r == 0). E must have
 * full column rank. */
DDFDI_API ddfdi_status ddfdi_system_create(int n, int m, int p, int r, const double* A,
                                           const double* B, const double* C, const double* E,
                                           const ddfdi_tolerance* tol, ddfdi_system** out);
DDFDI_API void ddfdi_system_destroy(ddfdi_system* sys);
DDFDI_API ddfdi_status ddfdi_system_dims(const ddfdi_system* sys, int* n, int* m, int* p, int* r);
/* block: 'A', 'B', 'C', 'E'; out must hold rows*cols doubles. */
DDFDI_API ddfdi_status ddfdi_system_get(const ddfdi_system* sys, char block, double* out);
/* Bundled benchmark plant (n=5, m=1, p=3, r=2). */
DDFDI_API ddfdi_status ddfdi_system_demo(ddfdi_system** out);

/* Simulate T steps. x0 (length n) may be NULL for zero; u is (T-1)*m
 * row-major; d ((T-1)*r) and f ((T-1)*m) may be NULL for zero. out_x (T*n)
 * and out_y (T*p) are caller-allocated; either may be NULL if not wanted. */
DDFDI_API ddfdi_status ddfdi_simulate(const ddfdi_system* sys, const double* x0, const double* u,
                                      const double* d, const double* f, int T, double* out_x,
                                      double* out_y);

/* ---- residual generator --------------------------------------------- */

DDFDI_API ddfdi_status ddfdi_uio_create(int n, int m, int p, const double* A_uio,
                                        const double* B_u, const double* B_y,
                                        const double* D_uio, const double* C, ddfdi_uio** out);
DDFDI_API void ddfdi_uio_destroy(ddfdi_uio* uio);
DDFDI_API ddfdi_status ddfdi_uio_dims(const ddfdi_uio* uio, int* n, int* m, int* p);
/* block: 'A' (A_uio), 'u' (B_u), 'y' (B_y), 'D' (D_uio), 'C'. */
DDFDI_API ddfdi_status ddfdi_uio_get(const ddfdi_uio* uio, char block, double* out);
/* Reference residual generator for the bundled benchmark plant. */
DDFDI_API ddfdi_status ddfdi_uio_demo_reference(ddfdi_uio** out);

/* Run over recorded u ((T-1)*m) and y (T*p); z0 (length n) may be NULL for
 * zero. out_xhat (T*n) may be NULL; out_res (T*p) receives the residuals. */
DDFDI_API ddfdi_status ddfdi_uio_run(const ddfdi_uio* uio, const double* z0, const double* u,
                                     const double* y, int T, double* out_xhat, double* out_res);

/* Structural-constraint residuals of a candidate generator against a
 * reference plant, plus the nilpotency and identifiability verdicts. */
typedef struct ddfdi_constraint_report {
  double res_commutation; /* (I-DC)A - A_uio(I-DC) - B_y C */
  double res_input;       /* B_u - (I-DC)B                 */
  double res_decoupling;  /* (I-DC)E                       */
  double scale;           /* normalization max(1, |A|_max) */
  int nilpotent;
  int nilpotency_index;   /* valid when nilpotent != 0 */
  int cbu_full_column_rank;
} ddfdi_constraint_report;

DDFDI_API ddfdi_status ddfdi_uio_verify(const ddfdi_uio* uio, const ddfdi_system* sys,
                                        const ddfdi_tolerance* tol,
                                        ddfdi_constraint_report* out);

/* ---- model-based design --------------------------------------------- */

/* overall: 1 iff an identifying dead-beat residual generator exists. The
 * optional JSON evidence lists every tested rank condition. */
DDFDI_API ddfdi_status ddfdi_mb_check(const ddfdi_system* sys, const ddfdi_tolerance* tol,
                                      int* overall, char** json_evidence);
DDFDI_API ddfdi_status ddfdi_mb_synthesize(const ddfdi_system* sys, const ddfdi_tolerance* tol,
                                           ddfdi_uio** out);

/* ---- data-driven design --------------------------------------------- */

/* Build the data blocks from a recorded fault-free trajectory: x T*n,
 * y T*p, u (T-1)*m row-major; f may be NULL (unknown / zero). */
DDFDI_API ddfdi_status ddfdi_data_build(int n, int m, int p, int T, int r_claimed,
                                        const double* x, const double* y, const double* u,
                                        const double* f, const ddfdi_tolerance* tol,
                                        ddfdi_data** out);
DDFDI_API void ddfdi_data_destroy(ddfdi_data* data);

DDFDI_API ddfdi_status ddfdi_estimate_disturbance_dim(const ddfdi_data* const* datasets,
                                                      int count, const ddfdi_tolerance* tol,
                                                      int* out_r);

typedef struct ddfdi_dd_report {
  int cond_iia;
  int cond_iib;
  int richness_ok;
  int overall;
  int rank_xp_yf;
  int rank_up_xp;
  int rank_up_xp_xf;
} ddfdi_dd_report;

DDFDI_API ddfdi_status ddfdi_dd_check(const ddfdi_data* data, const ddfdi_tolerance* tol,
                                      ddfdi_dd_report* out, char** json_evidence);

/* Run the design procedure. On success returns the residual generator and,
 * optionally, a JSON diagnostic record of the intermediate solution. */
DDFDI_API ddfdi_status ddfdi_dd_design(const ddfdi_data* data, const ddfdi_tolerance* tol,
                                       ddfdi_uio** out, char** json_diagnostics);

/* ---- online fault detection and identification ----------------------- */

/* residuals: T*p row-major. out_k receives the first index whose residual
 * 2-norm exceeds the threshold, or -1 if none does. */
DDFDI_API ddfdi_status ddfdi_detect(const double* residuals, int T, int p, double threshold,
                                    int* out_k);

/* Recursive one-step estimator over a residual stream. out_fhat is
 * (T-1)*m row-major; rows before k_start are zero. */
DDFDI_API ddfdi_status ddfdi_identify_recursive(const ddfdi_uio* uio, const double* residuals,
                                                int T, int k_start, const ddfdi_tolerance* tol,
                                                double* out_fhat);

/* Markov-parameter stack of depth N: out is (N*p)*(N*m) row-major. */
DDFDI_API ddfdi_status ddfdi_markov_stack(const ddfdi_uio* uio, int N, double* out);

/* Windowed least-squares estimate: r_window is the stacked residual window
 * (N*p doubles, time-ascending), out_f receives N*m stacked estimates. */
DDFDI_API ddfdi_status ddfdi_identify_window(const ddfdi_uio* uio, int N,
                                             const double* r_window,
                                             const ddfdi_tolerance* tol, double* out_f);

/* ---- numerics --------------------------------------------------------- */

DDFDI_API ddfdi_status ddfdi_numerical_rank(const double* M, int rows, int cols,
                                            const ddfdi_tolerance* tol, int* out_rank);
/* out: cols*rows row-major. */
DDFDI_API ddfdi_status ddfdi_pseudo_inverse(const double* M, int rows, int cols,
                                            const ddfdi_tolerance* tol, double* out);
/* out_index receives the nilpotency index when nilpotent, else -1. */
DDFDI_API ddfdi_status ddfdi_is_nilpotent(const double* M, int n, const ddfdi_tolerance* tol,
                                          int* out_flag, int* out_index);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* DDFDI_H */
