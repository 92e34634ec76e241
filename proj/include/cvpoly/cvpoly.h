#ifndef CVPOLY_CVPOLY_H
#define CVPOLY_CVPOLY_H

#include <stddef.h>

#if defined(CVPOLY_BUILDING_LIBRARY)
#define CVP_API __attribute__((visibility("default")))
#else
#define CVP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Non-zero values mirror cvpoly::ErrorCode. */
typedef enum cvp_status {
    CVP_OK = 0,
    CVP_INVALID_ARGUMENT = 1,
    CVP_GRID_TOO_NARROW = 2,
    CVP_ASYMMETRIC_GRID = 3,
    CVP_GRID_MISMATCH = 4,
    CVP_ILL_CONDITIONED = 5,
    CVP_SINGULAR_ANCILLA = 6,
    CVP_ZERO_NORM = 7,
    CVP_ZERO_ANCILLA = 8,
    CVP_UNSUPPORTED_INPUT = 9,
    CVP_EMPTY_SCAN_RANGE = 10,
    CVP_EMPTY_ENSEMBLE = 11,
    CVP_INTERNAL = 99
} cvp_status;

typedef enum cvp_family { CVP_FAMILY_FOCK = 0, CVP_FAMILY_COHERENT = 1 } cvp_family;

/* Which quadrature a dB figure refers to: anti-squeezed q gives k > sqrt 2. */
typedef enum cvp_axis { CVP_ANTI_SQUEEZED_Q = 0, CVP_SQUEEZED_Q = 1 } cvp_axis;

typedef struct cvp_grid {
    double q_min;
    double q_max;
    size_t n_points;
} cvp_grid;

/* Displaced squeezed ancilla in quadrature form. */
typedef struct cvp_ancilla {
    double q0;
    double p0;
    double k;
} cvp_ancilla;

typedef struct cvp_sweep_point {
    double x;
    double fidelity;
    double success_prob; /* NaN when the sweep has no probability */
} cvp_sweep_point;

typedef struct cvp_state cvp_state;
typedef struct cvp_plan cvp_plan;

CVP_API const char *cvp_version(void);
/* Message of the last failure on the calling thread ("" if none). */
CVP_API const char *cvp_last_error(void);
CVP_API const char *cvp_status_name(cvp_status status);
/* 1 for the numerical failures (zero norm, singular ancilla, ...). */
CVP_API int cvp_status_is_numerical(cvp_status status);

CVP_API cvp_grid cvp_default_grid(void);
CVP_API cvp_grid cvp_oracle_grid(void);
CVP_API cvp_status cvp_db_to_k(double db, cvp_axis axis, double *k);

/* States. Every constructor returns a fresh handle owned by the caller. */
CVP_API cvp_status cvp_state_fock(unsigned n, const cvp_grid *grid, cvp_state **out);
CVP_API cvp_status cvp_state_coherent(double alpha_re, double alpha_im, const cvp_grid *grid, cvp_state **out);
CVP_API cvp_status cvp_state_squeezed(const cvp_ancilla *params, const cvp_grid *grid, cvp_state **out);
/* Fock |x> or coherent |sqrt x>. */
CVP_API cvp_status cvp_state_family(cvp_family family, double x, const cvp_grid *grid, cvp_state **out);
/* Vacuum squeezed in p by db. */
CVP_API cvp_status cvp_state_momentum_squeezed(double db, const cvp_grid *grid, cvp_state **out);
/* re_im holds 2 * n_points interleaved doubles. */
CVP_API cvp_status cvp_state_from_amplitudes(const cvp_grid *grid, const double *re_im, size_t n_points,
                                             cvp_state **out);
CVP_API void cvp_state_free(cvp_state *state);
CVP_API size_t cvp_state_size(const cvp_state *state);
CVP_API cvp_status cvp_state_grid(const cvp_state *state, cvp_grid *grid);
CVP_API cvp_status cvp_state_amplitudes(const cvp_state *state, double *re_im, size_t n_points);
CVP_API cvp_status cvp_state_norm2(const cvp_state *state, double *norm2);

CVP_API cvp_status cvp_fidelity(const cvp_state *a, const cvp_state *b, double *fidelity);
/* Normalized exp(i nu q^3) psi. */
CVP_API cvp_status cvp_apply_cubic(const cvp_state *psi, double nu, cvp_state **out);

/* Plans: roots of the order-n Taylor polynomial of exp(i nu q^3). */
CVP_API cvp_status cvp_plan_cubic(double nu, int order, cvp_plan **out);
CVP_API void cvp_plan_free(cvp_plan *plan);
CVP_API size_t cvp_plan_degree(const cvp_plan *plan);
CVP_API cvp_status cvp_plan_root(const cvp_plan *plan, size_t i, double *re, double *im);
CVP_API cvp_status cvp_plan_residual(const cvp_plan *plan, double *residual);
/* Normalized plan(q) psi. */
CVP_API cvp_status cvp_apply_plan(const cvp_plan *plan, const cvp_state *psi, cvp_state **out);
/* out = {Re U(q), Im U(q), Re plan(q), Im plan(q)} with U = exp(i nu q^3). */
CVP_API cvp_status cvp_gate_profile(const cvp_plan *plan, double nu, double q, double out[4]);
CVP_API cvp_status cvp_bare_fidelity(double nu, const cvp_state *psi, double *fidelity);

/* Photon-subtraction protocol. `outcomes` may be NULL (all zero), else it
 * holds one nominal outcome per root. */
CVP_API cvp_status cvp_method1_exact(const cvp_plan *plan, const cvp_state *psi, double db, const double *outcomes,
                                     cvp_state **out);
/* Post-selection over the box of half-width delta around the outcomes. */
CVP_API cvp_status cvp_method1_postselect(const cvp_plan *plan, const cvp_state *psi, double db, double delta,
                                          int nodes, const double *outcomes, const cvp_state *target,
                                          double *fidelity, double *region_prob);
/* Writes one optimized nominal outcome per root into outcomes_out. */
CVP_API cvp_status cvp_method1_optimize(const cvp_plan *plan, const cvp_state *psi, double db, double delta,
                                        int nodes, double q0_lo, double q0_hi, size_t q0_count,
                                        double *outcomes_out, size_t n_outcomes);
CVP_API cvp_status cvp_ancilla_method1(double lambda_re, double lambda_im, double k, double m, cvp_ancilla *out);
CVP_API cvp_status cvp_homodyne_pdf(const cvp_state *psi, const cvp_ancilla *ancilla, double m, double *density);
/* Closed-form density for a Fock (x = n) or coherent (alpha = x + i y) input. */
CVP_API cvp_status cvp_gaussian_moment_pdf(cvp_family family, double x, double y, const cvp_ancilla *ancilla,
                                           double m, double *density);

/* Photon-counter protocol. step_probs may be NULL; else it holds n_steps
 * slots for the per-step one-photon probabilities. */
CVP_API cvp_status cvp_method2_chain(const cvp_plan *plan, const cvp_state *psi, double db, cvp_axis axis,
                                     cvp_state **out, double *success_prob, double *step_probs, size_t n_steps);
CVP_API cvp_status cvp_ancilla_method2(double lambda_re, double lambda_im, double k, cvp_ancilla *out);
CVP_API cvp_status cvp_spc_probability(const cvp_state *psi, const cvp_ancilla *ancilla, unsigned n,
                                       double *prob);

/* Wigner function on q_count x p_count points (row-major in q). q values
 * snap to grid nodes or midpoints; the snapped axis goes to q_axis (may be
 * NULL). */
typedef struct cvp_wigner_summary {
    double min_value;
    double max_value;
    double integral;
    int negative_regions;
} cvp_wigner_summary;

CVP_API cvp_status cvp_wigner(const cvp_state *psi, double q_lo, double q_hi, size_t q_count, double p_lo,
                              double p_hi, size_t p_count, double *values, double *q_axis,
                              cvp_wigner_summary *summary);

/* Sweeps over x values; out holds n points. jobs <= 1 runs serially. */
CVP_API cvp_status cvp_sweep_bare(cvp_family family, const double *xs, size_t n, double nu, const cvp_grid *grid,
                                  unsigned jobs, cvp_sweep_point *out);
CVP_API cvp_status cvp_sweep_method1_exact(cvp_family family, const double *xs, size_t n, double nu, double db,
                                           const cvp_grid *grid, unsigned jobs, cvp_sweep_point *out);
CVP_API cvp_status cvp_sweep_method1_postselect(cvp_family family, const double *xs, size_t n, double nu,
                                                double db, double delta, int nodes, const cvp_grid *grid,
                                                unsigned jobs, cvp_sweep_point *out);
CVP_API cvp_status cvp_sweep_method2(cvp_family family, const double *xs, size_t n, double nu, double db,
                                     cvp_axis axis, const cvp_grid *grid, unsigned jobs, cvp_sweep_point *out);

/* Two-mode checks of one protocol step. The input must live on the oracle
 * grid (both modes share it). deficit = 1 - |<oracle|closed form>|. */
typedef struct cvp_oracle_check {
    double deficit;
    double weight_oracle;  /* outcome density or click probability */
    double weight_closed;
} cvp_oracle_check;

CVP_API cvp_status cvp_oracle_method1(const cvp_state *psi, const cvp_ancilla *ancilla, double m,
                                      const cvp_grid *oracle_grid, cvp_oracle_check *out);
CVP_API cvp_status cvp_oracle_method2(const cvp_state *psi, const cvp_ancilla *ancilla,
                                      const cvp_grid *oracle_grid, cvp_oracle_check *out);
/* Oracle p(n) from projecting the ancilla on |n>. */
CVP_API cvp_status cvp_oracle_spc_probability(const cvp_state *psi, const cvp_ancilla *ancilla, unsigned n,
                                              const cvp_grid *oracle_grid, double *prob);

#ifdef __cplusplus
}
#endif

#endif
