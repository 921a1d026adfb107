/* bisoliton: Born-Infeld soliton surfaces and timelike minimal surfaces.
 *
 * C interface to the core library.  All objects are opaque handles created
 * and destroyed here; functions return BIS_OK or an error code, and
 * bis_last_error() describes the most recent failure on the calling thread.
 */
#ifndef BISOLITON_H
#define BISOLITON_H

#include <stddef.h>

#if defined(_WIN32)
#define BIS_API __declspec(dllexport)
#else
#define BIS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bis_status {
  BIS_OK = 0,
  BIS_ERR_SYNTAX = 1,
  BIS_ERR_UNKNOWN_IDENTIFIER = 2,
  BIS_ERR_DOMAIN = 3,
  BIS_ERR_QUADRATURE_NON_CONVERGENCE = 4,
  BIS_ERR_NON_REGULAR_POINT = 5,
  BIS_ERR_DEGENERATE_FIRST_FORM = 6,
  BIS_ERR_NORMAL_THIRD_COMPONENT_ZERO = 7,
  BIS_ERR_NOT_UNIT_NORMAL = 8,
  BIS_ERR_PROJECTION_SINGULAR = 9,
  BIS_ERR_GRAPH_INVERSION_FAILURE = 10,
  BIS_ERR_NON_MONOTONE_PARAM_CURVE = 11,
  BIS_ERR_DOMAIN_VIOLATION = 12,
  BIS_ERR_CONSISTENCY_FAILURE = 13,
  BIS_ERR_INTERVAL_OVERLAPS_DATA = 14,
  BIS_ERR_AMPLITUDE_UNACHIEVABLE = 15,
  BIS_ERR_MIXED_CAUSAL_CHARACTER = 16,
  BIS_ERR_NOT_ORTHOGONAL = 17,
  BIS_ERR_INVALID_ARGUMENT = 18,
  BIS_ERR_IO = 19,
  BIS_ERR_INTERNAL = 20,
} bis_status;

typedef enum bis_signature { BIS_SIG_B3 = 0, BIS_SIG_L3 = 1 } bis_signature;

typedef enum bis_causal {
  BIS_CAUSAL_SPACELIKE = 0,
  BIS_CAUSAL_TIMELIKE = 1,
  BIS_CAUSAL_LIGHTLIKE = 2,
} bis_causal;

typedef struct bis_expr bis_expr;
typedef struct bis_surface bis_surface;
typedef struct bis_strip bis_strip;
typedef struct bis_fg bis_fg;
typedef struct bis_tms bis_tms;

BIS_API const char* bis_version(void);
BIS_API const char* bis_status_name(bis_status st);
/* Message for the last failing call on this thread; empty string if none. */
BIS_API const char* bis_last_error(void);

/* ------------------------------------------------------------------ */
/* Geometry: B3 = diag(+1,-1,+1), L3 = diag(+1,+1,-1).                  */

BIS_API double bis_inner(const double u[3], const double v[3], bis_signature sig);
/* Cross product defined by <cross(u,v), w> = det(u, v, w). */
BIS_API void bis_cross(const double u[3], const double v[3], bis_signature sig, double out[3]);
BIS_API bis_causal bis_causal_type(const double v[3], bis_signature sig, double tol);
/* (x, y, z) -> (z, x, y), carrying the B3 form onto the L3 form. */
BIS_API void bis_b3_to_l3(const double p[3], double out[3]);
BIS_API void bis_l3_to_b3(const double p[3], double out[3]);

/* ------------------------------------------------------------------ */
/* Expressions in one real variable.                                   */

BIS_API bis_status bis_expr_parse(const char* src, const char* variable, bis_expr** out);
BIS_API bis_status bis_expr_eval(const bis_expr* e, double x, double* out);
BIS_API bis_status bis_expr_derivative(const bis_expr* e, bis_expr** out);
/* Caller frees with bis_string_free. */
BIS_API bis_status bis_expr_str(const bis_expr* e, char** out);
/* Byte offset of the last parse error on this thread ((size_t)-1 if none). */
BIS_API size_t bis_last_error_offset(void);
BIS_API void bis_string_free(char* s);
BIS_API void bis_expr_free(bis_expr* e);

/* ------------------------------------------------------------------ */
/* Quadrature.                                                         */

typedef struct bis_quad_opts {
  double abs_tol;
  double rel_tol;
  int max_subdivisions;
} bis_quad_opts;

BIS_API void bis_quad_opts_default(bis_quad_opts* opts);
/* Antiderivative int_a^x of f. */
BIS_API bis_status bis_antiderivative(const bis_expr* f, double a, double x,
                                      const bis_quad_opts* opts, double* out);

/* ------------------------------------------------------------------ */
/* Barbashov-Chernikov surfaces.                                       */

BIS_API bis_status bis_surface_create(const bis_expr* F, const bis_expr* G, double r0,
                                      double s0, const double base_value[3],
                                      const bis_quad_opts* opts, bis_surface** out);
BIS_API void bis_surface_free(bis_surface* s);
BIS_API bis_status bis_surface_eval(const bis_surface* s, double r, double sv, double out[3]);
/* Row-major nr x ns x 3 output; coordinate arrays must be sorted ascending. */
BIS_API bis_status bis_surface_eval_grid(const bis_surface* s, const double* rs, int nr,
                                         const double* ss, int ns, double* out_xyz);

typedef struct bis_frame {
  double Xr[3], Xs[3], Xalpha[3], Xbeta[3];
  double Eaa, Ebb, Eab;
  int regular;
} bis_frame;

BIS_API bis_status bis_surface_frame(const bis_surface* s, double r, double sv, bis_frame* out);
BIS_API int bis_surface_is_regular(const bis_surface* s, double r, double sv, double tol);
BIS_API bis_status bis_surface_normal(const bis_surface* s, double r, double sv, double out[3]);
BIS_API bis_status bis_surface_mean_curvature(const bis_surface* s, double r, double sv,
                                              double h, double* out);
BIS_API bis_status bis_surface_wave_residual(const bis_surface* s, double r, double sv,
                                             double h, double out[3]);

/* Normal direction from (r,s) alone. */
BIS_API void bis_nhat(double r, double s, double out[3]);
BIS_API bis_status bis_normal_to_param(const double n[3], double tol, double* r, double* s);
BIS_API bis_status bis_stereographic(double alpha, double beta, double out[3]);

typedef struct bis_pde_sample {
  int in_domain;         /* |rs| < 1 */
  double residual;       /* Born-Infeld equation residual of the graph */
  double hyperbolicity;  /* phi_x^2 - phi_y^2 + 1 */
  double u, v;
  double r_rec, s_rec;
} bis_pde_sample;

BIS_API bis_status bis_surface_pde_sample(const bis_surface* s, double r, double sv,
                                          double h, bis_pde_sample* out);

/* ------------------------------------------------------------------ */
/* Bjorling strips and reconstruction.                                 */

BIS_API bis_status bis_strip_load_csv(const char* path, bis_strip** out);
BIS_API bis_status bis_strip_from_exprs(const char* c1, const char* c2, const char* c3,
                                        const char* n1, const char* n2, const char* n3,
                                        const char* variable, double t_min, double t_max,
                                        int samples, bis_strip** out);
BIS_API void bis_strip_free(bis_strip* s);
BIS_API int bis_strip_size(const bis_strip* s);
/* Arrays of length size (t) and 3*size (others); any pointer may be NULL. */
BIS_API bis_status bis_strip_data(const bis_strip* s, double* t, double* c, double* cdot,
                                  double* n);

typedef struct bis_strip_report {
  int unit_ok, orthogonal_ok, n3_ok, t_increasing, flipped;
  double worst_unit, worst_orth, min_abs_n3;
  int worst_unit_index, worst_orth_index;
  int passed;
} bis_strip_report;

/* Validates and normalizes orientation in place. */
BIS_API bis_status bis_strip_validate(bis_strip* s, double tol, bis_strip_report* out);
/* Arrays of length size; any pointer may be NULL. */
BIS_API bis_status bis_strip_param_curve(const bis_strip* s, double tol, double* r,
                                         double* sv, double* rdot, double* sdot,
                                         int* degenerate);

BIS_API bis_status bis_bjorling_reconstruct(const bis_strip* s, double consistency_tol,
                                            double tol, bis_fg** out);
BIS_API void bis_fg_free(bis_fg* fg);
BIS_API int bis_fg_size(const bis_fg* fg);
/* Knot tables: r, F'(r), F(r)-F(anchor); s, G'(s), G(s)-G(anchor).  Arrays of
 * length size; any pointer may be NULL. */
BIS_API bis_status bis_fg_tables(const bis_fg* fg, double* r, double* fprime, double* fval,
                                 double* sv, double* gprime, double* gval);
BIS_API bis_status bis_fg_domain(const bis_fg* fg, double i1[2], double i2[2]);
BIS_API bis_status bis_fg_eval(const bis_fg* fg, double x, double* fprime, double* gprime);

typedef enum bis_extend_policy {
  BIS_EXTEND_CONSTANT = 0,
  BIS_EXTEND_TAPER = 1,
} bis_extend_policy;

BIS_API bis_status bis_fg_set_extension(bis_fg* fg, bis_extend_policy policy, double width);
/* Mollifier bump on F' over (lo, hi); amplitude clamped to keep |f'| below
 * inf |F'| / 2 on the interval.  Returns a new handle. */
BIS_API bis_status bis_fg_perturb(const bis_fg* fg, double lo, double hi, double amplitude,
                                  bis_fg** out);
BIS_API double bis_fg_bump_amplitude(const bis_fg* fg);
BIS_API bis_status bis_fg_bump_value(const bis_fg* fg, double x, double* out);

BIS_API bis_status bis_fg_make_surface(const bis_fg* fg, const bis_quad_opts* opts,
                                       bis_surface** out);
BIS_API bis_status bis_verify_solution(const bis_surface* s, const bis_strip* strip,
                                       double tol, double* curve_sup, double* normal_sup);

/* ------------------------------------------------------------------ */
/* Timelike minimal surfaces (split-complex Bjorling solver, L3).      */

BIS_API bis_status bis_tms_solve(const char* c1, const char* c2, const char* c3,
                                 const char* n1, const char* n2, const char* n3,
                                 const char* variable, double t_min, double t_max,
                                 double t0, const bis_quad_opts* opts, bis_tms** out);
BIS_API void bis_tms_free(bis_tms* t);
BIS_API bis_status bis_tms_eval(const bis_tms* t, double tv, double sv, double out[3]);
/* 0: data curve on s = 0 (timelike c'); 1: on t = 0 (spacelike c'). */
BIS_API int bis_tms_data_axis(const bis_tms* t);
BIS_API bis_status bis_tms_curve(const bis_tms* t, double tv, double out[3]);
BIS_API bis_status bis_tms_normal(const bis_tms* t, double tv, double out[3]);

typedef struct bis_jacobian_report {
  int criterion_i;
  int criterion_ii;
  int zero_diag_ambiguity;
  double min_abs_j11, min_abs_j22, min_abs_det;
  double witness_i[2], witness_ii[2]; /* (t, s) of first failing sample */
} bis_jacobian_report;

typedef bis_status (*bis_surface_fn)(void* user, double t, double s, double out[3]);

/* Samples the Jacobian of (t,s) -> (X_{comp_a}, X_{comp_b}) (1-based) on an
 * nt x ns grid and evaluates the global-injectivity criteria; the result is
 * sampled evidence, not a proof.  Per-sample rows (t, s, j11, j12, j21, j22,
 * det) are written to `samples` (nt*ns*7 doubles) when non-NULL. */
BIS_API bis_status bis_gale_nikaido(bis_surface_fn fn, void* user, double t_lo, double t_hi,
                                    double s_lo, double s_hi, int nt, int ns, int comp_a,
                                    int comp_b, double fd_step, double tol,
                                    bis_jacobian_report* out, double* samples);

/* Convenience wrapper running the check on a solved TMS. */
BIS_API bis_status bis_tms_gale_nikaido(const bis_tms* t, double t_lo, double t_hi,
                                        double s_lo, double s_hi, int nt, int ns,
                                        int comp_a, int comp_b, double fd_step, double tol,
                                        bis_jacobian_report* out, double* samples);

#ifdef __cplusplus
}
#endif

#endif /* BISOLITON_H */
