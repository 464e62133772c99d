/* C interface to the rotational overdetermined-Poisson toolkit.
 *
 * Conventions:
 *   - every function that can fail returns an int status (OVP_OK on success)
 *     and writes results through out-parameters (always last);
 *   - on failure, ovp_last_error() describes the problem for the calling
 *     thread and ovp_last_error_offset() gives a character position when the
 *     failure came from parsing expression text (-1 otherwise);
 *   - constructors copy their handle arguments; the caller keeps ownership
 *     of every handle it created and releases each with the matching _free;
 *   - strings returned through char** are heap-allocated, NUL-terminated,
 *     and released with ovp_string_free.
 */

#ifndef OVPOISSON_H
#define OVPOISSON_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

/* status codes */
#define OVP_OK 0
#define OVP_ERR_PARSE 1          /* malformed expression text */
#define OVP_ERR_DOMAIN 2         /* argument outside the mathematical domain */
#define OVP_ERR_INVALID 3        /* inconsistent arguments or object state */
#define OVP_ERR_NO_CONVERGENCE 4 /* iterative solve missed its tolerance */
#define OVP_ERR_IO 5             /* file read or write failure */
#define OVP_ERR_NULL 6           /* required pointer argument was NULL */

/* classification verdicts; doubles as the process exit code of the CLI */
#define OVP_VERDICT_RADIAL_AND_BALL 0
#define OVP_VERDICT_RADIAL_ONLY 1
#define OVP_VERDICT_INCONCLUSIVE 2
#define OVP_VERDICT_UNSOLVABLE 3
#define OVP_VERDICT_HYPOTHESIS_FAILS 4

typedef struct ovp_manifold ovp_manifold;     /* rotational model space */
typedef struct ovp_field ovp_field;           /* scalar function of one variable */
typedef struct ovp_problem ovp_problem;       /* radial problem data and tables */
typedef struct ovp_profile ovp_profile;       /* sampled radial solution */
typedef struct ovp_report ovp_report;         /* classification report */
typedef struct ovp_domain2d ovp_domain2d;     /* star-shaped planar domain */
typedef struct ovp_solution2d ovp_solution2d; /* direct 2d solve result */
typedef struct ovp_ctable ovp_ctable;         /* boundary slope table */

const char* ovp_version(void);

/* thread-local description of the most recent failure in this thread */
const char* ovp_last_error(void);
long ovp_last_error_offset(void);

void ovp_string_free(char* s);

/* ---- manifolds ------------------------------------------------------- */

int ovp_manifold_euclidean(int dim, ovp_manifold** out);
int ovp_manifold_hyperbolic(int dim, ovp_manifold** out);
int ovp_manifold_spherical(int dim, ovp_manifold** out);
/* custom warping h(r) given as expression text; pass limit = INFINITY for an
 * unbounded radial range */
int ovp_manifold_custom(const char* h_expr, double limit, int dim,
                        ovp_manifold** out);
void ovp_manifold_free(ovp_manifold* m);

int ovp_manifold_dim(const ovp_manifold* m, int* out);
int ovp_manifold_limit(const ovp_manifold* m, double* out);
int ovp_manifold_h(const ovp_manifold* m, double r, double* out);
int ovp_manifold_h_prime(const ovp_manifold* m, double r, double* out);

/* ---- scalar fields --------------------------------------------------- */

/* parse expression text in one variable, spelled r or theta; on
 * OVP_ERR_PARSE the failing character position is available from
 * ovp_last_error_offset */
int ovp_field_parse(const char* expr, ovp_field** out);
int ovp_field_constant(double value, ovp_field** out);
/* monotone cubic interpolant through (r[i], y[i]); r strictly increasing */
int ovp_field_table(const double* r, const double* y, size_t n, ovp_field** out);
int ovp_field_eval(const ovp_field* f, double r, double* out);
void ovp_field_free(ovp_field* f);

/* ---- radial problems ------------------------------------------------- */

/* Overdetermined problem data on (r_lo, r_hi). R0 may be NULL (ball-type
 * problem) or point at the inner radius (annular problem). interior_sphere
 * declares the interior-sphere property of the domain (nonzero = holds);
 * it gates one branch of the classification and is not verified here. */
int ovp_problem_create(const ovp_manifold* m, const ovp_field* f,
                       const ovp_field* phi, const ovp_field* kappa,
                       double r_lo, double r_hi, const double* R0,
                       int interior_sphere, ovp_problem** out);
void ovp_problem_free(ovp_problem* p);

/* slope of the radial solution with zero mean-flux normalization */
int ovp_problem_v(const ovp_problem* p, double r, double* out);
/* candidate boundary slope for annular problems with inner value 0 and outer
 * value c */
int ovp_problem_w(const ovp_problem* p, double r, double c, double* out);

/* sampled solutions with boundary value c at radius R; n >= 16 intervals
 * (n + 1 nodes), n <= 0 selects the default resolution */
int ovp_ball_profile(const ovp_problem* p, double R, double c, int n,
                     ovp_profile** out);
int ovp_annulus_profile(const ovp_problem* p, double R, double c, int n,
                        ovp_profile** out);
void ovp_profile_free(ovp_profile* p);

int ovp_profile_size(const ovp_profile* p, size_t* out);
/* borrowed views into the profile arrays; valid while the profile lives */
int ovp_profile_data(const ovp_profile* p, const double** r, const double** u,
                     const double** du);
/* independent-quadrature check of the flux balance along the profile */
int ovp_profile_ode_residual(const ovp_profile* p, const ovp_problem* prob,
                             double* out);
/* columns r,u,u_prime with 17 significant digits */
int ovp_profile_csv(const ovp_profile* p, char** out);

/* ---- classification -------------------------------------------------- */

/* Serrin-type check: constant interior data, slope data kappa on the outer
 * boundary. grid_n <= 0 selects the default resolution. */
int ovp_serrin_check(const ovp_problem* p, int grid_n, ovp_report** out);
/* Bernoulli-type check for annular problems (R0 required) */
int ovp_bernoulli_check(const ovp_problem* p, int grid_n, ovp_report** out);
void ovp_report_free(ovp_report* r);

int ovp_report_verdict(const ovp_report* r, int* out);
/* human-readable key = value block */
int ovp_report_text(const ovp_report* r, char** out);
/* structured document mirroring every report field */
int ovp_report_json(const ovp_report* r, char** out);
/* per-node defect table, columns r,<lhs>,kappa,defect,gap */
int ovp_report_defect_csv(const ovp_report* r, char** out);

/* ---- direct 2d solver ------------------------------------------------ */

int ovp_domain_ball(double R, ovp_domain2d** out);
int ovp_domain_ball_shaped(const ovp_field* rho, ovp_domain2d** out);
int ovp_domain_annulus(double R0, double R, ovp_domain2d** out);
int ovp_domain_annular_shaped(double R0, const ovp_field* rho,
                              ovp_domain2d** out);
/* ellipse with semi-axes a >= b > 0; valid on the euclidean preset only */
int ovp_domain_ellipse(double a, double b, ovp_domain2d** out);
void ovp_domain_free(ovp_domain2d* d);

/* Dirichlet solve of the surface Poisson equation (dimension 2 manifolds);
 * g is the boundary data as a function of the angle. tol <= 0 selects the
 * default 1e-10 relative residual; max_iter <= 0 selects the default cap. */
int ovp_solve_dirichlet(const ovp_manifold* m, const ovp_domain2d* dom,
                        const ovp_field* f, const ovp_field* g, int n_s,
                        int n_theta, double tol, int max_iter,
                        ovp_solution2d** out);
void ovp_solution_free(ovp_solution2d* s);

int ovp_solution_dims(const ovp_solution2d* s, int* n_s, int* n_theta);
/* nodal value at radial index i in [0, n_s] and angular index j in [0, n_theta) */
int ovp_solution_value(const ovp_solution2d* s, int i, int j, double* out);
/* borrowed view of the outward metric-normal boundary derivative per angle */
int ovp_solution_flux_data(const ovp_solution2d* s, const double** flux,
                           size_t* n);
/* periodic cubic interpolation of the boundary flux */
int ovp_flux_at(const ovp_solution2d* s, double theta, double* out);
int ovp_solution_stats(const ovp_solution2d* s, int* iterations, int* used_sor,
                       double* final_residual);
/* columns theta,s,r,u */
int ovp_solution_csv(const ovp_solution2d* s, char** out);
/* columns theta,r,u_nu */
int ovp_solution_flux_csv(const ovp_solution2d* s, char** out);
/* max nodal deviation from a radial profile on a matching circular domain */
int ovp_radial_equivalence(const ovp_solution2d* s, const ovp_profile* p,
                           double* out);

/* ---- boundary slope tables ------------------------------------------- */

/* Zero-Dirichlet solve on the ellipse (a, b) with source f, followed by
 * extraction of -u_nu grouped by distance from the center: at each tabulated
 * radius the 2 to 4 boundary points at that distance are averaged into
 * kappa, and their spread is recorded as mismatch. */
int ovp_counterexample_build(double a, double b, const ovp_field* f, int n_s,
                             int n_theta, ovp_ctable** out);
void ovp_ctable_free(ovp_ctable* t);

int ovp_ctable_size(const ovp_ctable* t, size_t* out);
/* borrowed views, valid while the table lives */
int ovp_ctable_data(const ovp_ctable* t, const double** r,
                    const double** kappa, const double** mismatch);
/* worst mismatch across the table */
int ovp_ctable_consistency(const ovp_ctable* t, double* out);
/* columns r,kappa,mismatch */
int ovp_ctable_csv(const ovp_ctable* t, char** out);
/* the underlying 2d solve, for its solution and flux tables */
int ovp_ctable_solution_csv(const ovp_ctable* t, char** out);
int ovp_ctable_flux_csv(const ovp_ctable* t, char** out);
int ovp_ctable_solution_stats(const ovp_ctable* t, int* iterations,
                              int* used_sor, double* final_residual);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* OVPOISSON_H */
