/* C API for the finite-difference elliptic BVP library: opaque handles,
 * integer status codes, and JSON/CSV strings for structured results.
 * Every function returning FDBVP_* status leaves a message retrievable via
 * fdbvp_last_error() on failure. Strings returned through out-parameters
 * are heap-allocated; release them with fdbvp_string_free(). */

#ifndef FDBVP_H
#define FDBVP_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    FDBVP_OK = 0,
    FDBVP_EINVAL = 1,   /* invalid argument / precondition violation */
    FDBVP_EFAIL = 2,    /* runtime failure (non-convergence, I/O, ...) */
    FDBVP_ENOMEM = 3
} fdbvp_status;

typedef struct fdbvp_mesh_s fdbvp_mesh;
typedef struct fdbvp_solution_s fdbvp_solution;

const char* fdbvp_version(void);

/* Thread-local message describing the most recent failure. */
const char* fdbvp_last_error(void);

void fdbvp_string_free(char* s);

/* ---- meshes ---------------------------------------------------------- */

/* Uniform mesh over the box prod_i (a[i], b[i]) with counts[i] >= 2
 * subintervals per axis. */
fdbvp_status fdbvp_mesh_create(const double* a, const double* b, const int* counts, int n,
                               fdbvp_mesh** out);
void fdbvp_mesh_destroy(fdbvp_mesh* mesh);
int fdbvp_mesh_dim(const fdbvp_mesh* mesh);
fdbvp_status fdbvp_mesh_spacing(const fdbvp_mesh* mesh, int axis, double* out);
/* Number of points of the closed grid. */
size_t fdbvp_mesh_point_count(const fdbvp_mesh* mesh);

/* ---- spectral -------------------------------------------------------- */

/* JSON object with lambda_1h, lambda_1, t_scale, distance_bound_ratio. */
fdbvp_status fdbvp_eigen_report(const fdbvp_mesh* mesh, char** json_out);

/* ---- inequality verification ----------------------------------------- */

/* spec_json: {"name": "poincare" | "hardy" | "sobolev_n" |
 *             "sobolev_2_orlicz" | "sobolev_2_lp" | "hardy_sobolev",
 *             "p": ..., "alpha": ..., "beta": ...}.
 * Emits one report object with the worst LHS/RHS ratio over `samples`
 * random fields plus the deterministic adversaries. */
fdbvp_status fdbvp_verify_inequality(const fdbvp_mesh* mesh, const char* spec_json, int samples,
                                     uint64_t seed, char** json_out);

/* ---- a priori bounds -------------------------------------------------- */

/* 1d bound on (-L, L) for f = g with the growth minorant named by
 * growth ("cubic_plus_one" or "power_plus_one:<p>") anchored at K. */
fdbvp_status fdbvp_bound_1d(const char* growth, double K, double L, char** json_out);

/* n-dimensional bound pipeline; a/b are the box corners of length n. */
fdbvp_status fdbvp_bound_nd(int n, double p, double lambda, double C1, double C2, double C3,
                            const double* a, const double* b, char** json_out);

/* ---- solving ---------------------------------------------------------- */

/* nonlinearity_json: a registry object or a bare builtin id string.
 * options_json (may be NULL): {"initial": "zero" | "scaled_eigen",
 * "tau": ..., "tol": ..., "max_newton": ...}. */
fdbvp_status fdbvp_solve(const fdbvp_mesh* mesh, const char* nonlinearity_json,
                         const char* options_json, fdbvp_solution** out);
void fdbvp_solution_destroy(fdbvp_solution* solution);
/* JSON: convergence flag, residual, Newton iterations, min value, norms,
 * and the independent re-verification checks. */
fdbvp_status fdbvp_solution_report(const fdbvp_solution* solution, char** json_out);
/* Grid CSV: one row per point, index per axis, coordinates per axis, value. */
fdbvp_status fdbvp_solution_values_csv(const fdbvp_solution* solution, char** csv_out);
fdbvp_status fdbvp_solution_norm_inf(const fdbvp_solution* solution, double* out);

/* ---- sweeps ----------------------------------------------------------- */

/* config_json: {"domain": {"a": [...], "b": [...]},
 *               "nonlinearity": <registry object or builtin id>,
 *               "meshes": [[...], ...],
 *               "mode": "subcritical" | "supercritical",
 *               "seed": ..., "tol": ...}.
 * records_json_out receives the JSON array of sweep rows. */
fdbvp_status fdbvp_sweep_run(const char* config_json, char** records_json_out);

/* Renders a records array into the exact-column CSV / plot companion. */
fdbvp_status fdbvp_records_to_csv(const char* records_json, char** csv_out);
fdbvp_status fdbvp_records_to_plot_csv(const char* records_json, char** csv_out);

#ifdef __cplusplus
}
#endif

#endif /* FDBVP_H */
