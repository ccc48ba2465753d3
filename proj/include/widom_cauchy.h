/* widom_cauchy.h - C interface to the character-automorphic verification core.
 *
 * All functions return wc_status (WC_OK on success). Complex scalars cross the
 * boundary as (re, im) double pairs. Objects are opaque handles created and
 * destroyed through matching create/destroy calls; every create that succeeds
 * must eventually be paired with its destroy. Handles are immutable after
 * creation and may be shared across threads.
 */
#ifndef WIDOM_CAUCHY_H
#define WIDOM_CAUCHY_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wc_status {
    WC_OK = 0,
    WC_ERR_INVALID_ARGUMENT = 1, /* parameter out of range / malformed input */
    WC_ERR_POLE = 2,             /* evaluation at (or too near) a pole */
    WC_ERR_SINGULARITY = 3,      /* within exclusion radius of a singular point */
    WC_ERR_TRUNCATION = 4,       /* orbit tail tolerance unreachable */
    WC_ERR_CONVERGENCE = 5,      /* adaptive quadrature failed to converge */
    WC_ERR_NOT_AUTOMORPHIC = 6,  /* character measurement inconsistent */
    WC_ERR_VALIDATION = 7,       /* config rejected before computation */
    WC_ERR_IO = 8,               /* unreadable/unwritable path */
    WC_ERR_INTERNAL = 9
} wc_status;

/* Thread-local message for the most recent failing call in this thread. */
const char* wc_last_error(void);

/* ------------------------------------------------------------------ annulus */

typedef struct wc_annulus wc_annulus;

/* Annulus {q < |s| < 1} with its uniformizer and deck group. 0 < q < 1. */
wc_status wc_annulus_create(double q, wc_annulus** out);
void wc_annulus_destroy(wc_annulus* a);

/* Multiplier of the deck generator, lambda = exp(2*pi^2 / log(1/q)). */
wc_status wc_annulus_multiplier(const wc_annulus* a, double* out);

/* Covering map of the disk onto the annulus and its derivative. */
wc_status wc_annulus_uniformizer(const wc_annulus* a, double z_re, double z_im,
                                 double* out_re, double* out_im);
wc_status wc_annulus_uniformizer_derivative(const wc_annulus* a, double z_re,
                                            double z_im, double* out_re,
                                            double* out_im);

/* --------------------------------------------------------- green evaluator */

typedef struct wc_green wc_green;

/* Green's function evaluator for the group orbit of zeta. For the annulus deck
 * group pass the annulus handle; pass NULL for the trivial group (disk case).
 * tail_tol controls orbit truncation (certified tail bound below tail_tol). */
wc_status wc_green_create(const wc_annulus* a_or_null, double zeta_re,
                          double zeta_im, double tail_tol, wc_green** out);
void wc_green_destroy(wc_green* g);

wc_status wc_green_orbit_size(const wc_green* g, size_t* out);
wc_status wc_green_tail_bound(const wc_green* g, double* out);
wc_status wc_green_widom_sum(const wc_green* g, double* out);

/* g_zeta(z), g'_zeta(z) for |z| <= 1 (derivative: |z| < 1). */
wc_status wc_green_eval(const wc_green* g, double z_re, double z_im,
                        double* out_re, double* out_im);
wc_status wc_green_eval_prime(const wc_green* g, double z_re, double z_im,
                              double* out_re, double* out_im);

/* Boundary orbit-sum kernel (g'/g)(t) for |t| = 1 away from fixed points. */
wc_status wc_green_boundary_log_derivative(const wc_green* g, double t_re,
                                           double t_im, double* out_re,
                                           double* out_im);

/* ---------------------------------------------------------- inner-outer split */

typedef struct wc_split wc_split;

/* Inner-outer factorization g' = Delta * O built on a boundary grid of M
 * points (power of two). Evaluators valid strictly inside the disk. */
wc_status wc_split_create(const wc_green* g, int grid_m, wc_split** out);
void wc_split_destroy(wc_split* s);

wc_status wc_split_outer(const wc_split* s, double z_re, double z_im,
                         double* out_re, double* out_im);
wc_status wc_split_delta(const wc_split* s, double z_re, double z_im,
                         double* out_re, double* out_im);

/* ----------------------------------------------------------------- runner  */

/* Execute a full run from a JSON config document (schema_version "1").
 * On success *report_json and *report_csv receive malloc'd NUL-terminated
 * strings owned by the caller; free them with wc_string_free. *all_passed is
 * set to 1 iff every case met its tolerance. Validation failures return
 * WC_ERR_VALIDATION with diagnostics in wc_last_error(). */
wc_status wc_run_config_json(const char* config_json, char** report_json,
                             char** report_csv, int* all_passed);
void wc_string_free(char* s);

/* Library version string (static storage, do not free). */
const char* wc_version(void);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* WIDOM_CAUCHY_H */
