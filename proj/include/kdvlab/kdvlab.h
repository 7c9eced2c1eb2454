#ifndef KDVLAB_H
#define KDVLAB_H

/* C API of the kdvlab shared library: dissipative-dispersive spectral
 * laboratory (symbol analysis, semigroup evolution, Picard solving of the
 * Duhamel equation, norm-inflation sweeps).
 *
 * All objects are opaque handles created/freed through this interface.
 * Functions return KDVLAB_OK on success; on failure the thread-local
 * message from kdvlab_last_error() describes what went wrong.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct kdvlab_spec kdvlab_spec;
typedef struct kdvlab_grid kdvlab_grid;
typedef struct kdvlab_field kdvlab_field;

typedef enum {
    KDVLAB_OK = 0,
    KDVLAB_ERR_INVALID_ARGUMENT = 1,
    KDVLAB_ERR_CONFIG = 2,
    KDVLAB_ERR_NUMERICAL = 3,
    KDVLAB_ERR_CHECK_FAILED = 4,
    KDVLAB_ERR_IO = 5,
} kdvlab_status;

const char* kdvlab_version(void);
/* Message of the most recent failure on this thread ("" when none). */
const char* kdvlab_last_error(void);

/* --- symbol specs ------------------------------------------------------- */

/* name: "kdvb", "ost" or "kdvks". */
kdvlab_status kdvlab_spec_builtin(const char* name, kdvlab_spec** out);
/* terms: n_terms triples (c, i, j) describing Phi_1 = sum c xi^i |xi|^j. */
kdvlab_status kdvlab_spec_create(double p, double eta, double q_bound, const double* terms,
                                 size_t n_terms, kdvlab_spec** out);
void kdvlab_spec_free(kdvlab_spec* spec);

kdvlab_status kdvlab_spec_eval_phi(const kdvlab_spec* spec, double xi, double* out);
/* Smallest admissible high-frequency threshold M. */
kdvlab_status kdvlab_spec_threshold(const kdvlab_spec* spec, double* out);
/* Global upper bound of Phi. */
kdvlab_status kdvlab_spec_sup_phi(const kdvlab_spec* spec, double* out);

/* --- grids and spectral fields ------------------------------------------ */

/* Nodes xi_k = -xi_max + 2 k xi_max / n, k = 0..n-1; n even, >= 8. */
kdvlab_status kdvlab_grid_create(double xi_max, int n, kdvlab_grid** out);
void kdvlab_grid_free(kdvlab_grid* grid);
kdvlab_status kdvlab_grid_size(const kdvlab_grid* grid, int* n_out);

/* re/im: n coefficient samples; im may be NULL (real spectrum).
 * real_flag != 0 declares the field Hermitian-symmetric. */
kdvlab_status kdvlab_field_create(const kdvlab_grid* grid, const double* re, const double* im,
                                  int real_flag, kdvlab_field** out);
void kdvlab_field_free(kdvlab_field* field);
/* Copies n entries into re/im (either may be NULL). */
kdvlab_status kdvlab_field_coeffs(const kdvlab_field* field, double* re, double* im);

kdvlab_status kdvlab_field_hs_norm(const kdvlab_field* field, double s, double* out);
kdvlab_status kdvlab_field_l2_norm(const kdvlab_field* field, double* out);
kdvlab_status kdvlab_field_convolve(const kdvlab_field* f, const kdvlab_field* g,
                                    kdvlab_field** out);

/* Apply the semigroup multiplier e^{i t xi^3 + eta t Phi(xi)}. */
kdvlab_status kdvlab_semigroup_apply(const kdvlab_spec* spec, const kdvlab_field* field, double t,
                                     kdvlab_field** out);

/* --- config-driven batch runs ------------------------------------------- */

/* Runs the command named in the config and writes CSV/JSON artifacts plus
 * manifest.json under output_dir. seed < 0 defers to the config (default
 * 42); jobs <= 0 means one worker. */
kdvlab_status kdvlab_run_config_text(const char* config_text, const char* output_dir, long seed,
                                     int jobs);
kdvlab_status kdvlab_run_config_file(const char* config_path, const char* output_dir, long seed,
                                     int jobs);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* KDVLAB_H */
