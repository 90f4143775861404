#ifndef QCOMPLEXITY_H
#define QCOMPLEXITY_H

/* C interface to the qcomplexity engine: structural-complexity measures of
 * measurement-outcome processes of 1-D lattice ground states.
 *
 * All functions returning qc_status leave a human-readable message for the
 * calling thread in qc_last_error() on failure.  Handles are opaque and must
 * be released with their matching close/free call. */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qc_status {
    QC_OK = 0,
    QC_ERR_INVALID_INPUT = 1,
    QC_ERR_INVALID_STATE = 2,
    QC_ERR_CONVERGENCE = 3,
    QC_ERR_CAPACITY = 4,
    QC_ERR_DEGENERATE = 5,
    QC_ERR_IO = 6,
    QC_ERR_CONFIG = 7,
    QC_ERR_INTERNAL = 8
} qc_status;

const char* qc_status_name(qc_status status);
const char* qc_version(void);

/* Message from the most recent failing call on this thread; never NULL. */
const char* qc_last_error(void);

/* ------------------------------------------------------------------ point */

typedef struct qc_point_params {
    const char* model;       /* "ising" or "bosehubbard" */
    double coupling;         /* B/J (ising) or U/J (bosehubbard) */
    double theta;            /* ising measurement angle, [0, pi/2] */
    int32_t l;               /* truncated Markov order, >= 1 */
    int32_t n_sites;         /* even chain length */
    int32_t chi;             /* bond dimension cap */
    int32_t n_max;           /* bosehubbard occupation cutoff; <= 0 -> 3 */
    double nu;               /* bosehubbard filling; <= 0 -> 1.0 */
    double symmetry_break_h; /* < 0 -> default 1e-6 */
    double penalty_weight;   /* < 0 -> default 10*max(J,U) */
    double merge_tol;        /* < 0 -> 1e-8 */
    double p_floor;          /* < 0 -> 1e-12 */
    int32_t max_sweeps;      /* <= 0 -> 64 */
    double energy_tol;       /* <= 0 -> 1e-12 */
    double lanczos_tol;      /* <= 0 -> 1e-12 */
    double svd_cutoff;       /* < 0 -> 1e-14 */
    uint64_t seed;           /* 0 -> 1 */
} qc_point_params;

typedef struct qc_point_result {
    double c_mu_bits;
    double c_q_bits;
    double excess_entropy_bits;
    double half_chain_entropy_bits;
    double entropy_rate_bits;
    double energy;
    double max_truncation_error;
    int64_t causal_states;
    int64_t gram_iterations;
    double gram_residual;
    double gram_min_eig; /* smallest eigenvalue of the Gram matrix */
    double dropped_past_mass;
    double lost_transition_mass;
    double max_intra_state_tv;
    double filling_msd; /* bosehubbard only */
    double wall_seconds;
    int32_t dmrg_converged;
    int32_t dmrg_sweeps;
} qc_point_result;

qc_status qc_run_point(const qc_point_params* params, qc_point_result* result);

/* Writes the point's outcome-word table to a text file. */
qc_status qc_point_words(const qc_point_params* params, const char* path);

/* Total-variation distance between the central outcome window and the same
 * window shifted two sites; a translation-invariance diagnostic. */
qc_status qc_translation_defect(const qc_point_params* params, double* defect);

/* ------------------------------------------------------------------ sweep */

typedef struct qc_sweep qc_sweep;

typedef void (*qc_progress_fn)(int64_t done, int64_t total, const char* label, int ok, void* user);

qc_status qc_sweep_open(const char* config_path, qc_sweep** out);
qc_status qc_sweep_open_text(const char* config_text, qc_sweep** out);
int64_t qc_sweep_point_count(const qc_sweep* sweep);

/* Overrides; jobs <= 0 restores the config/environment default. */
qc_status qc_sweep_set_jobs(qc_sweep* sweep, int32_t jobs);
qc_status qc_sweep_set_format(qc_sweep* sweep, const char* format); /* "csv" | "jsonl" */
qc_status qc_sweep_set_progress(qc_sweep* sweep, qc_progress_fn fn, void* user);

/* Runs every grid point and writes the report file.  Per-point failures are
 * recorded as error rows and counted in *failures; the call itself only fails
 * on configuration or I/O problems. */
qc_status qc_sweep_run(qc_sweep* sweep, const char* output_path, int64_t* failures);

void qc_sweep_close(qc_sweep* sweep);

/* -------------------------------------------------------------- validation */

typedef struct qc_validation qc_validation;

qc_status qc_validation_run(int quick, qc_validation** out);
int64_t qc_validation_count(const qc_validation* v);
int64_t qc_validation_failures(const qc_validation* v);
const char* qc_validation_name(const qc_validation* v, int64_t index);
int qc_validation_passed(const qc_validation* v, int64_t index);
const char* qc_validation_detail(const qc_validation* v, int64_t index);
void qc_validation_free(qc_validation* v);

#ifdef __cplusplus
}
#endif

#endif /* QCOMPLEXITY_H */
