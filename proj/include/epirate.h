/* C interface to the epirate library: simulation, fitting and posterior
 * summarization of time-varying epidemic infection rates estimated from
 * removal times.
 *
 * All functions return EPIRATE_OK on success; on failure they return an
 * error code and epirate_last_error() gives a thread-local message.
 * Handles are opaque and owned by the caller via the matching _free call.
 * Configurations are JSON strings; see the project README for the schema.
 * Distinct handles may be used concurrently from different threads.
 */
#ifndef EPIRATE_H
#define EPIRATE_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum epirate_status {
  EPIRATE_OK = 0,
  EPIRATE_ERR_ARGUMENT = 1,   /* bad arguments or malformed config */
  EPIRATE_ERR_DATA = 2,       /* unreadable or malformed data files */
  EPIRATE_ERR_VALIDATION = 3, /* a validation run finished but failed its thresholds */
  EPIRATE_ERR_RUNTIME = 4
} epirate_status;

const char* epirate_version(void);
const char* epirate_last_error(void);

/* ---- removal-time datasets ---------------------------------------------- */

typedef struct epirate_dataset epirate_dataset;

/* single-column CSV, optional header; times are sorted and shifted so the
 * first removal is at 0 */
epirate_status epirate_dataset_load_csv(const char* path, epirate_dataset** out);
epirate_status epirate_dataset_create(const double* removal_times, size_t n,
                                      epirate_dataset** out);
size_t epirate_dataset_size(const epirate_dataset* d);
/* copies the normalized times into out (capacity cap); returns the count */
size_t epirate_dataset_times(const epirate_dataset* d, double* out, size_t cap);
void epirate_dataset_free(epirate_dataset* d);

/* ---- epidemic simulation ------------------------------------------------- */

/* config keys: population, beta, gamma, seasonal, seed, min_final_size.
 * Writes a removals CSV and a truth JSON (either path may be NULL to skip)
 * and reports the final size. */
epirate_status epirate_simulate(const char* config_json, const char* removals_csv_path,
                                const char* truth_json_path, long* final_size_out);

/* ---- posterior sampling --------------------------------------------------- */

typedef struct epirate_sampler epirate_sampler;

/* config keys: model (step-indep | step-martingale | bspline | mass-action),
 * iterations, burn_in, thin, seed, theta, within_model_repeats,
 * infection_updates, emit_latents, gamma_prior{kappa,mu},
 * rate_prior{lambda,k_max,kappa,a,b,alpha0,beta0,alpha},
 * population + beta_prior{nu,lambda} for mass-action. */
epirate_status epirate_sampler_create(const epirate_dataset* data, const char* config_json,
                                      epirate_sampler** out);

/* called once per retained sample with a single JSON object (no newline);
 * return nonzero to stop the chain early */
typedef int (*epirate_sample_callback)(const char* sample_json, void* user);

/* a sampler handle runs once; create a new one to rerun */
epirate_status epirate_sampler_run(epirate_sampler* s, epirate_sample_callback cb,
                                   void* user);
epirate_status epirate_sampler_run_to_file(epirate_sampler* s, const char* jsonl_path);
void epirate_sampler_free(epirate_sampler* s);

/* ---- posterior summarization ---------------------------------------------- */

/* options keys: grid, per_infective, burn_in_samples, thin. The removal CSV
 * is required for per-infective summaries and mass-action streams; the truth
 * JSON adds truth/coverage columns. Either may be NULL. */
epirate_status epirate_summarize(const char* posterior_jsonl_path, const char* options_json,
                                 const char* removals_csv_path, const char* truth_json_path,
                                 const char* band_csv_path);

/* ---- prior validation ------------------------------------------------------ */

/* config keys: family, lambda, k_max, kappa, mu, iterations, seed,
 * tv_threshold, ks_p_threshold. On return *report_json_out (if non-NULL)
 * holds a malloc'd JSON report; free it with epirate_string_free. Returns
 * EPIRATE_ERR_VALIDATION when the run completes but misses its thresholds. */
epirate_status epirate_validate_prior(const char* config_json, char** report_json_out);
void epirate_string_free(char* s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* EPIRATE_H */
