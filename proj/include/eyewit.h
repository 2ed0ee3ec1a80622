#ifndef EYEWIT_H
#define EYEWIT_H

/* C interface to the eyewit simulation core. All entry points return an
 * error code; on failure ew_error_detail() describes the problem for the
 * calling thread. */

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ew_config ew_config;

enum ew_status {
  EW_OK = 0,
  EW_ERR_CONFIG = 1,
  EW_ERR_DIMENSION = 2,
  EW_ERR_TRUNCATION = 3,
  EW_ERR_CALIBRATION = 4,
  EW_ERR_DEGENERATE_BOUND = 5,
  EW_ERR_POST_SELECTION = 6,
  EW_ERR_INVALID_ARGUMENT = 7,
  EW_ERR_RUNTIME = 8
};

/* Flat key=value configuration; later ew_config_set calls override earlier
 * values and file entries. */
ew_config* ew_config_new(void);
void ew_config_free(ew_config* cfg);
int ew_config_load(ew_config* cfg, const char* path);
int ew_config_set(ew_config* cfg, const char* key, const char* value);

/* Runs one subcommand ("eye-curve", "calibrate", "sweep", "validate",
 * "bloch") and writes its CSV to out_path; NULL or "-" means stdout. */
int ew_run(const ew_config* cfg, const char* command, const char* out_path);

/* Scalar helpers. */
int ew_no_click_prob_fock(int theta, double eta, int n, double* out);
int ew_seen_prob_coherent(int theta, double eta, double nbar, double* out);
int ew_calibrate(int theta, double* beta0, double* beta1, double* beta2);

/* Closed-form expected witness value for the experiment described by cfg. */
int ew_expected_witness(const ew_config* cfg, double* out);

/* Message for the last failure on this thread, "ClassName: detail". */
const char* ew_error_detail(void);

#ifdef __cplusplus
}
#endif

#endif
