/* C interface to the chirp-waveform toolkit.
 *
 * All functions return ccdt_status; on any failure ccdt_last_error() gives a
 * thread-local description of the most recent error on the calling thread.
 * Output buffers are caller-allocated with the documented capacity.  Handles
 * returned by the create functions must be released with the matching free
 * function.  The library keeps no global mutable state, so concurrent calls
 * on distinct handles are safe.
 */
#ifndef CCDT_H
#define CCDT_H

#include <stdint.h>

#if defined(_WIN32)
#define CCDT_API __declspec(dllexport)
#else
#define CCDT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ccdt_status {
  CCDT_OK = 0,
  CCDT_ERROR_INVALID = 1,  /* bad argument or configuration */
  CCDT_ERROR_INTERNAL = 2  /* unexpected failure inside the library */
} ccdt_status;

typedef enum ccdt_waveform {
  CCDT_WAVEFORM_CHIRP = 0,
  CCDT_WAVEFORM_OFDM = 1,
  CCDT_WAVEFORM_DFTS_OFDM = 2
} ccdt_waveform;

typedef enum ccdt_family {
  CCDT_FAMILY_MSEQUENCE = 0,
  CCDT_FAMILY_ZADOFF_CHU = 1,
  CCDT_FAMILY_DFT = 2,
  CCDT_FAMILY_MPSK = 3
} ccdt_family;

typedef struct ccdt_complex {
  double re;
  double im;
} ccdt_complex;

/* Discrete chirp parameters.  two_alpha and two_beta store 2*alpha and
 * 2*beta, which keeps every validity predicate in exact integers; valid
 * parameters satisfy gcd(two_alpha, n) == 1 and two_alpha*n + two_beta even.
 */
typedef struct ccdt_chirp_params {
  int n;
  int two_alpha;
  int two_beta;
  double gamma;
} ccdt_chirp_params;

/* Which sequence a config draws for the data vector.  lfsr_num_taps == 0
 * selects the built-in primitive polynomial for lfsr_degree.
 */
typedef struct ccdt_sequence_spec {
  int family;        /* ccdt_family */
  int lfsr_degree;
  int lfsr_taps[12];
  int lfsr_num_taps;
  uint32_t lfsr_init;
  int zc_root;
  int dft_tone;
  int mpsk_order;
} ccdt_sequence_spec;

CCDT_API const char* ccdt_version(void);
CCDT_API const char* ccdt_last_error(void);

CCDT_API void ccdt_chirp_params_default(ccdt_chirp_params* params);
CCDT_API void ccdt_sequence_spec_default(ccdt_sequence_spec* spec);

/* ---- sequences ---------------------------------------------------------- */

typedef struct ccdt_sequence ccdt_sequence;

CCDT_API ccdt_status ccdt_sequence_create(const ccdt_sequence_spec* spec, int n, uint64_t seed,
                                          ccdt_sequence** out);
CCDT_API ccdt_status ccdt_sequence_length(const ccdt_sequence* seq, int* out);
CCDT_API ccdt_status ccdt_sequence_copy(const ccdt_sequence* seq, ccdt_complex* out);
CCDT_API void ccdt_sequence_free(ccdt_sequence* seq);

/* ---- waveforms ---------------------------------------------------------- */

/* out has n entries; params may be NULL unless waveform is CHIRP. */
CCDT_API ccdt_status ccdt_modulate(int waveform, const ccdt_chirp_params* params,
                                   const ccdt_complex* data, int n, ccdt_complex* out);

/* Band-limited upsampling by integer factor q >= 1; out has q*n entries. */
CCDT_API ccdt_status ccdt_upsample(int waveform, const ccdt_chirp_params* params,
                                   const ccdt_complex* data, int n, int q, ccdt_complex* out);

/* ---- ambiguity functions ------------------------------------------------ */

/* Brute-force periodic ambiguity of an arbitrary signal. */
CCDT_API ccdt_status ccdt_af_point(const ccdt_complex* signal, int n, int64_t delta, int64_t tau,
                                   ccdt_complex* out);

/* Brute-force ambiguity of an arbitrary signal at real-valued Doppler. */
CCDT_API ccdt_status ccdt_af_point_real(const ccdt_complex* signal, int n, double delta,
                                        int64_t tau, ccdt_complex* out);

/* Closed forms per waveform; data has n entries (n = params->n for CHIRP). */
CCDT_API ccdt_status ccdt_af_closed_form(int waveform, const ccdt_chirp_params* params,
                                         const ccdt_complex* data, int n, int64_t delta,
                                         int64_t tau, ccdt_complex* out);

/* Chirp waveform at real-valued Doppler (integer delay). */
CCDT_API ccdt_status ccdt_af_fractional(const ccdt_chirp_params* params,
                                        const ccdt_complex* data, double delta, int64_t tau,
                                        ccdt_complex* out);

/* Chirp waveform upsampled by q, on the length q*n grid. */
CCDT_API ccdt_status ccdt_af_upsampled(const ccdt_chirp_params* params, const ccdt_complex* data,
                                       int q, int64_t delta, int64_t tau, ccdt_complex* out);

/* Full surface of the waveform upsampled by q (q == 1 for the symbol-rate
 * grid): out is (q*n)^2 entries, row-major with Doppler as the slow axis.
 */
CCDT_API ccdt_status ccdt_af_surface(int waveform, const ccdt_chirp_params* params,
                                     const ccdt_complex* data, int n, int q, ccdt_complex* out);

/* ---- envelope ----------------------------------------------------------- */

CCDT_API ccdt_status ccdt_papr(int waveform, const ccdt_chirp_params* params,
                               const ccdt_complex* data, int n, int q, double* papr_db,
                               int* peak_index);

/* PAPR across a root family (0 = Zadoff-Chu roots 1..n-1, 1 = DFT tones
 * 0..n-1), ascending by PAPR.  capacity is the size of both output arrays;
 * *count receives the number of entries written.
 */
CCDT_API ccdt_status ccdt_papr_sweep(int waveform, const ccdt_chirp_params* params, int family,
                                     int q, int* roots, double* paprs_db, int capacity,
                                     int* count);

/* ---- property battery --------------------------------------------------- */

typedef struct ccdt_verify_options {
  int n;
  ccdt_chirp_params chirp;
  int zc_root;
  int dft_tone;
  int lfsr_degree;
  int lfsr_taps[12];
  int lfsr_num_taps;
  uint32_t lfsr_init;
  uint64_t seed;
  double tolerance;  /* > 0 overrides every per-check default */
} ccdt_verify_options;

typedef struct ccdt_property_result {
  char name[64];
  double max_deviation;
  double tolerance;
  int passed;
} ccdt_property_result;

CCDT_API void ccdt_verify_options_default(ccdt_verify_options* options);

/* Runs the fixed battery; writes up to capacity results and sets *count to
 * the number available.  Fails with CCDT_ERROR_INVALID when capacity is too
 * small.
 */
CCDT_API ccdt_status ccdt_verify_run(const ccdt_verify_options* options,
                                     ccdt_property_result* results, int capacity, int* count);

/* ---- Monte-Carlo experiments -------------------------------------------- */

typedef struct ccdt_acquisition_config {
  int waveform;
  ccdt_chirp_params chirp;
  ccdt_sequence_spec sequence;
  int n;
  int n_cp;
  double f_scs_hz;
  double f_c_hz;
  double velocity_kmh;
  double snr_db;
  int doppler_hypotheses;
  double freq_offset_span;  /* carrier offset drawn uniformly from +-span, in
                               subcarrier spacings */
  int clarke_paths;
  int trials;
  int threads;
  uint64_t seed;
  int errors_on_hits_only;
} ccdt_acquisition_config;

typedef struct ccdt_acquisition_stats {
  int trials;
  int misses;
  double p_md;
  double mean_te_s;
  double std_te_s;
  double mean_abs_tau_err;
  double mean_abs_delta_err;
} ccdt_acquisition_stats;

typedef struct ccdt_tracking_config {
  int waveform;
  ccdt_chirp_params chirp;
  ccdt_sequence_spec sequence;
  int n;
  int n_cp;
  double f_scs_hz;
  double f_c_hz;
  double target_powers[16];
  int num_targets;
  double snr_db;
  double p_fa;
  int noise_trials;
  int trials;
  int threads;
  uint64_t seed;
  double threshold_unit_noise;  /* <= 0 calibrates from noise-only trials */
} ccdt_tracking_config;

typedef struct ccdt_tracking_stats {
  int trials;
  int detections;
  double detection_rate;
  double threshold;
  double mean_abs_tau_err;
  double std_abs_tau_err;
  double mean_abs_delta_err;
  double std_abs_delta_err;
  double mean_te_s;
  double std_te_s;
} ccdt_tracking_stats;

CCDT_API void ccdt_acquisition_config_default(ccdt_acquisition_config* config);
CCDT_API void ccdt_tracking_config_default(ccdt_tracking_config* config);

CCDT_API ccdt_status ccdt_run_acquisition(const ccdt_acquisition_config* config,
                                          ccdt_acquisition_stats* stats);
CCDT_API ccdt_status ccdt_run_tracking(const ccdt_tracking_config* config,
                                       ccdt_tracking_stats* stats);

/* Noise-only calibration of the detection threshold at unit noise variance.
 * Feeding the result back through threshold_unit_noise amortizes the
 * calibration across an SNR sweep; the statistic scales linearly with the
 * noise amplitude, so the scaled threshold is exact at every SNR.
 */
CCDT_API ccdt_status ccdt_tracking_calibrate(const ccdt_tracking_config* config,
                                             double* threshold_unit_noise);

#ifdef __cplusplus
}
#endif

#endif /* CCDT_H */
