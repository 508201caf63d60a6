// Copyright 2026 The GSC Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


/* C interface to the GSC simulation library.
 *
 * Every call returns a gsc_status. On failure, gsc_last_error() holds a
 * message for the calling thread until its next failing call. Strings and
 * buffers returned through out-parameters are owned by the caller and
 * released with gsc_free(). Handles are released with their _free function;
 * passing NULL to any _free function is a no-op. */

#ifndef GSC_GSC_H
#define GSC_GSC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GSC_API __declspec(dllexport)
#else
#define GSC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gsc_status {
  GSC_OK = 0,
  GSC_E_INVALID_ARGUMENT = 1,
  GSC_E_PARSE = 2,
  GSC_E_TRUNCATED = 3,
  GSC_E_BAD_MAGIC = 4,
  GSC_E_VERSION_MISMATCH = 5,
  GSC_E_DIMENSION_MISMATCH = 6,
  GSC_E_BUDGET_INFEASIBLE = 7,
  GSC_E_ADAPTER = 8,
  GSC_E_PROTOCOL = 9,
  GSC_E_TIMEOUT = 10,
  GSC_E_IO = 11,
  GSC_E_RANK_DEFICIENT = 12,
  GSC_E_CORRUPT_STREAM = 13,
  GSC_E_VALIDATION = 14,
  GSC_E_CAPABILITY = 15,
  GSC_E_INTERNAL = 100
} gsc_status;

GSC_API const char* gsc_version(void);
GSC_API const char* gsc_status_name(gsc_status status);
GSC_API const char* gsc_last_error(void);
GSC_API void gsc_free(void* ptr);

/* ---- LDPC codes ---------------------------------------------------------- */

typedef struct gsc_code gsc_code;

/* "default", "small", a canonical "qc:..." id, or an alist file path. */
GSC_API gsc_status gsc_code_load(const char* code_id, gsc_code** out);
GSC_API gsc_status gsc_code_from_alist(const char* alist_text, gsc_code** out);
GSC_API void gsc_code_free(gsc_code* code);
GSC_API size_t gsc_code_n(const gsc_code* code);
GSC_API size_t gsc_code_k(const gsc_code* code);
/* Canonical id; valid while the handle lives. */
GSC_API const char* gsc_code_id(const gsc_code* code);
GSC_API gsc_status gsc_code_to_alist(const gsc_code* code, char** out);

/* One bit (0/1) per byte. `message` holds k entries, `codeword` n. */
GSC_API gsc_status gsc_code_encode(const gsc_code* code, const uint8_t* message,
                                   uint8_t* codeword);
/* Non-zero in *ok when codeword satisfies every parity check. */
GSC_API gsc_status gsc_code_check(const gsc_code* code, const uint8_t* codeword, int* ok);
/* Min-sum decoding of n LLRs (positive favors 0) into k message bits.
 * `converged` and `iterations` may be NULL. */
GSC_API gsc_status gsc_code_decode(const gsc_code* code, const double* llrs, int max_iters,
                                   uint8_t* message, int* converged, int* iterations);

/* ---- Bit-error-rate measurement ----------------------------------------- */

typedef struct gsc_ber_point {
  double snr_db; /* NaN when noiseless */
  uint64_t info_bits;
  uint64_t bit_errors;
  uint64_t frames;
  uint64_t frame_errors;
  double ber;
  double bler;
} gsc_ber_point;

/* Es/N0 in dB; NaN selects the noiseless channel. `modulation` is "bpsk"
 * or "qpsk" (NULL = bpsk). threads = 0 uses every hardware thread. */
GSC_API gsc_status gsc_ber_measure(const gsc_code* code, double snr_db, const char* modulation,
                                   uint64_t info_bits, uint64_t seed, unsigned threads,
                                   gsc_ber_point* out);
/* Sweep as CSV: snr_db,code_id,modulation,info_bits,bit_errors,ber,bler. */
GSC_API gsc_status gsc_ber_sweep_csv(const gsc_code* code, const double* snr_db, size_t count,
                                     const char* modulation, uint64_t info_bits, uint64_t seed,
                                     unsigned threads, char** csv);

/* ---- Metrics ------------------------------------------------------------- */

GSC_API gsc_status gsc_nmse(const double* x, const double* x_hat, size_t count, double* out);
GSC_API gsc_status gsc_kl_divergence(const double* p_samples, size_t p_count,
                                     const double* q_samples, size_t q_count, int bins,
                                     double* out);
/* Gray image, row-major, values in [0, 255]; at least 32x32. */
GSC_API gsc_status gsc_piqe(const double* pixels, int width, int height, double* out);
GSC_API gsc_status gsc_cer(const char* reference, const char* hypothesis, double* out);

/* ---- Adapters ------------------------------------------------------------ */

/* Builtin adapter names, one per line. */
GSC_API gsc_status gsc_adapters_list(char** out);
/* Handshake plus a conformance round on a synthetic 64x64 frame. *report
 * receives a JSON object describing the adapter and each check. */
GSC_API gsc_status gsc_adapter_check(const char* spec, char** report);
/* Serves a builtin adapter over file descriptors; *exit_code gets the
 * process status to exit with. */
GSC_API gsc_status gsc_adapter_serve(const char* name, int in_fd, int out_fd, int* exit_code);

/* ---- Experiments --------------------------------------------------------- */

typedef struct gsc_experiment gsc_experiment;
typedef struct gsc_results gsc_results;
typedef void (*gsc_progress_fn)(const char* message, void* user);

GSC_API gsc_status gsc_experiment_load(const char* path, gsc_experiment** out);
/* Relative paths in `json` resolve against `base_dir` (may be NULL). */
GSC_API gsc_status gsc_experiment_parse(const char* json, const char* base_dir,
                                        gsc_experiment** out);
GSC_API void gsc_experiment_free(gsc_experiment* exp);
GSC_API gsc_status gsc_experiment_echo(const gsc_experiment* exp, char** json);
GSC_API gsc_status gsc_experiment_set_output(gsc_experiment* exp, const char* dir);
/* Output directory; valid until the next set_output or free. */
GSC_API const char* gsc_experiment_output(const gsc_experiment* exp);

/* first_cell_only != 0 runs only the first budget and seed per method.
 * `progress` may be NULL and is called from worker threads. */
GSC_API gsc_status gsc_experiment_run(const gsc_experiment* exp, int first_cell_only,
                                      gsc_progress_fn progress, void* user, gsc_results** out);
GSC_API void gsc_results_free(gsc_results* results);
GSC_API size_t gsc_results_raw_rows(const gsc_results* results);
GSC_API size_t gsc_results_rows(const gsc_results* results);
GSC_API size_t gsc_results_failed_cells(const gsc_results* results);
GSC_API gsc_status gsc_results_csv(const gsc_results* results, char** csv);
GSC_API gsc_status gsc_results_raw_csv(const gsc_results* results, char** csv);
/* results.csv, raw/, provenance.json, plots/ and config.echo.json into the
 * experiment's output directory. */
GSC_API gsc_status gsc_results_write(const gsc_experiment* exp, const gsc_results* results);

typedef enum gsc_report_format {
  GSC_REPORT_TEXT = 0,
  GSC_REPORT_CSV = 1
} gsc_report_format;

/* Table from <dir>/results.csv: methods x budgets, semantic-NMSE. */
GSC_API gsc_status gsc_report(const char* results_dir, gsc_report_format format, char** out);
/* Regenerates <dir>/plots/{semantic_nmse,piqe}.svg from results.csv. */
GSC_API gsc_status gsc_report_plots(const char* results_dir);

#ifdef __cplusplus
}
#endif

#endif /* GSC_GSC_H */
