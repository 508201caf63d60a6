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


/* Exercises the shared library through its C header only. */

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>
#include <unistd.h>

#include "gsc/gsc.h"

static int failures = 0;

#define EXPECT(cond)                                                \
  do {                                                              \
    if (!(cond)) {                                                  \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                   \
    }                                                               \
  } while (0)

static void on_progress(const char* message, void* user) {
  (void)message;
  ++*(int*)user;
}

static void test_codes(void) {
  gsc_code* code = NULL;
  EXPECT(gsc_code_load("small", &code) == GSC_OK);
  EXPECT(gsc_code_n(code) == 64);
  EXPECT(gsc_code_k(code) == 32);
  EXPECT(strncmp(gsc_code_id(code), "qc:z=8", 6) == 0);

  uint8_t msg[32], word[64], back[32];
  for (int i = 0; i < 32; ++i) msg[i] = (uint8_t)((i * 7 + 3) % 5 == 0);
  EXPECT(gsc_code_encode(code, msg, word) == GSC_OK);
  int ok = 0;
  EXPECT(gsc_code_check(code, word, &ok) == GSC_OK && ok);
  word[5] ^= 1;
  EXPECT(gsc_code_check(code, word, &ok) == GSC_OK && !ok);
  word[5] ^= 1;

  double llr[64];
  for (int i = 0; i < 64; ++i) llr[i] = word[i] ? -8.0 : 8.0;
  llr[9] = -llr[9];
  int converged = 0;
  EXPECT(gsc_code_decode(code, llr, 25, back, &converged, NULL) == GSC_OK);
  EXPECT(converged);
  EXPECT(memcmp(msg, back, 32) == 0);

  char* alist = NULL;
  EXPECT(gsc_code_to_alist(code, &alist) == GSC_OK);
  gsc_code* copy = NULL;
  EXPECT(gsc_code_from_alist(alist, &copy) == GSC_OK);
  EXPECT(gsc_code_k(copy) == 32);
  gsc_free(alist);
  gsc_code_free(copy);

  copy = NULL;
  EXPECT(gsc_code_from_alist("6 3\n2 3\n1 1\n", &copy) == GSC_E_PARSE);
  EXPECT(copy == NULL);
  EXPECT(strstr(gsc_last_error(), "alist") != NULL);
  EXPECT(gsc_code_load("/nonexistent.alist", &copy) == GSC_E_IO);
  EXPECT(gsc_code_encode(NULL, msg, word) == GSC_E_INVALID_ARGUMENT);

  gsc_ber_point pt;
  EXPECT(gsc_ber_measure(code, NAN, NULL, 5000, 1, 1, &pt) == GSC_OK);
  EXPECT(pt.bit_errors == 0 && pt.ber == 0.0 && isnan(pt.snr_db));
  EXPECT(gsc_ber_measure(code, 0.0, "qpsk", 5000, 1, 1, &pt) == GSC_OK);
  EXPECT(pt.frames == 157);
  EXPECT(gsc_ber_measure(code, 0.0, "8psk", 5000, 1, 1, &pt) == GSC_E_INVALID_ARGUMENT);

  double snrs[2] = {NAN, 10.0};
  char* csv = NULL;
  EXPECT(gsc_ber_sweep_csv(code, snrs, 2, "bpsk", 2000, 1, 0, &csv) == GSC_OK);
  EXPECT(strncmp(csv, "snr_db,code_id,modulation,info_bits,bit_errors,ber,bler\nnoiseless,", 66) == 0);
  gsc_free(csv);
  gsc_code_free(code);
}

static void test_metrics(void) {
  double x[2] = {1, 0}, y[2] = {0, 1}, v = -1;
  EXPECT(gsc_nmse(x, y, 2, &v) == GSC_OK && v == 2.0);
  double zero[2] = {0, 0};
  EXPECT(gsc_nmse(zero, y, 2, &v) == GSC_E_INVALID_ARGUMENT);
  EXPECT(gsc_kl_divergence(x, 2, x, 2, 64, &v) == GSC_OK && fabs(v) < 1e-12);
  EXPECT(gsc_cer("kitten", "sitting", &v) == GSC_OK && fabs(v - 0.5) < 1e-12);

  double* img = malloc(sizeof(double) * 64 * 64);
  for (int i = 0; i < 64 * 64; ++i) img[i] = 100.0;
  EXPECT(gsc_piqe(img, 64, 64, &v) == GSC_OK && v == 100.0);
  EXPECT(gsc_piqe(img, 16, 16, &v) == GSC_E_INVALID_ARGUMENT);
  free(img);
}

static void test_adapters(void) {
  char* names = NULL;
  EXPECT(gsc_adapters_list(&names) == GSC_OK);
  EXPECT(strstr(names, "depth-proxy") != NULL);
  gsc_free(names);
  char* report = NULL;
  EXPECT(gsc_adapter_check("identity", &report) == GSC_OK);
  EXPECT(report && strstr(report, "identity") != NULL);
  gsc_free(report);
  report = NULL;
  EXPECT(gsc_adapter_check("no-such-adapter", &report) != GSC_OK);
  gsc_free(report);
}

static void test_experiment(void) {
  char json[1024];
  snprintf(json, sizeof json,
           "{\"name\": \"c\", \"dataset\": \"road\", \"budgets\": [2000, 4000],"
           " \"methods\": [{\"label\": \"caption\", \"kind\": \"gsc\","
           " \"extractor\": \"captioner\", \"generator\": \"identity\"}]}");
  gsc_experiment* exp = NULL;
  EXPECT(gsc_experiment_parse(json, GSC_FIXTURE_DIR, &exp) == GSC_OK);
  char* echo = NULL;
  EXPECT(gsc_experiment_echo(exp, &echo) == GSC_OK);
  EXPECT(strstr(echo, "\"seeds\"") != NULL);
  gsc_free(echo);

  int calls = 0;
  gsc_results* res = NULL;
  EXPECT(gsc_experiment_run(exp, 0, on_progress, &calls, &res) == GSC_OK);
  EXPECT(calls == 2);
  EXPECT(gsc_results_raw_rows(res) == 4);
  EXPECT(gsc_results_rows(res) == 2);
  EXPECT(gsc_results_failed_cells(res) == 0);
  char* csv = NULL;
  EXPECT(gsc_results_csv(res, &csv) == GSC_OK);
  EXPECT(strncmp(csv, "scenario,method,budget_bytes", 28) == 0);
  gsc_free(csv);

  char dir[256];
  snprintf(dir, sizeof dir, "/tmp/gsc_capi_test_%d", (int)getpid());
  EXPECT(gsc_experiment_set_output(exp, dir) == GSC_OK);
  EXPECT(strcmp(gsc_experiment_output(exp), dir) == 0);
  EXPECT(gsc_results_write(exp, res) == GSC_OK);
  char* table = NULL;
  EXPECT(gsc_report(dir, GSC_REPORT_CSV, &table) == GSC_OK);
  EXPECT(table && strstr(table, "caption") != NULL);
  gsc_free(table);
  gsc_results_free(res);
  gsc_experiment_free(exp);

  EXPECT(gsc_experiment_parse("{\"name\": 1}", NULL, &exp) == GSC_E_VALIDATION);
  EXPECT(strstr(gsc_last_error(), "$.name") != NULL);
  EXPECT(gsc_experiment_parse("{", NULL, &exp) == GSC_E_PARSE);
  EXPECT(gsc_experiment_load("/nonexistent.json", &exp) == GSC_E_IO);
  EXPECT(strcmp(gsc_status_name(GSC_E_BUDGET_INFEASIBLE), "budget_infeasible") == 0);
}

int main(void) {
  EXPECT(strcmp(gsc_version(), "0.1.0") == 0);
  test_codes();
  test_metrics();
  test_adapters();
  test_experiment();
  if (failures) {
    fprintf(stderr, "%d expectation(s) failed\n", failures);
    return 1;
  }
  printf("capi_test: all expectations met\n");
  return 0;
}
