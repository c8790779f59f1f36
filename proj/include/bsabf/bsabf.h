/* SPDX-License-Identifier: Apache-2.0
 *
 * bsabf: beam-split-aware hybrid beamforming simulator
 * Copyright (C) 2026 The bsabf authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ------------------------------------------------------------------------
 *
 * C interface of the simulator. All objects are opaque handles created and
 * destroyed through this API. Every fallible call returns a bsabf_status; on
 * failure bsabf_last_error() describes the problem (per calling thread).
 */

#ifndef BSABF_BSABF_H_
#define BSABF_BSABF_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(BSABF_BUILDING_LIBRARY)
#    define BSABF_API __declspec(dllexport)
#  else
#    define BSABF_API __declspec(dllimport)
#  endif
#else
#  define BSABF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bsabf_status {
  BSABF_OK = 0,
  BSABF_ERR_INVALID_ARGUMENT = 1,
  BSABF_ERR_CONFIG = 2,
  BSABF_ERR_NUMERICAL = 3,
  BSABF_ERR_IO = 4,
  BSABF_ERR_INTERNAL = 5
} bsabf_status;

typedef enum bsabf_axis {
  BSABF_AXIS_SNR_DB = 0,
  BSABF_AXIS_BANDWIDTH_HZ = 1,
  BSABF_AXIS_NUM_USERS = 2
} bsabf_axis;

/* Method bits; index i of a rate array corresponds to bit (1u << i). */
#define BSABF_METHOD_OMP 0x1u
#define BSABF_METHOD_BSA_OMP 0x2u
#define BSABF_METHOD_SD_ORACLE 0x4u
#define BSABF_METHOD_FULLY_DIGITAL 0x8u
#define BSABF_METHOD_ALL 0xFu
#define BSABF_NUM_METHODS 4

typedef enum bsabf_format { BSABF_FORMAT_CSV = 0, BSABF_FORMAT_JSON = 1 } bsabf_format;

typedef struct bsabf_config bsabf_config;
typedef struct bsabf_sweep_result bsabf_sweep_result;

typedef struct bsabf_sweep_spec {
  bsabf_axis axis;
  const double* values; /* strictly monotone */
  size_t num_values;
  int trials;
  unsigned methods; /* BSABF_METHOD_* bits */
  uint64_t seed;
  int threads;     /* 0: hardware concurrency */
  int max_redraws; /* per trial; negative selects the default of 10 */
} bsabf_sweep_spec;

typedef struct bsabf_sweep_row {
  double axis_value;
  unsigned method; /* a single BSABF_METHOD_* bit */
  double mean_sum_rate;
  double std_sum_rate;
  double per_subcarrier_avg;
  int trials;
  uint64_t seed;
  char config_hash[17];
} bsabf_sweep_row;

BSABF_API const char* bsabf_version(void);
BSABF_API const char* bsabf_last_error(void);
BSABF_API const char* bsabf_status_string(bsabf_status status);

/* Name of a single method bit, or NULL. */
BSABF_API const char* bsabf_method_name(unsigned method_bit);
/* Comma-separated method names or "all". */
BSABF_API bsabf_status bsabf_parse_methods(const char* list, unsigned* out);
/* snr|bandwidth|users (or snr_db|bandwidth_hz|num_users). */
BSABF_API bsabf_status bsabf_parse_axis(const char* name, bsabf_axis* out);

/* Config handles. `profile` is "desk" or "paper" (NULL means desk). */
BSABF_API bsabf_status bsabf_config_create(const char* profile, bsabf_config** out);
BSABF_API bsabf_status bsabf_config_clone(const bsabf_config* cfg, bsabf_config** out);
BSABF_API void bsabf_config_destroy(bsabf_config* cfg);
BSABF_API bsabf_status bsabf_config_load_file(bsabf_config* cfg, const char* path);
BSABF_API bsabf_status bsabf_config_set(bsabf_config* cfg, const char* key, const char* value);
BSABF_API bsabf_status bsabf_config_validate(const bsabf_config* cfg);
BSABF_API bsabf_status bsabf_config_hash(const bsabf_config* cfg, uint64_t* out);

/* String getters follow one convention: `needed` receives the size including
 * the terminating NUL. With buf == NULL only `needed` is written. A buffer
 * that is too small receives a truncated string and the call returns
 * BSABF_ERR_INVALID_ARGUMENT. */
BSABF_API bsabf_status bsabf_config_get(const bsabf_config* cfg, const char* key, char* buf,
                                        size_t buf_len, size_t* needed);
/* Fully resolved config as "key = value" lines. */
BSABF_API bsabf_status bsabf_config_to_text(const bsabf_config* cfg, char* buf, size_t buf_len,
                                            size_t* needed);

/* Writes M subcarrier frequencies (Hz); `len` must be at least M. */
BSABF_API bsabf_status bsabf_subcarrier_frequencies(const bsabf_config* cfg, double* out,
                                                    size_t len);

/* Normalized array gain of the beamformer steered to `phi` at the 0-based
 * `subcarrier`, sampled on `points` uniform phi_bar values over [-1, 1]. */
BSABF_API bsabf_status bsabf_array_gain_curve(const bsabf_config* cfg, double phi, int subcarrier,
                                              size_t points, double* phi_bar_out,
                                              double* gain_out);

/* One Monte-Carlo trial. sum_rates[i] is the sum rate (bits/s/Hz summed over
 * users and subcarriers) of method bit i, NaN when not requested. */
BSABF_API bsabf_status bsabf_run_trial(const bsabf_config* cfg, uint64_t seed, unsigned methods,
                                       double sum_rates[BSABF_NUM_METHODS], int* redraws);

BSABF_API bsabf_status bsabf_run_sweep(const bsabf_config* cfg, const bsabf_sweep_spec* spec,
                                       bsabf_sweep_result** out);
BSABF_API void bsabf_sweep_result_destroy(bsabf_sweep_result* result);
BSABF_API size_t bsabf_sweep_result_num_rows(const bsabf_sweep_result* result);
BSABF_API int bsabf_sweep_result_redraws(const bsabf_sweep_result* result);
BSABF_API bsabf_status bsabf_sweep_result_row(const bsabf_sweep_result* result, size_t index,
                                              bsabf_sweep_row* out);
BSABF_API bsabf_status bsabf_sweep_result_write(const bsabf_sweep_result* result,
                                                bsabf_format format, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* BSABF_BSABF_H_ */
