/* Copyright 2026 The nafcode Authors
 * SPDX-License-Identifier: Apache-2.0 */

#ifndef NAFCODE_NAFCODE_H
#define NAFCODE_NAFCODE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define NAFCODE_API __declspec(dllexport)
#else
#define NAFCODE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nafcode_status {
  NAFCODE_OK = 0,
  NAFCODE_ERR_INVALID_ARGUMENT = 1,
  NAFCODE_ERR_CONFIG = 2,
  NAFCODE_ERR_BUDGET = 3,
  NAFCODE_ERR_IO = 4,
  NAFCODE_ERR_INSUFFICIENT_DATA = 5,
  NAFCODE_ERR_INTERNAL = 6
} nafcode_status;

typedef struct nafcode_curve nafcode_curve;
typedef struct nafcode_config nafcode_config;
typedef struct nafcode_table nafcode_table;

/* Message of the last failing call on this thread; never NULL. */
NAFCODE_API const char* nafcode_last_error(void);
NAFCODE_API const char* nafcode_version(void);

/* Tradeoff curves. */
NAFCODE_API nafcode_status nafcode_dmt_rayleigh(int m, int n, nafcode_curve** out);
NAFCODE_API nafcode_status nafcode_dmt_product(int m, int n, int l, nafcode_curve** out);
NAFCODE_API nafcode_status nafcode_dmt_product_oracle(int m, int n, int l, double r, double* d);
/* relay_dims holds 3 * relays ints (m, n, l per relay) or is NULL. */
NAFCODE_API nafcode_status nafcode_dmt_naf_bound(int ns, int nr, int nd, int relays,
                                                 const int* relay_dims, nafcode_curve** out);
NAFCODE_API nafcode_status nafcode_dmt_max_diversity(int ns, int nr, int nd, int relays,
                                                     double* lower, double* upper, int* equality);
NAFCODE_API size_t nafcode_curve_size(const nafcode_curve* c);
NAFCODE_API nafcode_status nafcode_curve_vertex(const nafcode_curve* c, size_t i, double* r,
                                                double* d);
NAFCODE_API nafcode_status nafcode_curve_eval(const nafcode_curve* c, double r, double* d);
NAFCODE_API nafcode_status nafcode_curve_write_csv(const nafcode_curve* c, const char* path);
NAFCODE_API void nafcode_curve_free(nafcode_curve* c);

/* Simulation configuration: file and/or key overrides, then finalize. */
NAFCODE_API nafcode_status nafcode_config_new(nafcode_config** out);
NAFCODE_API nafcode_status nafcode_config_load(nafcode_config* cfg, const char* path);
NAFCODE_API nafcode_status nafcode_config_parse(nafcode_config* cfg, const char* text);
NAFCODE_API nafcode_status nafcode_config_set(nafcode_config* cfg, const char* key,
                                              const char* value);
/* Checks required keys and consistency. Called implicitly by the runners. */
NAFCODE_API nafcode_status nafcode_config_finalize(nafcode_config* cfg);
/* 10 log10(bits per channel use), subtracted from SNR for Eb/N0 output. */
NAFCODE_API nafcode_status nafcode_config_ebn0_offset(nafcode_config* cfg, double* offset_db);
NAFCODE_API void nafcode_config_free(nafcode_config* cfg);

typedef struct nafcode_fer_row {
  double snr_db;
  uint64_t trials;
  uint64_t frame_errors;
  double fer;
  double ci_low;
  double ci_high;
} nafcode_fer_row;

NAFCODE_API nafcode_status nafcode_run_fer(nafcode_config* cfg, nafcode_table** out);
/* rate < 0 uses the config's rate_bits_pcu. */
NAFCODE_API nafcode_status nafcode_run_outage(nafcode_config* cfg, double rate,
                                              nafcode_table** out);
NAFCODE_API size_t nafcode_table_rows(const nafcode_table* t);
NAFCODE_API nafcode_status nafcode_table_row(const nafcode_table* t, size_t i,
                                             nafcode_fer_row* row);
NAFCODE_API nafcode_status nafcode_table_write_csv(const nafcode_table* t, const char* path,
                                                   double snr_offset_db);
NAFCODE_API nafcode_status nafcode_table_read_csv(const char* path, nafcode_table** out);
NAFCODE_API nafcode_status nafcode_table_slope(const nafcode_table* t, double fer_hi,
                                               double fer_lo, double* slope);
NAFCODE_API void nafcode_table_free(nafcode_table* t);

/* Codes. */
typedef struct nafcode_code_info {
  int blocks;
  int ns;
  int symbols;
  int length;
  double scale;
  double det_multiplier;
} nafcode_code_info;

NAFCODE_API int nafcode_code_count(void);
NAFCODE_API const char* nafcode_code_name(int index);
NAFCODE_API nafcode_status nafcode_code_info_get(const char* name, nafcode_code_info* info);
NAFCODE_API nafcode_status nafcode_code_export_generator(const char* name, const char* path);

typedef struct nafcode_audit_report {
  double min_det2;
  int min_rank;
  int full_rank;
  uint64_t evaluated;
  uint64_t rank_deficient;
  double max_rounding_residual;
} nafcode_audit_report;

/* samples == 0 requests exhaustive enumeration bounded by budget. */
NAFCODE_API nafcode_status nafcode_audit(const char* code, const char* constellation_kind, int m,
                                         uint64_t samples, uint64_t seed, uint64_t budget,
                                         nafcode_audit_report* out);

#ifdef __cplusplus
}
#endif

#endif /* NAFCODE_NAFCODE_H */
