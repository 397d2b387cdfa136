/* Copyright (C) 2026 The parentt Authors */
/* SPDX-License-Identifier: Apache-2.0 */

/* Stable C surface of libparentt. Every call returns a parentt_status; on failure the
 * message is available from parentt_last_error() on the calling thread. Strings handed
 * out through char** are owned by the caller and released with parentt_string_free. */

#ifndef PARENTT_PARENTT_H
#define PARENTT_PARENTT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define PARENTT_API __attribute__((visibility("default")))
#else
#define PARENTT_API
#endif

typedef enum parentt_status {
  PARENTT_OK = 0,
  PARENTT_E_INVALID_ARGUMENT = 1, /* malformed or out-of-range input */
  PARENTT_E_CONFIG = 2,           /* parameters that cannot form a valid configuration */
  PARENTT_E_IO = 3,               /* file could not be read or written */
  PARENTT_E_VERIFY = 4,           /* a result disagreed with its oracle */
  PARENTT_E_SCHEDULE = 5,         /* the simulator caught a schedule or capacity violation */
  PARENTT_E_INTERNAL = 6
} parentt_status;

typedef enum parentt_engine {
  PARENTT_ENGINE_REFERENCE = 0, /* in-order NTT per channel */
  PARENTT_ENGINE_SIMULATOR = 1  /* cycle-level pipeline per channel */
} parentt_engine;

typedef enum parentt_sim_mode {
  PARENTT_SIM_CASCADE = 0,
  PARENTT_SIM_DUAL_CHAIN = 1,
  PARENTT_SIM_BASELINE = 2
} parentt_sim_mode;

PARENTT_API const char* parentt_version(void);
/* Message of the last failed call on this thread, "" if none. */
PARENTT_API const char* parentt_last_error(void);
PARENTT_API const char* parentt_status_name(parentt_status status);
PARENTT_API void parentt_string_free(char* s);

/* ---- prime search ---- */

typedef struct parentt_prime_query {
  unsigned v;
  uint64_t n;
  unsigned mu;
  int pot_terms;
  unsigned n_beta;
} parentt_prime_query;

PARENTT_API parentt_status parentt_primes_json(const parentt_prime_query* query, char** out_json);
PARENTT_API parentt_status parentt_primes_count(const parentt_prime_query* query, size_t* out_count);
/* Runs all eight published configurations. */
PARENTT_API parentt_status parentt_table3_json(char** out_json);

/* ---- RNS context and polynomials ---- */

typedef struct parentt_context parentt_context;
typedef struct parentt_poly parentt_poly;

typedef struct parentt_context_config {
  unsigned v;
  unsigned t;
  unsigned t_prime; /* 0: t' = t */
  uint64_t n;
  unsigned mu;      /* 0: 2v */
  int pot_terms;    /* 0: 4 */
  unsigned n_beta;  /* 0: library default */
  const uint64_t* primes; /* optional explicit moduli */
  size_t num_primes;
} parentt_context_config;

PARENTT_API parentt_status parentt_context_create(const parentt_context_config* cfg, parentt_context** out);
PARENTT_API void parentt_context_destroy(parentt_context* ctx);
PARENTT_API parentt_status parentt_context_json(const parentt_context* ctx, char** out_json);
PARENTT_API uint64_t parentt_context_n(const parentt_context* ctx);
PARENTT_API size_t parentt_context_q_bits(const parentt_context* ctx);

/* Coefficient text: n lines of hex, most significant nibble first. */
PARENTT_API parentt_status parentt_poly_read_file(const parentt_context* ctx, const char* path, parentt_poly** out);
PARENTT_API parentt_status parentt_poly_parse(const parentt_context* ctx, const char* text, parentt_poly** out);
PARENTT_API parentt_status parentt_poly_write_file(const parentt_poly* p, const char* path);
PARENTT_API parentt_status parentt_poly_format(const parentt_poly* p, char** out_text);
/* Uniform coefficients in [0, q), reproducible from the seed. */
PARENTT_API parentt_status parentt_poly_random(const parentt_context* ctx, uint64_t seed, parentt_poly** out);
PARENTT_API void parentt_poly_destroy(parentt_poly* p);
PARENTT_API int parentt_poly_equal(const parentt_poly* a, const parentt_poly* b);
/* FNV-1a 64 over the hex text. */
PARENTT_API parentt_status parentt_poly_digest(const parentt_poly* p, uint64_t* out);

PARENTT_API parentt_status parentt_multiply(const parentt_context* ctx, const parentt_poly* a, const parentt_poly* b,
                                            parentt_engine engine, parentt_poly** out);
/* O(n^2) wide-integer oracle. */
PARENTT_API parentt_status parentt_schoolbook(const parentt_context* ctx, const parentt_poly* a,
                                              const parentt_poly* b, parentt_poly** out);

/* ---- pipeline simulation ---- */

typedef struct parentt_sim_config {
  uint64_t n;
  uint64_t q;        /* 0: smallest prime with 2n | q - 1 */
  unsigned t_pipe;   /* pipeline registers, spread over the 2m+1 PEs */
  parentt_sim_mode mode;
  size_t blocks;     /* 0: 1 */
  uint64_t idle_cycles;
  uint64_t seed;
  int add_baseline;  /* also run the shuffled design and report the gap */
  const char* trace_csv; /* optional CSV path */
  /* Optional per-DSD register capacities replacing the default of two register sets,
   * e.g. {"ntt.dsd0"} / {3}. Undersized buffers make the run fail with E_SCHEDULE. */
  const char* const* capacity_ids;
  const uint64_t* capacity_values;
  size_t num_capacities;
} parentt_sim_config;

/* CycleReport JSON. Outputs are checked against the in-order reference; a mismatch
 * returns PARENTT_E_VERIFY, a caught violation PARENTT_E_SCHEDULE. */
PARENTT_API parentt_status parentt_simulate_json(const parentt_sim_config* cfg, char** out_json);
PARENTT_API parentt_status parentt_schedule_json(unsigned m, char** out_json);

/* ---- benchmark ---- */

typedef struct parentt_bench_config {
  const uint64_t* sizes;
  size_t num_sizes;
  unsigned reps;     /* 0: 3 */
  uint64_t seed;
  unsigned spot_checks; /* oracle coefficients checked per product, 0: 16 */
} parentt_bench_config;

PARENTT_API parentt_status parentt_bench_json(const parentt_bench_config* cfg, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* PARENTT_PARENTT_H */
