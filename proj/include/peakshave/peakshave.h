/* Copyright 2026 The peakshave Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the peakshave scheduler. Every object is an opaque handle
 * owned by the caller and released with the matching *_free function.
 * Strings returned through `char**` out-parameters are heap allocated and
 * released with ps_string_free. On failure a function returns a non-zero
 * ps_status and ps_last_error() describes the problem for the calling
 * thread.
 */
#ifndef PEAKSHAVE_PEAKSHAVE_H_
#define PEAKSHAVE_PEAKSHAVE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(PEAKSHAVE_BUILDING_LIBRARY)
#define PS_API __declspec(dllexport)
#else
#define PS_API __declspec(dllimport)
#endif
#else
#define PS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ps_status {
  PS_OK = 0,
  PS_VALIDATION = 1,      /* malformed or invalid input, failed verification */
  PS_INFEASIBLE = 2,
  PS_CAP_EXCEEDED = 3,    /* oracle refused an instance with C*T above its cap */
  PS_INTERNAL = 4,
  PS_INVALID_ARGUMENT = 5 /* null handle, out-of-range index */
} ps_status;

typedef enum ps_objective {
  PS_BASIC = 0,
  PS_MAXIMAL = 1,
  PS_ABSOLUTE = 2,
  PS_FLUCTUATION = 3
} ps_objective;

typedef enum ps_base_profile { PS_BASE_ZERO = 0, PS_BASE_DIURNAL = 1 } ps_base_profile;

typedef struct ps_instance ps_instance;
typedef struct ps_solution ps_solution;

typedef struct ps_options {
  ps_objective objective;
  double snap_tol;      /* integrality snap for LP values */
  double lp_tol;        /* simplex feasibility and optimality tolerance */
  size_t oracle_cap;    /* largest C*T the exhaustive oracle accepts */
  int trace;            /* non-zero: include per-move trace in solve reports */
} ps_options;

typedef struct ps_gen_params {
  size_t converters;
  size_t horizon;
  uint64_t seed;
  ps_base_profile base_load;
  int positive_only;    /* E_c drawn from {1,2,3} only */
  int force_run;        /* every converter has to run at least once */
} ps_gen_params;

PS_API const char* ps_version(void);
PS_API const char* ps_status_string(ps_status status);
PS_API const char* ps_last_error(void);
PS_API void ps_string_free(char* s);

PS_API void ps_options_default(ps_options* options);
PS_API int ps_parse_objective(const char* name, ps_objective* out);

/* Instances */
PS_API ps_status ps_instance_parse(const char* json, ps_instance** out);
PS_API ps_status ps_instance_generate(const ps_gen_params* params, ps_instance** out);
PS_API ps_status ps_instance_to_json(const ps_instance* inst, char** out);
/* Writes the validation report; returns PS_VALIDATION if it did not pass. */
PS_API ps_status ps_instance_validate(const ps_instance* inst, char** report);
PS_API size_t ps_instance_converters(const ps_instance* inst);
PS_API size_t ps_instance_horizon(const ps_instance* inst);
PS_API void ps_instance_free(ps_instance* inst);

/* Approximate solve */
PS_API ps_status ps_solve(const ps_instance* inst, const ps_options* options,
                          ps_solution** out);
PS_API double ps_solution_objective(const ps_solution* sol);
PS_API double ps_solution_lp_bound(const ps_solution* sol);
PS_API double ps_solution_gap(const ps_solution* sol);
/* Returns 0 or 1, or -1 for an out-of-range cell. */
PS_API int ps_solution_entry(const ps_solution* sol, size_t converter, size_t t);
PS_API ps_status ps_solution_report(const ps_solution* sol, char** out);
PS_API void ps_solution_free(ps_solution* sol);

/* Exhaustive optimum; report is the JSON oracle result. */
PS_API ps_status ps_oracle(const ps_instance* inst, const ps_options* options,
                           char** report);
/* `schedule_json` is a matrix or a document with a "schedule" member.
 * Returns PS_OK iff feasibility and every certificate hold. */
PS_API ps_status ps_verify(const ps_instance* inst, const char* schedule_json,
                           const ps_options* options, char** report);
/* Returns PS_OK iff the approximate objective is within the error bound of
 * the optimum. */
PS_API ps_status ps_compare(const ps_instance* inst, const ps_options* options,
                            char** report);
PS_API ps_status ps_compare_batch(const ps_gen_params* params, size_t count,
                                  unsigned threads, const ps_options* options,
                                  char** report);
/* The relaxation as LP text. */
PS_API ps_status ps_dump_lp(const ps_instance* inst, const ps_options* options,
                            char** out);

#ifdef __cplusplus
}
#endif

#endif /* PEAKSHAVE_PEAKSHAVE_H_ */
