/* Copyright 2026 The CCQG Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface of the ccqg library: pipeline commands, the complexity
 * estimator's normalizer, and question generation from a trained checkpoint.
 *
 * Functions returning ccqg_status leave a message retrievable with
 * ccqg_last_error() on failure. Handles are not thread-safe for mutation;
 * a loaded model may be used for generation from several threads.
 */

#ifndef CCQG_CCQG_H_
#define CCQG_CCQG_H_

#include <stddef.h>

#if defined(_WIN32)
#define CCQG_API __declspec(dllexport)
#else
#define CCQG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ccqg_status {
  CCQG_OK = 0,
  CCQG_USAGE_ERROR = 1,
  CCQG_DATA_ERROR = 2,
  CCQG_NUMERIC_ERROR = 3,
  CCQG_INTERNAL_ERROR = 4
} ccqg_status;

typedef enum ccqg_complexity { CCQG_SIMPLE = 0, CCQG_COMPLEX = 1 } ccqg_complexity;

typedef struct ccqg_config ccqg_config;
typedef struct ccqg_result ccqg_result;
typedef struct ccqg_normalizer ccqg_normalizer;
typedef struct ccqg_model ccqg_model;

CCQG_API const char* ccqg_version(void);
/* Message of the last failed call on this thread ("" if none). */
CCQG_API const char* ccqg_last_error(void);

/* ---- configuration ---- */

CCQG_API ccqg_status ccqg_config_create(ccqg_config** out);
/* Flat "key = value" file. */
CCQG_API ccqg_status ccqg_config_load(const char* path, ccqg_config** out);
/* Unknown keys are rejected with CCQG_USAGE_ERROR. */
CCQG_API ccqg_status ccqg_config_set(ccqg_config* config, const char* key, const char* value);
/* Copies the value into buf (truncated to len - 1); *found is 0 when unset. */
CCQG_API ccqg_status ccqg_config_get(const ccqg_config* config, const char* key, char* buf,
                                     size_t len, int* found);
CCQG_API void ccqg_config_destroy(ccqg_config* config);

/* ---- pipeline commands ---- */

CCQG_API int ccqg_is_command(const char* name);
/* Space-separated command names. */
CCQG_API const char* ccqg_command_names(void);
CCQG_API ccqg_status ccqg_run(const char* command, const ccqg_config* config, ccqg_result** out);
/* "key=value ..." metrics of a finished command. */
CCQG_API const char* ccqg_result_metrics(const ccqg_result* result);
/* Extra output lines, newline-terminated ("" if none). */
CCQG_API const char* ccqg_result_output(const ccqg_result* result);
CCQG_API void ccqg_result_destroy(ccqg_result* result);

/* ---- complexity estimator ---- */

CCQG_API ccqg_status ccqg_normalizer_load(const char* path, ccqg_normalizer** out);
CCQG_API double ccqg_normalizer_lambda(const ccqg_normalizer* normalizer);
/* raw holds the five raw features; writes the score and the label. */
CCQG_API ccqg_status ccqg_normalizer_score(const ccqg_normalizer* normalizer,
                                           const double raw[5], double* score,
                                           ccqg_complexity* label);
CCQG_API void ccqg_normalizer_destroy(ccqg_normalizer* normalizer);

/* ---- generation ---- */

CCQG_API ccqg_status ccqg_model_load(const char* checkpoint_dir, ccqg_model** out);
/* Writes the generated question (space-separated tokens) into buf and the
 * chosen expert into *expert (may be NULL). *required, when non-NULL, receives
 * the buffer size needed including the terminator. */
CCQG_API ccqg_status ccqg_model_generate(const ccqg_model* model, const char* passage,
                                         const char* answer, ccqg_complexity complexity,
                                         char* buf, size_t len, size_t* required,
                                         size_t* expert);
CCQG_API void ccqg_model_destroy(ccqg_model* model);

#ifdef __cplusplus
}
#endif

#endif /* CCQG_CCQG_H_ */
