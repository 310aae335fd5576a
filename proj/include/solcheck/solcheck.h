/* Copyright 2026 The solcheck Authors. Licensed under the Apache License, Version 2.0. */

#ifndef SOLCHECK_SOLCHECK_H_
#define SOLCHECK_SOLCHECK_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(SOLCHECK_BUILDING)
#define SC_API __declspec(dllexport)
#else
#define SC_API __declspec(dllimport)
#endif
#else
#define SC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sc_status {
  SC_OK = 0,
  SC_E_UNKNOWN_IDENTIFIER = 1,
  SC_E_SYNTAX = 2,
  SC_E_ARITY = 3,
  SC_E_DOMAIN = 4,
  SC_E_NOT_POSITIVE_DEFINITE = 5,
  SC_E_ORDER_EXHAUSTED = 6,
  SC_E_SLOT = 7,
  SC_E_DIMENSION = 8,
  SC_E_MISSING_POTENTIAL = 9,
  SC_E_DEGENERATE_PLANE = 10,
  SC_E_PARSE = 11,
  SC_E_VALIDATION = 12,
  SC_E_EMPTY_DOMAIN = 13,
  SC_E_NOT_APPLICABLE = 14,
  SC_E_UNKNOWN_TENSOR = 15,
  SC_E_UNKNOWN_CHECK = 16,
  SC_E_UNKNOWN_MODEL = 17,
  SC_E_IO = 18,
  SC_E_INVALID_ARGUMENT = 19,
  SC_E_INTERNAL = 20
} sc_status;

typedef enum sc_format { SC_FORMAT_TEXT = 0, SC_FORMAT_JSON = 1 } sc_format;

typedef enum sc_row_status {
  SC_ROW_EVALUATED = 0,
  SC_ROW_NOT_APPLICABLE = 1,
  SC_ROW_NOT_A_SOLITON = 2,
  SC_ROW_ERROR = 3
} sc_row_status;

typedef struct sc_model sc_model;
typedef struct sc_report sc_report;
typedef struct sc_classification sc_classification;

typedef struct sc_run_options {
  size_t points;    /* >= 1 */
  uint64_t seed;
  double tolerance; /* > 0 */
  unsigned threads; /* 0 = hardware concurrency */
} sc_run_options;

/* Borrowed views; strings live as long as the report. */
typedef struct sc_report_row {
  const char* check_id;
  const char* model;
  sc_row_status status;
  size_t points;
  double max_residual;
  double mean_residual;
  int pass; /* 1, 0, or -1 when the row was not evaluated */
  double tolerance;
  const char* message;
} sc_report_row;

/* Library version string, static storage. */
SC_API const char* sc_version(void);
SC_API const char* sc_status_name(sc_status status);
/* Message of the last failure on the calling thread; empty after success. */
SC_API const char* sc_last_error(void);
SC_API void sc_default_options(sc_run_options* out);

/* Curvature sign-convention self-test. */
SC_API sc_status sc_self_test(void);

SC_API sc_status sc_model_builtin(const char* name, sc_model** out);
/* Builtin name or path to a JSON model file. */
SC_API sc_status sc_model_resolve(const char* selector, sc_model** out);
SC_API sc_status sc_model_parse(const char* json_text, sc_model** out);
SC_API void sc_model_free(sc_model* model);
SC_API const char* sc_model_name(const sc_model* model);
SC_API int sc_model_dimension(const sc_model* model);
SC_API int sc_model_has_potential(const sc_model* model);
SC_API sc_status sc_model_to_json(const sc_model* model, char** out);

/* Listings sorted by name / id. tier may be NULL, "A", "B", "C" or "all". */
SC_API sc_status sc_list_models(sc_format format, char** out);
SC_API sc_status sc_list_checks(const char* tier, sc_format format, char** out);

/* Runs the union of a tier selection and explicit ids (either may be empty). */
SC_API sc_status sc_verify(const sc_model* model, const char* tier, const char* const* check_ids, size_t n_ids,
                           const sc_run_options* options, sc_report** out);
SC_API size_t sc_report_count(const sc_report* report);
SC_API sc_status sc_report_row_at(const sc_report* report, size_t index, sc_report_row* out);
/* 1 when every evaluated row passes; NotApplicable rows are ignored. */
SC_API int sc_report_all_passed(const sc_report* report);
SC_API sc_status sc_report_render(const sc_report* report, sc_format format, char** out);
SC_API void sc_report_free(sc_report* report);

SC_API sc_status sc_classify(const sc_model* model, const sc_run_options* options, sc_classification** out);
SC_API const char* sc_classification_verdict(const sc_classification* result);
/* 1 for Gaussian_R4, R2xS2, RxS3, Einstein. */
SC_API int sc_classification_definite(const sc_classification* result);
SC_API double sc_classification_scalar_ratio(const sc_classification* result);
SC_API sc_status sc_classification_render(const sc_classification* result, sc_format format, char** out);
SC_API void sc_classification_free(sc_classification* result);

/* point: "x=1,y=0". Text output lists components above threshold. */
SC_API sc_status sc_tensor_dump(const sc_model* model, const char* tensor, const char* point, sc_format format,
                                double threshold, char** out);

/* Frees strings returned through char** parameters. */
SC_API void sc_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* SOLCHECK_SOLCHECK_H_ */
