/*
 * designlens C API.
 *
 * Every object is an opaque handle created by a *_create / *_load / *_parse
 * function and released by the matching *_destroy. Functions return a
 * dl_status; outputs are written only on DL_OK. Strings returned through a
 * `char**` are owned by the caller and released with dl_string_free. Strings
 * returned as `const char*` stay valid until the owning handle is destroyed.
 *
 * Handles are immutable once built (except dl_config before use) and may be
 * shared between threads for reading.
 */
#ifndef DESIGNLENS_DESIGNLENS_H
#define DESIGNLENS_DESIGNLENS_H

#include <stddef.h>

#if defined(_WIN32)
#  define DL_API __declspec(dllexport)
#else
#  define DL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dl_status {
    DL_OK = 0,
    DL_E_INVALID_ARGUMENT = 1,
    DL_E_PARSE = 2,             /* MiniOO syntax error */
    DL_E_VALIDATION = 3,        /* semantic model error */
    DL_E_MALFORMED_DOCUMENT = 4,/* interchange input is not JSON */
    DL_E_SCHEMA = 5,            /* interchange JSON does not match the schema */
    DL_E_CONFIG = 6,            /* bad config document or fail-on token */
    DL_E_NOT_FOUND = 7,         /* unknown class, package or metric */
    DL_E_INTERNAL = 8
} dl_status;

typedef enum dl_input_kind {
    DL_INPUT_MINIOO = 0,
    DL_INPUT_INTERCHANGE = 1
} dl_input_kind;

typedef enum dl_format {
    DL_FORMAT_TEXT = 0,
    DL_FORMAT_JSON = 1,
    DL_FORMAT_CSV = 2
} dl_format;

typedef struct dl_source {
    const char* origin;  /* file name used in diagnostics; may be NULL */
    const char* text;    /* UTF-8, need not be NUL-terminated */
    size_t length;
    dl_input_kind kind;
} dl_source;

typedef struct dl_diagnostics dl_diagnostics;
typedef struct dl_model dl_model;
typedef struct dl_config dl_config;
typedef struct dl_analysis dl_analysis;

DL_API const char* dl_version(void);
DL_API const char* dl_status_name(dl_status status);
DL_API void dl_string_free(char* text);

/* Diagnostics ------------------------------------------------------------- */

DL_API dl_diagnostics* dl_diagnostics_create(void);
DL_API void dl_diagnostics_destroy(dl_diagnostics* diagnostics);
DL_API void dl_diagnostics_clear(dl_diagnostics* diagnostics);
DL_API size_t dl_diagnostics_count(const dl_diagnostics* diagnostics);
/* Short code, e.g. "ParseError", "UnresolvedReference", "SchemaError". */
DL_API const char* dl_diagnostics_code(const dl_diagnostics* diagnostics, size_t index);
/* One formatted line: "origin:line:col: error[Code]: message". */
DL_API const char* dl_diagnostics_message(const dl_diagnostics* diagnostics, size_t index);

/* Models ------------------------------------------------------------------ */

/*
 * Parses every source and merges them into one validated model. A package
 * declared in two sources is a DuplicatePackage error. On failure every
 * error found is appended to `diagnostics` (which may be NULL).
 */
DL_API dl_status dl_model_load(const dl_source* sources, size_t count, dl_model** out,
                               dl_diagnostics* diagnostics);
DL_API void dl_model_destroy(dl_model* model);
DL_API size_t dl_model_package_count(const dl_model* model);
DL_API size_t dl_model_class_count(const dl_model* model);
/* Canonical interchange document with a trailing newline. */
DL_API dl_status dl_model_write_interchange(const dl_model* model, char** out);

/* Config ------------------------------------------------------------------ */

DL_API dl_status dl_config_create(dl_config** out);
/* Merges a JSON config document over the defaults. */
DL_API dl_status dl_config_parse(const char* text, size_t length, dl_config** out, dl_diagnostics* diagnostics);
DL_API void dl_config_destroy(dl_config* config);
/* Adds a rule (adp, sdp, ...) or severity (violation, advisory, warning). */
DL_API dl_status dl_config_add_fail_on(dl_config* config, const char* token);
DL_API void dl_config_set_strict(dl_config* config, int strict);

/* Analysis ---------------------------------------------------------------- */

DL_API dl_status dl_analyze(const dl_model* model, const dl_config* config, dl_analysis** out);
DL_API void dl_analysis_destroy(dl_analysis* analysis);
DL_API dl_status dl_analysis_render(const dl_analysis* analysis, dl_format format, int color, char** out);

DL_API size_t dl_analysis_finding_count(const dl_analysis* analysis);
/* An index past the end is DL_E_INVALID_ARGUMENT. */
DL_API dl_status dl_analysis_finding(const dl_analysis* analysis, size_t index, const char** rule,
                                     const char** severity, const char** locus);

/*
 * Looks up one metric ("wmc", "instability", ...) for a subject ("pkg.Class"
 * or "pkg"). `*defined` is 0 when the value is UNDEFINED.
 */
DL_API dl_status dl_analysis_metric(const dl_analysis* analysis, const char* subject, const char* metric,
                                    double* value, int* defined);

/*
 * Number of gate / fail-on / strict failures; each is appended to `reasons`
 * (which may be NULL) with code "GateFailure".
 */
DL_API size_t dl_analysis_gate_failures(const dl_analysis* analysis, dl_diagnostics* reasons);

#ifdef __cplusplus
}
#endif

#endif /* DESIGNLENS_DESIGNLENS_H */
