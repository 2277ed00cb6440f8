#ifndef XMOD_XMOD_H
#define XMOD_XMOD_H

/* C interface to the crossed-module library. Strings returned through
 * out-parameters are owned by the caller and released with xmod_string_free.
 * Handles are released with xmod_instance_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define XMOD_API __declspec(dllexport)
#else
#define XMOD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum xmod_status {
  XMOD_OK = 0,
  XMOD_CHECK_FAILED = 1,     /* report produced, some check failed */
  XMOD_PARSE_ERROR = 2,      /* malformed JSON or schema violation */
  XMOD_VALIDATION_ERROR = 3, /* input parsed but is not a valid object */
  XMOD_INVALID_ARGUMENT = 4, /* null pointer, unknown command or bad option */
  XMOD_INTERNAL = 5
} xmod_status;

typedef struct xmod_options {
  double tolerance; /* > 0 */
  uint64_t seed;
} xmod_options;

typedef struct xmod_instance xmod_instance;

XMOD_API xmod_options xmod_options_default(void);

/** Parse an instance document. On failure *out is NULL. */
XMOD_API xmod_status xmod_instance_from_json(const char* json, xmod_instance** out);
XMOD_API xmod_status xmod_instance_from_file(const char* path, xmod_instance** out);
XMOD_API void xmod_instance_free(xmod_instance* inst);
/** Borrowed; valid while the handle lives. */
XMOD_API const char* xmod_instance_name(const xmod_instance* inst);

XMOD_API size_t xmod_corpus_size(void);
/** Instances of the bundled corpus, ordered by name. */
XMOD_API xmod_status xmod_corpus_instance(size_t index, xmod_instance** out);

/** command: "validate", "invariants", "crossed-product" or "decompose".
 * Writes a JSON report to *json_out for XMOD_OK and XMOD_CHECK_FAILED. */
XMOD_API xmod_status xmod_run(const char* command, const xmod_instance* inst, const xmod_options* opts,
                              char** json_out);

/** Runs a verification suite on one instance, or on the whole corpus when inst is NULL. */
XMOD_API xmod_status xmod_verify(const char* suite, const xmod_instance* inst, const xmod_options* opts,
                                 char** json_out);

XMOD_API xmod_status xmod_corpus_report(const xmod_options* opts, char** json_out);

/** Plain-text rendering of a JSON report. */
XMOD_API xmod_status xmod_render_human(const char* json, char** text_out);

/** Message of the last failure on this thread; empty when none. */
XMOD_API const char* xmod_last_error(void);
XMOD_API void xmod_string_free(char* s);
XMOD_API const char* xmod_version(void);

#ifdef __cplusplus
}
#endif

#endif
