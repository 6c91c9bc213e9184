/* actmap — C API for the dialog-act to ISO 24617-2 conversion library.
 *
 * All functions return am_status (AM_OK on success). On failure, a
 * thread-local message describing the error is available through
 * am_last_error() until the next failing call on the same thread.
 * Objects are opaque handles; free them with the matching *_free call.
 * Strings returned through char** are heap-allocated; release them with
 * am_string_free.
 */

#ifndef ACTMAP_H
#define ACTMAP_H

#include <stddef.h>

#if defined(_WIN32)
#define ACTMAP_API __declspec(dllexport)
#else
#define ACTMAP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum am_status {
    AM_OK = 0,
    AM_E_ARGUMENT = 1, /* null handle, bad enum value, invalid combination */
    AM_E_IO = 2,       /* unreadable or unwritable file */
    AM_E_PARSE = 3,    /* malformed document; message carries location */
    AM_E_INVALID = 4,  /* well-formed input violating a contract */
    AM_E_INTERNAL = 5
} am_status;

typedef enum am_input_format { AM_INPUT_JSONL = 0, AM_INPUT_TSV = 1 } am_input_format;

typedef enum am_output_format {
    AM_OUTPUT_DIAML_XML = 0,
    AM_OUTPUT_JSONL = 1,
    AM_OUTPUT_TSV = 2
} am_output_format;

typedef enum am_report_format { AM_REPORT_TABLE = 0, AM_REPORT_JSONL = 1 } am_report_format;

typedef enum am_denominator { AM_DENOM_TURNS = 0, AM_DENOM_ASSIGNMENTS = 1 } am_denominator;

typedef struct am_taxonomy am_taxonomy;
typedef struct am_rules am_rules;
typedef struct am_corpus am_corpus;
typedef struct am_annotations am_annotations;
typedef struct am_report am_report;

ACTMAP_API const char* am_version(void);
ACTMAP_API const char* am_last_error(void);
ACTMAP_API void am_string_free(char* s);

/* Taxonomy ---------------------------------------------------------------- */

ACTMAP_API am_status am_taxonomy_default(am_taxonomy** out);
ACTMAP_API am_status am_taxonomy_load(const char* path, am_taxonomy** out);
ACTMAP_API void am_taxonomy_free(am_taxonomy* t);
ACTMAP_API size_t am_taxonomy_function_count(const am_taxonomy* t);
/* 1 valid pair, 0 invalid pair, -1 unknown function or dimension name. */
ACTMAP_API int am_taxonomy_is_valid_pair(const am_taxonomy* t, const char* function_name,
                                         const char* dimension_name);

/* Rules ------------------------------------------------------------------- */

ACTMAP_API am_status am_rules_default(const am_taxonomy* t, am_rules** out);
ACTMAP_API am_status am_rules_load(const am_taxonomy* t, const char* path, am_rules** out);
ACTMAP_API void am_rules_free(am_rules* r);
/* Totality/validity findings, one per line; *finding_count receives the
 * number of findings (0 for a clean table). */
ACTMAP_API am_status am_rules_check(const am_taxonomy* t, const am_rules* r, char** findings,
                                    size_t* finding_count);

/* Corpus ------------------------------------------------------------------ */

ACTMAP_API am_status am_corpus_parse_file(const char* path, am_input_format format,
                                          am_corpus** out);
ACTMAP_API am_status am_corpus_parse_buffer(const char* data, size_t len, am_input_format format,
                                            const char* provenance, am_corpus** out);
/* Bundled demonstration corpus reproducing the published LEGO label
 * distribution with template texts. */
ACTMAP_API am_status am_corpus_reference(am_corpus** out);
ACTMAP_API void am_corpus_free(am_corpus* c);
ACTMAP_API size_t am_corpus_dialog_count(const am_corpus* c);
ACTMAP_API size_t am_corpus_turn_count(const am_corpus* c);
/* Label-validity issues as JSONL (dialog_id, turn_index, message). */
ACTMAP_API am_status am_corpus_validate(const am_corpus* c, char** issues_jsonl,
                                        size_t* issue_count);
/* Serializes the corpus in the canonical record schema (the format
 * am_corpus_parse_file reads back). */
ACTMAP_API am_status am_corpus_write(const am_corpus* c, am_input_format format, char** out_bytes,
                                     size_t* out_len);
ACTMAP_API am_status am_corpus_write_file(const am_corpus* c, am_input_format format,
                                          const char* path);

/* Mapping ----------------------------------------------------------------- */

/* overrides_path may be NULL. */
ACTMAP_API am_status am_map(const am_corpus* c, const am_taxonomy* t, const am_rules* r,
                            const char* overrides_path, am_annotations** out);
ACTMAP_API void am_annotations_free(am_annotations* a);
ACTMAP_API size_t am_annotations_turn_count(const am_annotations* a);
ACTMAP_API size_t am_annotations_mapped_count(const am_annotations* a);
ACTMAP_API size_t am_annotations_overridden_count(const am_annotations* a);
ACTMAP_API size_t am_annotations_pending_count(const am_annotations* a);
/* Turns still waiting for an override, as JSONL records. */
ACTMAP_API am_status am_annotations_pending_jsonl(const am_annotations* a, char** out);

/* Emission ---------------------------------------------------------------- */

ACTMAP_API am_status am_emit(const am_annotations* a, am_output_format format,
                             int include_unmapped, int pretty, char** out_bytes, size_t* out_len);
ACTMAP_API am_status am_emit_file(const am_annotations* a, am_output_format format,
                                  int include_unmapped, int pretty, const char* path);

/* Distribution report ----------------------------------------------------- */

ACTMAP_API am_status am_report_build(const am_annotations* a, am_report** out);
ACTMAP_API void am_report_free(am_report* r);
ACTMAP_API am_status am_report_render(const am_report* r, am_report_format format,
                                      am_denominator denom, char** out);
/* Row lookup; scope is "system", "user", or "all". Returns -1 when the
 * (dimension, function) row is absent. */
ACTMAP_API long long am_report_count(const am_report* r, const char* scope,
                                     const char* dimension_name, const char* function_name);
/* Compares against an expected-counts file. *exact_failures and *failures
 * receive the failing entry counts; verdicts (may be NULL) receives the
 * rendered verdict lines. */
ACTMAP_API am_status am_report_compare_file(const am_report* r, const char* expected_path,
                                            char** verdicts, size_t* exact_failures,
                                            size_t* failures);

#ifdef __cplusplus
}
#endif

#endif /* ACTMAP_H */
