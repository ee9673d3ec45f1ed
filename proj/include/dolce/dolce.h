/* C interface to the DOLCE knowledge-base kernel.
 *
 * Handles are opaque; every char* returned through an out-parameter or a
 * char*-returning function is heap-allocated and must be released with
 * dolce_string_free. All functions are safe to call from multiple threads
 * on distinct handles; a dolce_model is immutable once loaded.
 */
#ifndef DOLCE_H
#define DOLCE_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dolce_status {
    DOLCE_OK = 0,
    DOLCE_ERR_PARSE = 1, /* lexical/form/resolution errors, bad mutation specs */
    DOLCE_ERR_CLOSE = 2, /* closure failed (e.g. unresolvable required sum term) */
    DOLCE_ERR_QUERY = 3, /* malformed pattern or unknown relation */
    DOLCE_ERR_IO = 4,    /* unreadable file */
    DOLCE_ERR_USAGE = 5  /* bad option key/value or null argument */
} dolce_status;

typedef struct dolce_options dolce_options;
typedef struct dolce_model dolce_model; /* a closed knowledge base */
typedef struct dolce_report dolce_report;

dolce_options* dolce_options_new(void);
void dolce_options_free(dolce_options* opts);

/* Keys: "add-life-events", "skolemize-sums", "auto-tl" (value "0"/"1");
 * "enable-label", "disable-label", "mutate" (repeatable); "taxonomy-file". */
dolce_status dolce_options_set(dolce_options* opts, const char* key, const char* value);

/* The taxonomy comes from, in order: the "taxonomy-file" option, the
 * DOLCE_TAXONOMY environment variable, the built-in default. `opts` may be
 * NULL. On failure *error (if non-NULL) receives a message. */
dolce_status dolce_load_file(const char* path, const dolce_options* opts, dolce_model** out,
                             char** error);
dolce_status dolce_load_string(const char* text, const dolce_options* opts, dolce_model** out,
                               char** error);
void dolce_model_free(dolce_model* model);

/* Closure warnings, one per line; empty string when none. */
char* dolce_model_warnings(const dolce_model* model);

dolce_status dolce_check(const dolce_model* model, dolce_report** out);
size_t dolce_report_count(const dolce_report* report);
const char* dolce_report_label(const dolce_report* report, size_t index);
char* dolce_report_text(const dolce_report* report);
char* dolce_report_json(const dolce_report* report);
void dolce_report_free(dolce_report* report);

/* One line per solution; variables bind in pattern order ("?w=..."). */
dolce_status dolce_query(const dolce_model* model, const char* pattern, char** out_lines,
                         char** error);

/* Formula text for a registered axiom label; NULL when unknown. */
char* dolce_explain(const char* label);
/* Newline-separated list of registered labels. */
char* dolce_labels(void);
const char* dolce_default_taxonomy(void);

void dolce_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* DOLCE_H */
