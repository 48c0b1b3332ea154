/* C interface to the tribill core. Every call returns a status code; results
   are opaque handles released with the matching free function. */
#ifndef TRIBILL_H
#define TRIBILL_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    TRIBILL_OK = 0,
    TRIBILL_INVALID_ARGUMENT = 1, /* schema or argument violation */
    TRIBILL_PRECONDITION = 2,     /* well-formed input the computation cannot accept */
    TRIBILL_UNSUPPORTED = 3,
    TRIBILL_INTERNAL = 4
} tribill_status;

typedef struct tribill_result tribill_result;
typedef struct tribill_unfolding tribill_unfolding;

const char* tribill_version(void);
const char* tribill_status_name(tribill_status s);

/* Runs operation op with a JSON object of parameters. On success *out holds
   the answer; on failure *out (if non-null) holds the JSON diagnostics. */
tribill_status tribill_call(const char* op, const char* params_json, tribill_result** out);
/* Same with a full envelope {op, params, tolerance, format}. */
tribill_status tribill_request(const char* envelope_json, tribill_result** out);

/* Envelope whose params are all strings (query strings, command-line flags),
   converted to the schema types before validation. */
tribill_status tribill_request_text(const char* envelope_json, tribill_result** out);

/* Caps the worker threads used by parallel scans; 0 restores the default. */
tribill_status tribill_set_threads(int threads);

tribill_status tribill_result_status(const tribill_result* r);
/* Canonical JSON (sorted keys, 12 significant digits). Empty for byte answers. */
const char* tribill_result_json(const tribill_result* r);
/* Alternative rendering (SVG, PNG); size 0 when absent. */
const unsigned char* tribill_result_bytes(const tribill_result* r, size_t* size);
const char* tribill_result_content_type(const tribill_result* r);
void tribill_result_free(tribill_result* r);

/* Names of all operations as a JSON array. */
const char* tribill_operations(void);

tribill_status tribill_is_stable(const char* word, int* stable);

tribill_status tribill_unfolding_new(const char* word, double x1, double x2, tribill_unfolding** out);
size_t tribill_unfolding_vertex_count(const tribill_unfolding* u);
/* Position with the holonomy rotated to +x. */
tribill_status tribill_unfolding_vertex(const tribill_unfolding* u, size_t i, double* x, double* y);
tribill_status tribill_unfolding_holonomy(const tribill_unfolding* u, double* x, double* y);
tribill_status tribill_unfolding_membership(const tribill_unfolding* u, int* member, double* separation);
void tribill_unfolding_free(tribill_unfolding* u);

/* Message of the last failure on this thread. */
const char* tribill_last_error(void);

#ifdef __cplusplus
}
#endif

#endif
