#ifndef BRSTLAB_H
#define BRSTLAB_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define BRST_API __declspec(dllexport)
#else
#define BRST_API __attribute__((visibility("default")))
#endif

typedef enum brst_status {
    BRST_OK = 0,
    BRST_ERR_CONFIG = 1,
    BRST_ERR_PARSE = 2,
    BRST_ERR_INVERSION = 3,
    BRST_ERR_DIVISION = 4,
    BRST_ERR_CLOSEDNESS = 5,
    BRST_ERR_INVARIANCE = 6,
    BRST_ERR_INTERNAL = 7
} brst_status;

/* A Lie algebra paired with a phase-space backend. */
typedef struct brst_context brst_context;

/* lie: "abelian:<k>", "su2", "aff1", "@file.json" or empty for the backend's abelian algebra.
   backend: "torus", "torus-perturbed", "flat:<d>,<k>", "flat-weyl:<d>,<k>", "point". */
BRST_API brst_status brst_context_create(const char* lie, const char* backend, brst_context** out);
BRST_API void brst_context_destroy(brst_context* ctx);
/* name of the algebra actually used; owned by the context */
BRST_API const char* brst_context_lie_name(const brst_context* ctx);

/* Runs an identity suite. *report receives JSON (as_json != 0) or text; *failures the failing case count. */
BRST_API brst_status brst_verify(const char* suite, const char* lie, const char* backend, int order, int samples,
                                 uint64_t seed, int as_json, char** report, int* failures);

/* op: "star", "brst0", "brstW", "koszul", "ce", "restrict". rhs is the right factor for "star" (else NULL).
   kappa is a rational like "1/4" used by "star"; NULL means 0. */
BRST_API brst_status brst_eval(const brst_context* ctx, const char* expr, const char* rhs, const char* op,
                               const char* kappa, int order, char** result);

/* variant: "standard" | "perturbed"; emit: "reduced-table" | "invariants" | "obstruction". JSON output. */
BRST_API brst_status brst_torus_report(const char* variant, int order, const char* emit, int max_degree,
                                       char** report, int* failures);

/* backend: "flat:<d>,<k>". JSON output. */
BRST_API brst_status brst_reduce(const char* backend, int order, int max_degree, char** report, int* failures);

BRST_API void brst_string_free(char* s);

/* Message for the last failing call on this thread; empty if none. */
BRST_API const char* brst_last_error(void);
BRST_API const char* brst_status_name(brst_status status);

#ifdef __cplusplus
}
#endif

#endif
