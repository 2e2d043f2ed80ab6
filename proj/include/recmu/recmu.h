/* C interface to the recmu library.
 *
 * A workspace owns an equation system (with its congruence index) and an
 * optional typing context. Every query returns a JSON document through an
 * out-parameter that the caller releases with recmu_string_free. Functions
 * return RECMU_OK or an error status; the message of the last error on the
 * calling thread is available from recmu_last_error.
 */
#ifndef RECMU_RECMU_H
#define RECMU_RECMU_H

#include <stddef.h>

#if defined(_WIN32)
#define RECMU_API __declspec(dllexport)
#else
#define RECMU_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum recmu_status {
  RECMU_OK = 0,
  RECMU_ERR_SYNTAX,
  RECMU_ERR_NAMESPACE_CLASH,
  RECMU_ERR_MALFORMED_SYSTEM,
  RECMU_ERR_UNBOUND_VARIABLE,
  RECMU_ERR_NOT_A_FUNCTION_TYPE,
  RECMU_ERR_ARGUMENT_TYPE_MISMATCH,
  RECMU_ERR_MU_BODY_NOT_BOTTOM,
  RECMU_ERR_NAMED_TERM_TYPE_MISMATCH,
  RECMU_ERR_ARITY_MISMATCH,
  RECMU_ERR_NOT_GOOD,
  RECMU_ERR_UNKNOWN_CLASS,
  RECMU_ERR_NOT_A_REDEX,
  RECMU_ERR_FUEL_EXHAUSTED,
  RECMU_ERR_UNSUPPORTED_TYPE,
  RECMU_ERR_UNTYPABLE,
  RECMU_ERR_TYPE_PRESERVATION_FAILURE,
  RECMU_ERR_SIMULATION_FAILURE,
  RECMU_ERR_SUBJECT_REDUCTION_VIOLATION,
  RECMU_ERR_INDEX_FROZEN,
  RECMU_ERR_IO,
  RECMU_ERR_USAGE,
  RECMU_ERR_INTERNAL = 100
} recmu_status;

typedef enum recmu_strategy {
  RECMU_LEFTMOST_OUTERMOST = 0,
  RECMU_EXHAUSTIVE = 1
} recmu_strategy;

typedef struct recmu_workspace recmu_workspace;

RECMU_API const char* recmu_version(void);
RECMU_API const char* recmu_status_name(recmu_status status);
/* Message of the last failed call on this thread; "" if none. */
RECMU_API const char* recmu_last_error(void);
RECMU_API void recmu_string_free(char* s);

/* equations may be NULL or empty for the empty system. */
RECMU_API recmu_status recmu_workspace_new(const char* equations, recmu_workspace** out);
RECMU_API void recmu_workspace_free(recmu_workspace* ws);
RECMU_API recmu_status recmu_workspace_set_context(recmu_workspace* ws, const char* context);
RECMU_API recmu_status recmu_workspace_set_fuel(recmu_workspace* ws, size_t fuel);
RECMU_API recmu_status recmu_workspace_set_strategy(recmu_workspace* ws, recmu_strategy s);
/* 1 if the system is good, 0 otherwise. */
RECMU_API int recmu_workspace_is_good(const recmu_workspace* ws);

/* expected may be NULL. */
RECMU_API recmu_status recmu_check(const recmu_workspace* ws, const char* term,
                                   const char* expected, char** json_out);
RECMU_API recmu_status recmu_equiv(const recmu_workspace* ws, const char* left,
                                   const char* right, char** json_out);
RECMU_API recmu_status recmu_goodness(const recmu_workspace* ws, char** json_out);
RECMU_API recmu_status recmu_analyze(const recmu_workspace* ws, char** json_out);
RECMU_API recmu_status recmu_normalize(const recmu_workspace* ws, const char* term,
                                       char** json_out);
RECMU_API recmu_status recmu_trace(const recmu_workspace* ws, const char* term, char** json_out);
RECMU_API recmu_status recmu_eta(const recmu_workspace* ws, const char* term, char** json_out);
RECMU_API recmu_status recmu_sn(const recmu_workspace* ws, const char* term, char** json_out);
RECMU_API recmu_status recmu_translate(const recmu_workspace* ws, const char* term, int verify,
                                       char** json_out);

/* filter may be NULL. fuel 0 selects the default. */
RECMU_API recmu_status recmu_corpus_run(const char* dir, const char* filter, size_t fuel,
                                        char** json_out);

#ifdef __cplusplus
}
#endif

#endif
