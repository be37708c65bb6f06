/*
 * extensia - extensional higher-order logic programs with negation under the
 * infinite-valued minimum-model semantics.
 *
 * C interface to the solver library. All strings returned through `char**`
 * out-parameters are heap-allocated and must be released with
 * ex_string_free(). Handles are released with their matching *_free call.
 * Every entry point returns EX_OK on success; on failure the status encodes
 * the error class and, where an `error` out-parameter is present, a
 * human-readable diagnostic is stored there.
 */

#ifndef EXTENSIA_H
#define EXTENSIA_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ex_status {
  EX_OK = 0,
  EX_USAGE = 1,    /* bad arguments to an API call */
  EX_SYNTAX = 2,   /* syntax, type or compilation error in the program */
  EX_SEMANTIC = 3, /* outside the solvable fragment (function symbols,
                      non-enumerable predicate argument types, non-normal
                      input to the grounder) */
  EX_BUDGET = 4,   /* enumeration budget exceeded or truth-level overflow */
  EX_INTERNAL = 5  /* internal invariant failure */
} ex_status;

typedef struct ex_program ex_program;
typedef struct ex_result ex_result;

typedef struct ex_options {
  long kappa;        /* truth-domain depth; 0 = choose automatically */
  int wadge;         /* rewrite predicate constants in clause heads through
                        injected equality predicates */
  int trace;         /* record one line per solver iterate */
  long long budget;  /* enumeration budget; 0 = default */
} ex_options;

const char* ex_version(void);
void ex_string_free(char* s);

/* Parses, infers types for and compiles a surface program. */
ex_status ex_program_load(const char* text, const ex_options* opts,
                          ex_program** out, char** error);
void ex_program_free(ex_program* p);

/* Type report: one line per predicate, constant and function symbol. */
ex_status ex_program_report(const ex_program* p, char** out);

/* The compiled program in printable core form. */
ex_status ex_program_core(const ex_program* p, char** out);

/* Computes the minimum infinite-valued model. */
ex_status ex_solve(ex_program* p, ex_result** out, char** error);
void ex_result_free(ex_result* r);

/* Model as text, one `cell = value` line per cell; collapsed uses
 * True/False/Undef labels. */
ex_status ex_result_text(const ex_result* r, int collapsed, char** out);

/* {"model": ..., "collapsed": ..., "stats": ...} */
ex_status ex_result_json(const ex_result* r, char** out);

ex_status ex_result_trace(const ex_result* r, char** out);

/* name is one of "stages", "cells", "kappa". */
ex_status ex_result_stat(const ex_result* r, const char* name,
                         long long* out);

/* Evaluates a closed core-syntax expression against the minimum model. The
 * result must have type o unless allow_table is set. */
ex_status ex_query(ex_program* p, const char* expr, int allow_table,
                   char** out, char** error);

/* Well-founded model of a first-order normal program (oracle path). */
ex_status ex_wfs(ex_program* p, int as_json, char** out, char** error);

/* Brute-force minimum model by enumeration and model intersection. */
ex_status ex_oracle_min(ex_program* p, int as_json, char** out, char** error);

#ifdef __cplusplus
}
#endif

#endif /* EXTENSIA_H */
