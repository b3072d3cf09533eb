/* capi.h
 * C interface to the library: an opaque session plus one JSON-in / JSON-out
 * entry point per pipeline operation.  This is the only surface clients
 * (including the bundled CLI) link against.
 *
 * Status codes, shared with the CLI exit codes:
 *   0  success
 *   1  usage error (unknown op, malformed request JSON)
 *   2  validation error (input violates a documented precondition)
 *   3  infeasible (certificate solving proved no vector under the cap)
 *   4  budget exceeded
 *
 * On every call that returns a response, *response_json is set to a
 * NUL-terminated JSON string the caller owns and must release with
 * kg_string_free.  Failures put {"error": "..."} there.
 */

#pragma once

#ifdef __cplusplus
extern "C" {
#endif

typedef struct kg_session kg_session;

kg_session* kg_session_new(void);
void kg_session_free(kg_session* s);

/* Operations (mirroring the CLI subcommands):
 *   "count"        exact proper-coloring counts on a region
 *   "shells"       shell and ball sizes around a vertex
 *   "gamma"        one-step and depth-d discrepancy of a boundary pair
 *   "mu-table"     family constants for a template catalogue
 *   "afset-build"  coverage-set construction from catalogues + mu table
 *   "cert-solve"   decay-certificate solving (fixed epsilon or bisection)
 *   "cert-verify"  certificate re-verification against its inputs
 *   "lemma9"       two-equal-neighbours exhaustive check of a region
 *   "dynamics"     chain simulation and TV-to-uniform time series
 *   "path"         single-vertex-update path between two colorings
 * Request and response schemas are documented next to each handler in
 * capi.cpp. */
int kg_run(kg_session* s, const char* op, const char* request_json, char** response_json);

void kg_string_free(char* s);

const char* kg_version(void);

#ifdef __cplusplus
}
#endif
