/* C interface to the degree-9 Sendov certification engine.
 *
 * All functions return s9_status; results are written through out
 * parameters. Strings returned through char** are heap-allocated and must
 * be released with s9_string_free. A session carries options and mutation
 * overrides and is not thread-safe; use one session per thread.
 */
#ifndef SENDOV9_H
#define SENDOV9_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct s9_session s9_session;

typedef enum {
  S9_OK = 0,
  S9_ERR_ARGUMENT = 1,  /* bad input value or unknown name */
  S9_ERR_IO = 2,        /* file could not be read or written */
  S9_ERR_DOMAIN = 3,    /* mathematical domain violation */
  S9_ERR_INTERNAL = 4
} s9_status;

typedef enum {
  S9_CERTIFIED = 0,
  S9_REFUTED = 1,
  S9_INCONCLUSIVE = 2,
  S9_INFEASIBLE_REGION = 3
} s9_verdict;

s9_session* s9_session_new(void);
void s9_session_free(s9_session* session);

/* Last error message for this session (valid until the next call). */
const char* s9_last_error(const s9_session* session);

/* Options: "max_depth", "min_width", "box_budget", "jobs",
 * "x_cover_pieces". Values are decimal strings. */
s9_status s9_set_option(s9_session* session, const char* key, const char* value);

/* Mutation test hooks: "R", "p_exp", "ustar_scale", "two_sin_sq",
 * "qclip". */
s9_status s9_set_mutation(s9_session* session, const char* key, const char* value);

/* Runs the full verification chain; writes one certificate JSON per
 * condition plus report.json into out_dir (created if missing). */
s9_status s9_verify_all(s9_session* session, const char* out_dir, int* verdict_out);

/* Certifies one condition. box_json is optional ("null" or NULL for the
 * condition's declared domain); format:
 * [{"name":"a","lo":0.9,"hi":0.95}, ...]. */
s9_status s9_certify(s9_session* session, const char* condition_id, const char* box_json,
                     char** certificate_json_out, int* verdict_out);

/* Replays certificate JSON text: verdict 0 when every leaf re-verifies. */
s9_status s9_replay(s9_session* session, const char* certificate_json, int* verdict_out,
                    char** reason_out);

/* Derived quantities + diagnostics for a polynomial config JSON
 * {"a": float, "zeros": [[re, im] x 8]}. */
s9_status s9_poly_report(s9_session* session, const char* config_json, char** report_json_out);

/* Oracle suites: "sigma-bound", "identities", "mobius", "spotchecks".
 * golden_path is only used by "spotchecks". */
s9_status s9_oracle_run(s9_session* session, const char* suite, uint64_t trials, uint64_t seed,
                        const char* golden_path, char** report_json_out,
                        long long* violations_out);

/* Parameter-sweep CSV with header a,q,case,U_A,U_B,U,lhs213,Ustar,margin.
 * grid_json: {"case":"i","a":[lo,hi,step],"q":[lo,hi,step]} (q optional). */
s9_status s9_curves_csv(s9_session* session, const char* grid_json, char** csv_out);

/* Regenerates the golden value file content (50-digit decimal strings). */
s9_status s9_golden_generate(s9_session* session, char** json_out);

void s9_string_free(char* s);
const char* s9_version(void);

#ifdef __cplusplus
}
#endif

#endif /* SENDOV9_H */
