#ifndef PISOTK_H
#define PISOTK_H

/*
 * C interface to the Pisot lattice toolkit. Handles are opaque; every call
 * returns a status code and writes its result, when any, as a JSON report
 * string the caller frees with ptk_string_free. Numeric arguments are exact
 * decimal or rational literals ("100", "1/4", "0.25") passed as strings.
 */

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ptk_field ptk_field;

typedef enum ptk_status {
    PTK_OK = 0,
    PTK_VERIFY_FAIL = 1,  /* a verification ran to completion and failed */
    PTK_ERR_INPUT = 2,
    PTK_ERR_PRECISION = 3,
    PTK_ERR_INTERNAL = 4
} ptk_status;

/* Message for the most recent failing call on this thread. */
const char* ptk_last_error(void);

void ptk_string_free(char* s);

/* spec_json is the field description document itself, not a path.
 * Non-positive precision, max_precision, or workers select the defaults
 * (128, 4096, 1). */
ptk_status ptk_field_create(const char* spec_json, long precision, long max_precision,
                            int workers, ptk_field** out);
void ptk_field_free(ptk_field* f);

ptk_status ptk_field_info(ptk_field* f, char** report_json);

/* cache_dir may be NULL; when set, enumeration results are memoized there
 * keyed by field, bound, and precision, and re-certified on read. */
ptk_status ptk_pisot_enum(ptk_field* f, const char* max_value, const char* cache_dir,
                          char** report_json);
ptk_status ptk_pisot_min(ptk_field* f, char** report_json);
ptk_status ptk_gaps(ptk_field* f, const char* max_value, char** report_json);

/* coords: comma-separated integers in the order basis, e.g. "2,0".         */
/* Membership queries return PTK_OK for both verdicts; read the report.     */
ptk_status ptk_ek_test(ptk_field* f, const char* coords, char** report_json);
ptk_status ptk_ek_enum(ptk_field* f, const char* max_value, char** report_json);
ptk_status ptk_decompose(ptk_field* f, const char* coords, int count, char** report_json);

/* targets: comma-separated entries for places 2..s+t, real ones as "a",
 * complex ones as "a+bi" (or "bi"). strategy: "direct" | "constructive". */
ptk_status ptk_theorem1(ptk_field* f, const char* x1, const char* targets, const char* epsilon,
                        const char* strategy, char** report_json);

/* Searches [from, from + W] where W is the smallest certified width that
 * guarantees a hit. */
ptk_status ptk_epsilon_pisot(ptk_field* f, const char* epsilon, const char* from,
                             char** report_json);

/* what: "eq-ek-dk" | "corollary3" | "density" | "discreteness". Unused
 * parameters may be NULL; missing required ones are an input error. The
 * report is written even when the verdict is PTK_VERIFY_FAIL. */
ptk_status ptk_verify(ptk_field* f, const char* what, const char* max_value,
                      const char* search_limit, const char* grid_step, const char* epsilon,
                      char** report_json);

ptk_status ptk_oracle_pisot(ptk_field* f, const char* max_value, char** report_json);

/* Tabular projection of any report produced above. */
ptk_status ptk_to_csv(const char* report_json, char** csv);

#ifdef __cplusplus
}
#endif

#endif
