#ifndef POLYCHAMBER_POLYCHAMBER_H
#define POLYCHAMBER_POLYCHAMBER_H

/*
 * C interface to the chamber classifier.
 *
 * Handles are opaque and owned by the caller: every pcs_*_free accepts NULL.
 * Strings returned through char** are heap allocated; release them with
 * pcs_string_free. Every call returns a pcs_status; on failure the message is
 * available from pcs_last_error() (thread local, valid until the next call).
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PCS_API __declspec(dllexport)
#else
#define PCS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pcs_status {
  PCS_OK = 0,
  PCS_ERR_PARSE = 1,
  PCS_ERR_NONGENERIC = 2,
  PCS_ERR_UNSORTED = 3,
  PCS_ERR_DOMAIN = 4,
  PCS_ERR_BOUND = 5,
  PCS_ERR_EMPTY_CHAMBER = 6,
  PCS_ERR_UNKNOWN_DESCRIPTION = 7,
  PCS_ERR_INVALID_ARGUMENT = 8,
  PCS_ERR_INTERNAL = 9
} pcs_status;

typedef enum pcs_target { PCS_TARGET_CHAIN = 0, PCS_TARGET_PLANAR = 1, PCS_TARGET_SPATIAL = 2 } pcs_target;

typedef enum pcs_format { PCS_FORMAT_TEXT = 0, PCS_FORMAT_JSON = 1, PCS_FORMAT_TSV = 2 } pcs_format;

/* Pass as `d` to keep chain-space dimensions symbolic in d. */
#define PCS_D_SYMBOLIC 0
/* Pass as `target` to request every description. */
#define PCS_TARGET_ALL (-1)

typedef struct pcs_lengths pcs_lengths;
typedef struct pcs_code pcs_code;
typedef struct pcs_expr pcs_expr;

PCS_API const char* pcs_last_error(void);
PCS_API const char* pcs_status_name(pcs_status status);
PCS_API void pcs_string_free(char* s);

/* ---- length vectors ---------------------------------------------------- */

/* "1,1,2,2,3" or "1/2,1,1"; zero entries are tiny edges. */
PCS_API pcs_status pcs_lengths_parse(const char* text, pcs_lengths** out);
PCS_API void pcs_lengths_free(pcs_lengths* a);
PCS_API int pcs_lengths_m(const pcs_lengths* a);
PCS_API pcs_status pcs_lengths_to_string(const pcs_lengths* a, char** out);
/* *on_wall = 0 for generic vectors; otherwise *wall_bits holds J (element i in bit i-1). */
PCS_API pcs_status pcs_lengths_find_wall(const pcs_lengths* a, int* on_wall, uint64_t* wall_bits);

/* ---- genetic codes and chambers ---------------------------------------- */

/* m = 0 infers m from the largest element. */
PCS_API pcs_status pcs_code_parse(const char* text, int m, pcs_code** out);
PCS_API void pcs_code_free(pcs_code* code);
PCS_API int pcs_code_m(const pcs_code* code);
PCS_API int pcs_code_equal(const pcs_code* a, const pcs_code* b);
PCS_API pcs_status pcs_code_to_string(const pcs_code* code, int unicode, char** out);

/* Requires a sorted vector (PCS_ERR_UNSORTED otherwise); PCS_ERR_NONGENERIC on a wall. */
PCS_API pcs_status pcs_genetic_code(const pcs_lengths* a, pcs_code** out);
PCS_API pcs_status pcs_tiny_edge(const pcs_code* code, pcs_code** out);
PCS_API pcs_status pcs_a_min(const pcs_code* code, pcs_lengths** out);

PCS_API pcs_status pcs_chamber_count(int m, int allow_large_m, size_t* out);
PCS_API pcs_status pcs_chamber_at(int m, size_t index, int allow_large_m, pcs_code** out);

/* ---- descriptions -------------------------------------------------------- */

PCS_API pcs_status pcs_describe(const pcs_code* code, pcs_target target, int d, pcs_expr** out);
PCS_API pcs_status pcs_expr_parse(const char* text, pcs_expr** out);
PCS_API void pcs_expr_free(pcs_expr* x);
PCS_API pcs_status pcs_expr_render(const pcs_expr* x, int unicode, char** out);
/* *known = 0 when the characteristic is not determined (symbolic or unknown parts). */
PCS_API pcs_status pcs_expr_euler(const pcs_expr* x, int* known, int64_t* out);
PCS_API int pcs_expr_is_unknown(const pcs_expr* x);
PCS_API pcs_status pcs_coverage(int m, pcs_target target, size_t* described, size_t* total);
PCS_API pcs_status pcs_euler_boundary_check(const pcs_code* code, int* passed, int64_t* chain_euler,
                                            int64_t* expected);

/* ---- formatted reports --------------------------------------------------- */

PCS_API pcs_status pcs_format_parse(const char* name, pcs_format* out);
PCS_API pcs_status pcs_target_parse(const char* name, pcs_target* out);

typedef struct pcs_classify_options {
  int d;             /* PCS_D_SYMBOLIC or d >= 2 */
  int target;        /* pcs_target or PCS_TARGET_ALL */
  int allow_large_m; /* lift the m <= 7 limits */
} pcs_classify_options;

/*
 * Classifies a length vector. The report is produced for nongeneric input too
 * (naming the wall), in which case PCS_ERR_NONGENERIC is returned and *wall_bits
 * is set. *reordered reports whether the input had to be sorted.
 */
PCS_API pcs_status pcs_classify(const char* lengths, const pcs_classify_options* options, pcs_format format,
                                char** report, int* reordered, uint64_t* wall_bits);

PCS_API pcs_status pcs_table(int m, int d, pcs_format format, int allow_large_m, char** out);
PCS_API pcs_status pcs_enumerate(int m, pcs_format format, int allow_large_m, char** out);
/* threads = 0 uses POLYCHAMBER_THREADS or the hardware concurrency. */
PCS_API pcs_status pcs_verify(int m, unsigned threads, pcs_format format, char** out, int* passed);

#ifdef __cplusplus
}
#endif

#endif /* POLYCHAMBER_POLYCHAMBER_H */
