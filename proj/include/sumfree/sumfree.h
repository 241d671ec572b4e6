/* C interface to the sumfree library. */
#ifndef SUMFREE_SUMFREE_H
#define SUMFREE_SUMFREE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SUMFREE_BUILDING_LIBRARY)
#    define SUMFREE_API __declspec(dllexport)
#  else
#    define SUMFREE_API __declspec(dllimport)
#  endif
#else
#  define SUMFREE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. 0 is success; the rest mirror the library's error kinds. */
typedef enum sumfree_status {
  SUMFREE_OK = 0,
  SUMFREE_COMPOSITE_MODULUS = 1,
  SUMFREE_DIMENSION_TOO_LARGE = 2,
  SUMFREE_GROUP_TOO_LARGE = 3,
  SUMFREE_SPACE_MISMATCH = 4,
  SUMFREE_ZERO_DILATION = 5,
  SUMFREE_EMPTY_INPUT = 6,
  SUMFREE_HYPOTHESIS_VIOLATED = 7,
  SUMFREE_WRONG_RESIDUE_CLASS = 8,
  SUMFREE_BAD_PRIME = 9,
  SUMFREE_BAD_P = 10,
  SUMFREE_ZERO_DIRECTION = 11,
  SUMFREE_NOT_SUBSPACE = 12,
  SUMFREE_UNSUPPORTED_PRIME = 13,
  SUMFREE_NOT_SUM_FREE = 14,
  SUMFREE_WRONG_SPACE = 15,
  SUMFREE_SPACE_TOO_LARGE = 16,
  SUMFREE_EXHAUSTIVE_TOO_LARGE = 17,
  SUMFREE_INVALID_ARGUMENT = 18,
  SUMFREE_PARSE_ERROR = 19,
  SUMFREE_INTERNAL = 20
} sumfree_status;

typedef struct sumfree_space sumfree_space;
typedef struct sumfree_set sumfree_set;

SUMFREE_API const char* sumfree_version(void);
/* Message of the last failed call on this thread; never NULL. */
SUMFREE_API const char* sumfree_last_error(void);
/* CamelCase name of a status code. */
SUMFREE_API const char* sumfree_status_name(int status);
/* Frees strings returned through char** out-parameters. */
SUMFREE_API void sumfree_string_free(char* s);

/* Spaces F_p^n */
SUMFREE_API int sumfree_space_create(uint32_t p, uint32_t n, sumfree_space** out);
SUMFREE_API void sumfree_space_destroy(sumfree_space* s);
SUMFREE_API uint32_t sumfree_space_p(const sumfree_space* s);
SUMFREE_API uint32_t sumfree_space_n(const sumfree_space* s);
SUMFREE_API uint32_t sumfree_space_order(const sumfree_space* s);
/* Index of the element with the given coordinates (x_0 most significant). */
SUMFREE_API int sumfree_space_index(const sumfree_space* s, const uint32_t* coords, size_t count, uint32_t* out);

/* Sets */
SUMFREE_API int sumfree_set_create(const sumfree_space* s, const uint32_t* indices, size_t count, sumfree_set** out);
SUMFREE_API int sumfree_set_from_hex(const sumfree_space* s, const char* hex, sumfree_set** out);
SUMFREE_API void sumfree_set_destroy(sumfree_set* a);
SUMFREE_API int sumfree_set_to_hex(const sumfree_set* a, char** out);
SUMFREE_API size_t sumfree_set_size(const sumfree_set* a);
SUMFREE_API int sumfree_set_contains(const sumfree_set* a, uint32_t index);
/* Writes up to cap indices in increasing order; *count receives the set size. */
SUMFREE_API int sumfree_set_indices(const sumfree_set* a, uint32_t* buf, size_t cap, size_t* count);
SUMFREE_API int sumfree_set_equal(const sumfree_set* a, const sumfree_set* b);

SUMFREE_API int sumfree_sumset(const sumfree_set* a, const sumfree_set* b, sumfree_set** out);
SUMFREE_API int sumfree_difference_set(const sumfree_set* a, const sumfree_set* b, sumfree_set** out);
SUMFREE_API int sumfree_dilate(const sumfree_set* a, uint32_t c, sumfree_set** out);
SUMFREE_API int sumfree_symmetry_group(const sumfree_set* a, sumfree_set** out);
SUMFREE_API int sumfree_is_sum_free(const sumfree_set* a, int* out);
SUMFREE_API int sumfree_is_cuboid_covered(const sumfree_set* a, int* out);
/* 1 if some structured witness rebuilds the set; requires p = 6m-1 >= 11. */
SUMFREE_API int sumfree_is_structured(const sumfree_set* a, int* out);

/* Constructors. family is one of cuboid, very_structured, structured,
 * witness_sf2, witness_sf1, rs_low, rs_high, rs_split. param_set is P
 * (very_structured, structured) or K (rs_*) and may be NULL; direction is the
 * index of x for the witnesses, or -1. ell and matrix (row-major n x n, may be
 * NULL for the identity) are used by structured only. */
SUMFREE_API int sumfree_construct(const sumfree_space* s, const char* family, const sumfree_set* param_set,
                                  int64_t direction, uint32_t ell, const uint32_t* matrix, sumfree_set** out);

/* JSON operations. Results are allocated strings released with
 * sumfree_string_free. */
/* Levels 0..k of the sf hierarchy as a certificate. max_nodes 0 means default. */
SUMFREE_API int sumfree_sf_hierarchy_json(uint32_t p, uint32_t n, uint32_t k, uint64_t max_nodes, char** out);
SUMFREE_API int sumfree_oracle_json(uint32_t p, uint32_t n, char** out);
/* Law report; *verdict_exit receives 0 (pass/vacuous), 2 (counterexample) or 3 (unproved). */
SUMFREE_API int sumfree_check_law_json(const char* law, uint32_t p, uint32_t n, const char* mode, uint64_t trials,
                                       uint64_t seed, char** out, int* verdict_exit);
/* Re-verifies a certificate; *valid is 1 or 0, *reason (optional) explains a rejection. */
SUMFREE_API int sumfree_verify_certificate_json(const char* json, int* valid, char** reason);
/* Replays a counterexample certificate; *refails is 1 if it still fails. */
SUMFREE_API int sumfree_replay_json(const char* json, int* refails);
/* {size, sum_free, cuboid_covered (null if undefined), structured (null if undefined), hex, elements}. */
SUMFREE_API int sumfree_describe_set_json(const sumfree_set* a, char** out);
SUMFREE_API int sumfree_spectrum_csv(const sumfree_set* a, char** out);

#ifdef __cplusplus
}
#endif

#endif
