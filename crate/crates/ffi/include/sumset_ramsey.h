#ifndef SUMSET_RAMSEY_H
#define SUMSET_RAMSEY_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a call. The first four values agree with the CLI exit codes.
 */
typedef enum SrStatus {
  /**
   * Success; for searches, a witness was found.
   */
  SR_STATUS_OK = 0,
  /**
   * The search finished without finding a witness.
   */
  SR_STATUS_NONE = 1,
  /**
   * A node or time cap was reached.
   */
  SR_STATUS_RESOURCE = 2,
  /**
   * Bad input: a null pointer, unparsable text or an element outside a colouring.
   */
  SR_STATUS_INPUT = 3,
  /**
   * The library panicked; this is a bug.
   */
  SR_STATUS_INTERNAL = 4,
} SrStatus;

/**
 * A colouring bound to the group it was parsed for.
 */
typedef struct SrColoring SrColoring;

/**
 * A parsed group.
 */
typedef struct SrGroup SrGroup;

/**
 * A witness found by [`sr_find_witness`].
 */
typedef struct SrWitness SrWitness;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failed call on this thread, or null. The
 * pointer stays valid until the next library call on the same thread.
 */
const char *sr_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a pointer obtained from this library and not yet freed.
 */
void sr_string_free(char *s);

/**
 * Parses a group spec such as `"Z/4 Z/4 Z"` into `*out`.
 *
 * # Safety
 * `spec` must be a valid C string and `out` a valid pointer.
 */
enum SrStatus sr_group_parse(const char *spec, struct SrGroup **out);

/**
 * Number of factors of `group`, or 0 for null.
 *
 * # Safety
 * `group` must be null or a live handle.
 */
size_t sr_group_rank(const struct SrGroup *group);

/**
 * # Safety
 * `group` must be null or a handle from [`sr_group_parse`] not yet freed.
 */
void sr_group_free(struct SrGroup *group);

/**
 * Parses a colouring for `group`: rule text (`"support"`, `"random 3 7"`,
 * ...) or a colouring file path. `bound` fills in rules that need one.
 *
 * # Safety
 * `group` must be a live handle, `text` a valid C string, `out` a valid pointer.
 */
enum SrStatus sr_coloring_parse(const struct SrGroup *group,
                                const char *text,
                                uint64_t bound,
                                struct SrColoring **out);

/**
 * # Safety
 * `coloring` must be null or a handle from [`sr_coloring_parse`] not yet freed.
 */
void sr_coloring_free(struct SrColoring *coloring);

/**
 * Checks whether `X + X` is monochromatic for the `count` comma-separated
 * elements in `elements`. Writes the verdict to `*out_mono` and, when it
 * holds and `out_color` is non-null, the colour as a new string.
 *
 * # Safety
 * `coloring` must be a live handle, `elements` must point to `count` valid
 * C strings, and the out pointers must be valid or (for `out_color`) null.
 */
enum SrStatus sr_verify_witness(const struct SrColoring *coloring,
                                const char *const *elements,
                                size_t count,
                                bool *out_mono,
                                char **out_color);

/**
 * Searches the fragment of the colouring's group with `Z` coordinates in
 * `[-bound, bound]` for the least `n`-element witness. Returns
 * [`SrStatus::Ok`] with `*out` set, [`SrStatus::None`] after an exhaustive
 * search, or [`SrStatus::Resource`] when `node_limit` (0 for the default)
 * is reached.
 *
 * # Safety
 * `coloring` must be a live handle and `out` a valid pointer.
 */
enum SrStatus sr_find_witness(const struct SrColoring *coloring,
                              uint64_t bound,
                              size_t n,
                              uint64_t node_limit,
                              struct SrWitness **out);

/**
 * Number of elements in `witness`, or 0 for null.
 *
 * # Safety
 * `witness` must be null or a live handle.
 */
size_t sr_witness_len(const struct SrWitness *witness);

/**
 * Element `index` of `witness` as comma-separated coordinates, or null when
 * out of range. Free with [`sr_string_free`].
 *
 * # Safety
 * `witness` must be null or a live handle.
 */
char *sr_witness_element(const struct SrWitness *witness, size_t index);

/**
 * The common colour of `X + X`. Free with [`sr_string_free`].
 *
 * # Safety
 * `witness` must be null or a live handle.
 */
char *sr_witness_color(const struct SrWitness *witness);

/**
 * # Safety
 * `witness` must be null or a handle from [`sr_find_witness`] not yet freed.
 */
void sr_witness_free(struct SrWitness *witness);

/**
 * Runs the command line with `argc` arguments (not including the program
 * name) and returns its exit code. The report is written to `*out_report`
 * when that is non-null.
 *
 * # Safety
 * `argv` must point to `argc` valid C strings; `out_report` must be valid or null.
 */
int32_t sr_run(size_t argc, const char *const *argv, char **out_report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUMSET_RAMSEY_H */
