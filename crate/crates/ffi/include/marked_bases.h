#ifndef MARKED_BASES_H
#define MARKED_BASES_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result of a call. `MB_STATUS_NEGATIVE` is a valid mathematical answer
 such as "not a marked basis".
 */
typedef enum MbStatus {
  MB_STATUS_OK = 0,
  MB_STATUS_NEGATIVE = 1,
  MB_STATUS_INVALID_INPUT = 2,
  MB_STATUS_NULL_POINTER = 3,
  MB_STATUS_INTERNAL = 4,
} MbStatus;

/*
 A parsed input document.
 */
typedef struct MbDocument MbDocument;

/*
 A free resolution with rational coefficients.
 */
typedef struct MbResolution MbResolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Parses an input document. On success `*out` owns a new handle.

 # Safety
 `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum MbStatus mb_document_parse(const char *text, struct MbDocument **out);

/*
 Releases a document; null is ignored.

 # Safety
 `doc` must come from [`mb_document_parse`] and not be used afterwards.
 */
void mb_document_free(struct MbDocument *doc);

/*
 Number of named objects in the document.

 # Safety
 `doc` must be a live handle and `out` a valid pointer.
 */
enum MbStatus mb_document_object_count(const struct MbDocument *doc, size_t *out);

/*
 Canonical text of the document, accepted by [`mb_document_parse`].

 # Safety
 `doc` must be a live handle and `out` a valid pointer.
 */
enum MbStatus mb_document_to_string(const struct MbDocument *doc, char **out);

/*
 Tests whether the marked set `name` (null: the last object) is a marked
 basis. Returns `MB_STATUS_OK` for a basis and `MB_STATUS_NEGATIVE`
 otherwise; in that case `*certificate`, if `certificate` is not null,
 receives a description of a prolongation with non-zero normal form.

 # Safety
 `doc` must be a live handle; `name` null or a NUL-terminated string;
 `certificate` null or a valid pointer.
 */
enum MbStatus mb_check_marked_basis(const struct MbDocument *doc,
                                    const char *name,
                                    char **certificate);

/*
 Resolves the object `name` (null: the last object): a marked basis, or
 a quasi-stable monomial module through its Pommaret basis. Returns
 `MB_STATUS_NEGATIVE` when the marked set is not a basis or the module
 is not quasi-stable.

 # Safety
 `doc` must be a live handle; `name` null or a NUL-terminated string;
 `out` a valid pointer.
 */
enum MbStatus mb_resolve(const struct MbDocument *doc,
                         const char *name,
                         bool minimize,
                         struct MbResolution **out);

/*
 Releases a resolution; null is ignored.

 # Safety
 `r` must come from this library and not be used afterwards.
 */
void mb_resolution_free(struct MbResolution *r);

/*
 Index of the last free module.

 # Safety
 `r` must be a live handle and `out` a valid pointer.
 */
enum MbStatus mb_resolution_length(const struct MbResolution *r, size_t *out);

/*
 Number of generators of `F_level` of degree `degree`.

 # Safety
 `r` must be a live handle and `out` a valid pointer.
 */
enum MbStatus mb_resolution_rank(const struct MbResolution *r,
                                 size_t level,
                                 int64_t degree,
                                 size_t *out);

/*
 JSON form of the resolution.

 # Safety
 `r` must be a live handle and `out` a valid pointer.
 */
enum MbStatus mb_resolution_to_json(const struct MbResolution *r, char **out);

/*
 Rebuilds a resolution from its JSON form.

 # Safety
 `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum MbStatus mb_resolution_from_json(const char *json, struct MbResolution **out);

/*
 Releases a string returned by the library; null is ignored.

 # Safety
 `s` must come from this library and not be used afterwards.
 */
void mb_string_free(char *s);

/*
 Message of the last failed call on this thread, or the empty string.
 The pointer stays valid until the next call on the same thread.
 */
const char *mb_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MARKED_BASES_H */
