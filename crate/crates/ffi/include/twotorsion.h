#ifndef TWOTORSION_H
#define TWOTORSION_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TtStatus {
  TT_STATUS_OK = 0,
  TT_STATUS_NULL_POINTER = 1,
  TT_STATUS_INVALID_UTF8 = 2,
  TT_STATUS_PARSE = 3,
  TT_STATUS_INVALID_POLYGON = 4,
  TT_STATUS_INADMISSIBLE = 5,
  TT_STATUS_DEGENERATE = 6,
  TT_STATUS_FIELD = 7,
  TT_STATUS_CAP = 8,
  TT_STATUS_CONFIG = 9,
  TT_STATUS_BUFFER_TOO_SMALL = 10,
  TT_STATUS_DOMAIN = 11,
  TT_STATUS_PANIC = 12,
} TtStatus;

typedef enum TtClass {
  TT_CLASS_NO_HALF_CANONICAL = 0,
  TT_CLASS_EXCLUDED = 1,
  TT_CLASS_ADMISSIBLE = 2,
} TtClass;

typedef struct TtCurve TtCurve;

typedef struct TtPolygon TtPolygon;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Static, NUL-terminated name of a status code.
const char *tt_status_name(enum TtStatus status);

// Message of the last failure on this thread.
//
// # Safety
// `buf` must be valid for `cap` bytes or null; `needed` must be valid or null.
enum TtStatus tt_last_error(char *buf, size_t cap, size_t *needed);

// Polygon from `"i,j;i,j;..."` vertex text.
//
// # Safety
// `vertices` must be a NUL-terminated string and `out` a valid pointer.
enum TtStatus tt_polygon_from_vertices(const char *vertices, struct TtPolygon **out);

// Polygon from a preset name: `S<i>`, `H<g>`, `E` or `T<d>`.
//
// # Safety
// `name` must be a NUL-terminated string and `out` a valid pointer.
enum TtStatus tt_polygon_from_preset(const char *name, struct TtPolygon **out);

// # Safety
// `p` must come from a `tt_polygon_` constructor and not be used afterwards.
void tt_polygon_free(struct TtPolygon *p);

// # Safety
// `p` must be a live polygon handle and `out` a valid pointer.
enum TtStatus tt_polygon_genus(const struct TtPolygon *p, size_t *out);

// Number of interior lattice points solving every edge congruence.
//
// # Safety
// `p` must be a live polygon handle and `out` a valid pointer.
enum TtStatus tt_polygon_rho(const struct TtPolygon *p, size_t *out);

// # Safety
// `p` must be a live polygon handle and `out` a valid pointer.
enum TtStatus tt_polygon_classify(const struct TtPolygon *p, enum TtClass *out);

// Curve from its JSON document.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum TtStatus tt_curve_from_json(const char *json, struct TtCurve **out);

// # Safety
// `c` must come from [`tt_curve_from_json`] and not be used afterwards.
void tt_curve_free(struct TtCurve *c);

// Canonical JSON document of the curve.
//
// # Safety
// `c` must be a live curve handle; `buf` valid for `cap` bytes or null;
// `needed` valid or null.
enum TtStatus tt_curve_to_json(const struct TtCurve *c, char *buf, size_t cap, size_t *needed);

// Genus of the Newton polygon.
//
// # Safety
// `c` must be a live curve handle and `out` a valid pointer.
enum TtStatus tt_curve_genus(const struct TtCurve *c, size_t *out);

// # Safety
// `c` must be a live curve handle and `out` a valid pointer.
enum TtStatus tt_curve_is_nondegenerate(const struct TtCurve *c, bool *out);

// Whether the curve is non-degenerate on `delta` with a nonzero
// coefficient at some solution of its edge congruences.
//
// # Safety
// `c` and `delta` must be live handles and `out` a valid pointer.
enum TtStatus tt_curve_in_s_delta(const struct TtCurve *c,
                                  const struct TtPolygon *delta,
                                  bool *out);

// Rank of the Hasse-Witt matrix. Fails with `Degenerate` on degenerate curves.
//
// # Safety
// `c` must be a live curve handle and `out` a valid pointer.
enum TtStatus tt_curve_hw_rank(const struct TtCurve *c, size_t *out);

// 2-rank of the Jacobian.
//
// # Safety
// `c` must be a live curve handle and `out` a valid pointer.
enum TtStatus tt_curve_two_rank(const struct TtCurve *c, size_t *out);

// Whether the Jacobian has a rational point of order 2.
//
// # Safety
// `c` must be a live curve handle and `out` a valid pointer.
enum TtStatus tt_curve_has_2torsion(const struct TtCurve *c, bool *out);

// Census over GF(2^r) on a preset polygon with the default method:
// `samples` draws from `seed`, reporting the non-degenerate draws and
// those with rational 2-torsion.
//
// # Safety
// `preset` must be a NUL-terminated string; the out-pointers must be valid.
enum TtStatus tt_census(const char *preset,
                        uint32_t r,
                        size_t samples,
                        uint64_t seed,
                        size_t *nondegenerate,
                        size_t *with_2torsion);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TWOTORSION_H */
