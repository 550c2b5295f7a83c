#ifndef STOKES_GAUSS_H
#define STOKES_GAUSS_H

#include <stdint.h>

#if defined(_WIN32)
#  if defined(SG_BUILDING_LIBRARY)
#    define SG_API __declspec(dllexport)
#  else
#    define SG_API __declspec(dllimport)
#  endif
#else
#  define SG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct sg_document sg_document;

typedef enum sg_status {
    SG_OK = 0,
    SG_ERR_DEGENERATE_PAIR = 1,
    SG_ERR_NON_GENERIC_DIRECTION = 2,
    SG_ERR_MONODROMY_NOT_IDENTITY = 3,
    SG_ERR_NOT_OPPOSITE = 4,
    SG_ERR_NOT_EXTREME = 5,
    SG_ERR_INCOMPATIBLE_LAYOUTS = 6,
    SG_ERR_EXPONENT_NOT_IN_C = 7,
    SG_ERR_ZERO_EXPONENT = 8,
    SG_ERR_NOT_ALIGNED = 9,
    SG_ERR_NOT_CANONICAL_THETA = 10,
    SG_ERR_NOT_PURE = 11,
    SG_ERR_EVEN_PARITY = 12,
    SG_ERR_DEGENERATE_PENCIL = 13,
    SG_ERR_GENERATION_FAILED = 14,
    SG_ERR_GLUING_VIOLATION = 15,
    SG_ERR_PARSE = 16,
    SG_ERR_INVARIANT = 17,
    SG_ERR_DIMENSION_MISMATCH = 18,
    SG_ERR_NO_SOLUTION = 19,
    SG_ERR_NON_RATIONAL_MODULUS = 20,
    SG_ERR_INVALID_DATA = 21,
    SG_ERR_INVALID_ARGUMENT = 100,
    SG_ERR_INTERNAL = 101
} sg_status;

SG_API const char* sg_version(void);
SG_API const char* sg_status_name(sg_status status);

/* per-thread; valid until the next failing call on the same thread */
SG_API const char* sg_last_error(void);
SG_API const char* sg_last_error_path(void);
/* {"error": {"code", "message", "path"}} */
SG_API const char* sg_last_error_json(void);

/* strings returned through char** are owned by the caller */
SG_API void sg_string_free(char* s);

SG_API sg_status sg_document_parse(const char* text, sg_document** out);
SG_API void sg_document_free(sg_document* doc);
SG_API sg_status sg_document_serialize(const sg_document* doc, char** out);
SG_API sg_status sg_document_kind(const sg_document* doc, const char** kind);

/* *valid = 1 when no invariant is violated; report is a report document */
SG_API sg_status sg_validate(const sg_document* doc, int* valid, char** report);

SG_API sg_status sg_normalize(const sg_document* doc, sg_document** out);
SG_API sg_status sg_to_filtrations(const sg_document* doc, sg_document** out);
SG_API sg_status sg_to_matrices(const sg_document* doc, sg_document** out);
/* result has the same kind as the input */
SG_API sg_status sg_laplace(const sg_document* doc, int inverse, sg_document** out);

/* cohomology of L_{<=c0}, or L_{<c0} when strict is nonzero; c0 as "p/q" or "a+bi" */
SG_API sg_status sg_cohomology(const sg_document* doc, const char* c0, int strict, long* h0, long* h1, long* chi);
SG_API sg_status sg_disc_cohomology(const sg_document* doc, long* h0, long* h1, long* h2);
SG_API sg_status sg_rigidity(const sg_document* doc, long* rig, int* rigid);
/* JSON object {"nu", "pieces": [{"exponent", "basis"}]} with bases in the coordinates of L */
SG_API sg_status sg_splitting(const sg_document* doc, int nu, char** out);

/* aligned != 0 draws exponents on a ray at the canonical direction */
SG_API sg_status sg_gen_random(int n, const int* ranks, uint64_t seed, int aligned, sg_document** out);

SG_API sg_status sg_verify_laplace(const sg_document* doc, int* pass, char** report);
/* generates `samples` aligned datasets from `seed` and verifies each */
SG_API sg_status sg_verify_laplace_random(int samples, uint64_t seed, int* pass, char** report);

#ifdef __cplusplus
}
#endif

#endif
