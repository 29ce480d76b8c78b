/*
 * unipsd C API.
 *
 * Recognition, certificates, structured factorizations and numerical checks
 * for Hermitian positive semidefinite matrices whose entries have modulus 0
 * or 1.
 *
 * Conventions:
 *  - Objects are opaque handles released with the matching _free function.
 *    Freeing NULL is a no-op.
 *  - Every fallible call returns a unipsd_status. On anything other than
 *    UNIPSD_OK / UNIPSD_FAIL / UNIPSD_OUT_OF_CLASS the output handles are left
 *    untouched and unipsd_last_error() describes the problem (per thread).
 *  - Strings returned through char** are heap allocated, NUL terminated, and
 *    must be released with unipsd_string_free.
 *  - Matrix indices passed to or from this API are 0-based; indices inside
 *    JSON documents and Matrix Market files are 1-based.
 *  - Complex arrays are interleaved (re, im) doubles.
 */
#ifndef UNIPSD_H
#define UNIPSD_H

#include <stddef.h>
#include <stdint.h>

#if defined(UNIPSD_BUILDING_LIBRARY)
#define UNIPSD_API __attribute__((visibility("default")))
#else
#define UNIPSD_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* The first five values double as the command-line exit codes. */
typedef enum unipsd_status {
  UNIPSD_OK = 0,            /* accepted / PSD / check passed */
  UNIPSD_FAIL = 1,          /* not PSD / check failed */
  UNIPSD_OUT_OF_CLASS = 2,  /* an entry modulus is neither 0 nor 1 */
  UNIPSD_NOT_HERMITIAN = 3,
  UNIPSD_IO_ERROR = 4,
  UNIPSD_INVALID_ARGUMENT = 5,
  UNIPSD_MALFORMED_CERTIFICATE = 6,
  UNIPSD_INTERNAL_ERROR = 7
} unipsd_status;

typedef struct unipsd_tolerance {
  double eps_mod;      /* modulus band around 0 and 1 (default 1e-8) */
  double eps_herm;     /* allowed |a_ij - conj(a_ji)| (default 1e-10) */
  double eps_rank;     /* relative numerical-rank cutoff (default 1e-10) */
  double eps_residual; /* factorization residual per dimension (default 1e-10) */
} unipsd_tolerance;

typedef enum unipsd_phase_alphabet {
  UNIPSD_PHASES_UNIFORM = 0,
  UNIPSD_PHASES_ROOTS4 = 1,
  UNIPSD_PHASES_ROOTS8 = 2,
  UNIPSD_PHASES_SIGNS = 3,
  UNIPSD_PHASES_ONE = 4
} unipsd_phase_alphabet;

typedef struct unipsd_gen_params {
  size_t min_block_size; /* >= 1 */
  size_t max_block_size; /* 0 means n */
  double zero_fraction;  /* probability an index joins the zero set, [0, 1) */
  int alphabet;          /* unipsd_phase_alphabet */
} unipsd_gen_params;

typedef enum unipsd_mutation_kind {
  UNIPSD_MUTATE_PHASE_FLIP = 0,
  UNIPSD_MUTATE_EDGE_DELETE = 1,
  UNIPSD_MUTATE_DIAG_NEGATE = 2,
  UNIPSD_MUTATE_DIAG_ZERO = 3
} unipsd_mutation_kind;

typedef enum unipsd_factor_kind { UNIPSD_FACTOR_LU = 0, UNIPSD_FACTOR_CHOLESKY = 1 } unipsd_factor_kind;

typedef enum unipsd_psrp_mode { UNIPSD_PSRP_EXHAUSTIVE = 0, UNIPSD_PSRP_SAMPLED = 1 } unipsd_psrp_mode;

/* Read flags. */
#define UNIPSD_READ_HERMITIAN 0 /* validate and symmetrize; NOT_HERMITIAN on failure */
#define UNIPSD_READ_GENERAL 1   /* keep a non-Hermitian matrix as is */

typedef struct unipsd_matrix unipsd_matrix;
typedef struct unipsd_certificate unipsd_certificate;

UNIPSD_API const char* unipsd_version(void);
UNIPSD_API const char* unipsd_status_string(unipsd_status status);
/* Verdict name used in reports: accepted, not_psd, out_of_class, ... */
UNIPSD_API const char* unipsd_verdict_string(unipsd_status status);
UNIPSD_API const char* unipsd_last_error(void);
UNIPSD_API void unipsd_string_free(char* s);
UNIPSD_API void unipsd_tolerance_default(unipsd_tolerance* out);
UNIPSD_API void unipsd_gen_params_default(unipsd_gen_params* out);

/* ---- matrices ---------------------------------------------------------- */

/* `re_im` holds n*n interleaved complex entries, row-major. tol may be NULL. */
UNIPSD_API unipsd_status unipsd_matrix_from_dense(size_t n, const double* re_im,
                                                  const unipsd_tolerance* tol, int flags,
                                                  unipsd_matrix** out);
UNIPSD_API unipsd_status unipsd_matrix_read_file(const char* path, const unipsd_tolerance* tol,
                                                 int flags, unipsd_matrix** out);
UNIPSD_API unipsd_status unipsd_matrix_parse(const char* text, size_t len,
                                             const unipsd_tolerance* tol, int flags,
                                             unipsd_matrix** out);
UNIPSD_API void unipsd_matrix_free(unipsd_matrix* m);
UNIPSD_API size_t unipsd_matrix_dim(const unipsd_matrix* m);
UNIPSD_API int unipsd_matrix_is_hermitian(const unipsd_matrix* m);
UNIPSD_API unipsd_status unipsd_matrix_get(const unipsd_matrix* m, size_t i, size_t j, double* re,
                                           double* im);
/* Matrix Market text (complex hermitian, lower triangle). */
UNIPSD_API unipsd_status unipsd_matrix_to_mtx(const unipsd_matrix* m, char** out);
/* Re(x^* A x); x has `len` interleaved complex entries. */
UNIPSD_API unipsd_status unipsd_quadratic_form(const unipsd_matrix* m, const double* x_re_im,
                                               size_t len, double* out);

/* ---- recognition ------------------------------------------------------- */

/* Returns UNIPSD_OK (accepted), UNIPSD_FAIL (not PSD) or UNIPSD_OUT_OF_CLASS.
 * `cert` (optional) receives the certificate on acceptance; `report_json`
 * (optional) receives the run report in every one of those three cases.
 * binary != 0 restricts the class to real (0,1) matrices. */
UNIPSD_API unipsd_status unipsd_recognize(const unipsd_matrix* a, int binary,
                                          unipsd_certificate** cert, char** report_json);

/* Reads, validates and recognizes a Matrix Market file. A run report is
 * produced for every verdict, including io_error and not_hermitian. */
UNIPSD_API unipsd_status unipsd_check_file(const char* path, const unipsd_tolerance* tol,
                                           int binary, unipsd_certificate** cert,
                                           char** report_json);

/* ---- certificates ------------------------------------------------------ */

UNIPSD_API void unipsd_certificate_free(unipsd_certificate* c);
/* params and tol may be NULL for defaults. */
UNIPSD_API unipsd_status unipsd_certificate_generate(size_t n, uint64_t seed,
                                                     const unipsd_gen_params* params,
                                                     const unipsd_tolerance* tol,
                                                     unipsd_certificate** out);
UNIPSD_API unipsd_status unipsd_certificate_from_json(const char* text, size_t len,
                                                      unipsd_certificate** out);
UNIPSD_API unipsd_status unipsd_certificate_to_json(const unipsd_certificate* c, char** out);
UNIPSD_API size_t unipsd_certificate_dim(const unipsd_certificate* c);
UNIPSD_API size_t unipsd_certificate_block_count(const unipsd_certificate* c);
UNIPSD_API int unipsd_certificate_is_canonical(const unipsd_certificate* c);
UNIPSD_API unipsd_status unipsd_certificate_canonicalize(const unipsd_certificate* c,
                                                         unipsd_certificate** out);
UNIPSD_API unipsd_status unipsd_certificate_reconstruct(const unipsd_certificate* c,
                                                        unipsd_matrix** out);
/* UNIPSD_OK when reconstruct(c) matches `a` within eps_mod, else UNIPSD_FAIL. */
UNIPSD_API unipsd_status unipsd_certificate_verify(const unipsd_certificate* c,
                                                   const unipsd_matrix* a, char** report_json);

/* ---- factorizations ---------------------------------------------------- */

/* Structured factors of a canonical certificate, verified against `a`
 * (or against reconstruct(c) when a is NULL). UNIPSD_OK iff verification
 * passes. */
UNIPSD_API unipsd_status unipsd_factor(const unipsd_certificate* c, const unipsd_matrix* a,
                                       int kind, char** doc_json);

/* ---- numerical oracle -------------------------------------------------- */

/* UNIPSD_OK if PSD, UNIPSD_FAIL otherwise. */
UNIPSD_API unipsd_status unipsd_oracle(const unipsd_matrix* a, char** doc_json);
/* UNIPSD_OK if every checked subset satisfies both rank conditions. */
UNIPSD_API unipsd_status unipsd_psrp(const unipsd_matrix* a, int mode, size_t samples,
                                     uint64_t seed, char** doc_json);
/* *holds = 1 when every null vector of A[s,s], zero extended, is a null
 * vector of A. */
UNIPSD_API unipsd_status unipsd_null_extension(const unipsd_matrix* a, const size_t* subset,
                                               size_t len, int* holds);

/* ---- negative-case generation ------------------------------------------ */

/* row/col (optional) receive the 0-based mutation site. */
UNIPSD_API unipsd_status unipsd_mutate(const unipsd_matrix* a, uint64_t seed, int kind,
                                       unipsd_matrix** out, size_t* row, size_t* col);

#ifdef __cplusplus
}
#endif

#endif /* UNIPSD_H */
