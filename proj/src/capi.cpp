#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "unipsd/certificate.hpp"
#include "unipsd/factorizer.hpp"
#include "unipsd/io.hpp"
#include "unipsd/oracle.hpp"
#include "unipsd/recognizer.hpp"
#include "unipsd/unipsd.h"

struct unipsd_matrix {
  unipsd::DenseMatrix raw;
  std::optional<unipsd::HermitianMatrix> hermitian;
  unipsd::ToleranceConfig tol;
};

struct unipsd_certificate {
  unipsd::Certificate cert;
};

namespace {

using namespace unipsd;

thread_local std::string g_last_error;

// A handle read with UNIPSD_READ_GENERAL that failed Hermitian validation.
class NonHermitianHandle : public std::runtime_error {
 public:
  NonHermitianHandle() : std::runtime_error("operation needs a Hermitian matrix") {}
};

unipsd_status fail(unipsd_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <class F>
unipsd_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const io::IoError& e) {
    return fail(UNIPSD_IO_ERROR, e.what());
  } catch (const NotHermitianError& e) {
    return fail(UNIPSD_NOT_HERMITIAN, e.what());
  } catch (const NonHermitianHandle& e) {
    return fail(UNIPSD_NOT_HERMITIAN, e.what());
  } catch (const MalformedCertificate& e) {
    return fail(UNIPSD_MALFORMED_CERTIFICATE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(UNIPSD_INVALID_ARGUMENT, e.what());
  } catch (const std::out_of_range& e) {
    return fail(UNIPSD_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(UNIPSD_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(UNIPSD_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(UNIPSD_INTERNAL_ERROR, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put_string(char** out, const std::string& s) {
  if (out != nullptr) *out = dup_string(s);
}

ToleranceConfig tolerance_from(const unipsd_tolerance* t) {
  ToleranceConfig tol;
  if (t != nullptr) tol = {t->eps_mod, t->eps_herm, t->eps_rank, t->eps_residual};
  tol.validate();
  return tol;
}

#define UNIPSD_REQUIRE(cond, msg) \
  if (!(cond)) return fail(UNIPSD_INVALID_ARGUMENT, msg)

unipsd_matrix* make_matrix(DenseMatrix raw, const ToleranceConfig& tol, int flags) {
  auto m = std::make_unique<unipsd_matrix>();
  m->tol = tol;
  if (flags & UNIPSD_READ_GENERAL) {
    if (!all_finite(raw)) throw std::invalid_argument("matrix has non-finite entries");
    try {
      m->hermitian = validate_hermitian(raw, tol);
    } catch (const NotHermitianError&) {
    }
  } else {
    m->hermitian = validate_hermitian(raw, tol);
  }
  m->raw = m->hermitian ? m->hermitian->dense() : std::move(raw);
  return m.release();
}

unipsd_matrix* wrap(const HermitianMatrix& h) {
  auto m = std::make_unique<unipsd_matrix>();
  m->raw = h.dense();
  m->hermitian = h;
  m->tol = h.tolerance();
  return m.release();
}

const HermitianMatrix& hermitian_of(const unipsd_matrix* m) {
  if (!m->hermitian) throw NonHermitianHandle();
  return *m->hermitian;
}

unipsd_status status_of(io::Verdict v) {
  switch (v) {
    case io::Verdict::Accepted: return UNIPSD_OK;
    case io::Verdict::NotPsd: return UNIPSD_FAIL;
    case io::Verdict::OutOfClass: return UNIPSD_OUT_OF_CLASS;
    case io::Verdict::NotHermitian: return UNIPSD_NOT_HERMITIAN;
    case io::Verdict::IoError: return UNIPSD_IO_ERROR;
  }
  return UNIPSD_INTERNAL_ERROR;
}

unipsd_status finish_recognition(const HermitianMatrix& a, int binary, unipsd_certificate** cert,
                                 char** report_json) {
  const Recognition r = binary ? recognize_binary(a) : recognize(a);
  const io::RunReport rep = io::make_report(r, a);
  put_string(report_json, io::emit(rep));
  if (cert != nullptr && rep.certificate) *cert = new unipsd_certificate{*rep.certificate};
  return status_of(rep.verdict);
}

}  // namespace

extern "C" {

const char* unipsd_version(void) { return "1.0.0"; }

const char* unipsd_status_string(unipsd_status status) {
  switch (status) {
    case UNIPSD_OK: return "ok";
    case UNIPSD_FAIL: return "fail";
    case UNIPSD_OUT_OF_CLASS: return "out of class";
    case UNIPSD_NOT_HERMITIAN: return "not Hermitian";
    case UNIPSD_IO_ERROR: return "I/O error";
    case UNIPSD_INVALID_ARGUMENT: return "invalid argument";
    case UNIPSD_MALFORMED_CERTIFICATE: return "malformed certificate";
    case UNIPSD_INTERNAL_ERROR: return "internal error";
  }
  return "unknown status";
}

const char* unipsd_verdict_string(unipsd_status status) {
  switch (status) {
    case UNIPSD_OK: return "accepted";
    case UNIPSD_FAIL: return "not_psd";
    case UNIPSD_OUT_OF_CLASS: return "out_of_class";
    case UNIPSD_NOT_HERMITIAN: return "not_hermitian";
    default: return "io_error";
  }
}

const char* unipsd_last_error(void) { return g_last_error.c_str(); }

void unipsd_string_free(char* s) { std::free(s); }

void unipsd_tolerance_default(unipsd_tolerance* out) {
  if (out == nullptr) return;
  const ToleranceConfig t;
  *out = {t.eps_mod, t.eps_herm, t.eps_rank, t.eps_residual};
}

void unipsd_gen_params_default(unipsd_gen_params* out) {
  if (out == nullptr) return;
  const GeneratorParams p;
  *out = {p.min_block_size, p.max_block_size, p.zero_fraction, UNIPSD_PHASES_UNIFORM};
}

unipsd_status unipsd_matrix_from_dense(size_t n, const double* re_im, const unipsd_tolerance* tol,
                                       int flags, unipsd_matrix** out) {
  return guarded([&] {
    UNIPSD_REQUIRE(out != nullptr && (re_im != nullptr || n == 0), "null argument");
    DenseMatrix raw(n, n);
    for (size_t k = 0; k < n * n; ++k) raw(k / n, k % n) = Complex{re_im[2 * k], re_im[2 * k + 1]};
    *out = make_matrix(std::move(raw), tolerance_from(tol), flags);
    return UNIPSD_OK;
  });
}

unipsd_status unipsd_matrix_read_file(const char* path, const unipsd_tolerance* tol, int flags,
                                      unipsd_matrix** out) {
  return guarded([&] {
    UNIPSD_REQUIRE(path != nullptr && out != nullptr, "null argument");
    const ToleranceConfig t = tolerance_from(tol);
    *out = make_matrix(io::read_general_matrix_file(path), t, flags);
    return UNIPSD_OK;
  });
}

unipsd_status unipsd_matrix_parse(const char* text, size_t len, const unipsd_tolerance* tol,
                                  int flags, unipsd_matrix** out) {
  return guarded([&] {
    UNIPSD_REQUIRE(text != nullptr && out != nullptr, "null argument");
    const ToleranceConfig t = tolerance_from(tol);
    std::istringstream in{std::string(text, len)};
    *out = make_matrix(io::read_matrix_document(in).to_dense(), t, flags);
    return UNIPSD_OK;
  });
}

void unipsd_matrix_free(unipsd_matrix* m) { delete m; }

size_t unipsd_matrix_dim(const unipsd_matrix* m) { return m == nullptr ? 0 : m->raw.rows(); }

int unipsd_matrix_is_hermitian(const unipsd_matrix* m) { return m != nullptr && m->hermitian ? 1 : 0; }

unipsd_status unipsd_matrix_get(const unipsd_matrix* m, size_t i, size_t j, double* re, double* im) {
  return guarded([&] {
    UNIPSD_REQUIRE(m != nullptr && re != nullptr && im != nullptr, "null argument");
    UNIPSD_REQUIRE(i < m->raw.rows() && j < m->raw.cols(), "index out of range");
    *re = m->raw(i, j).real();
    *im = m->raw(i, j).imag();
    return UNIPSD_OK;
  });
}

unipsd_status unipsd_matrix_to_mtx(const unipsd_matrix* m, char** out) {
  return guarded([&] {
    UNIPSD_REQUIRE(m != nullptr && out != nullptr, "null argument");
    *out = dup_string(io::write_matrix(hermitian_of(m)));
    return UNIPSD_OK;
  });
}

unipsd_status unipsd_quadratic_form(const unipsd_matrix* m, const double* x_re_im, size_t len,
                                    double* out) {
  return guarded([&] {
    UNIPSD_REQUIRE(m != nullptr && out != nullptr && (x_re_im != nullptr || len == 0), "null argument");
    std::vector<Complex> x(len);
    for (size_t k = 0; k < len; ++k) x[k] = Complex{x_re_im[2 * k], x_re_im[2 * k + 1]};
    *out = quadratic_form(hermitian_of(m), x);
    return UNIPSD_OK;
  });
}

unipsd_status unipsd_recognize(const unipsd_matrix* a, int binary, unipsd_certificate** cert,
                               char** report_json) {
  return guarded([&] {
    UNIPSD_REQUIRE(a != nullptr, "null argument");
    return finish_recognition(hermitian_of(a), binary, cert, report_json);
  });
}

unipsd_status unipsd_check_file(const char* path, const unipsd_tolerance* tol, int binary,
                                unipsd_certificate** cert, char** report_json) {
  return guarded([&]() -> unipsd_status {
    UNIPSD_REQUIRE(path != nullptr, "null argument");
    const ToleranceConfig t = tolerance_from(tol);
    HermitianMatrix a;
    try {
      a = io::read_matrix_file(path, t);
    } catch (const io::IoError& e) {
      put_string(report_json, io::emit(io::make_report(e, t)));
      return fail(UNIPSD_IO_ERROR, e.what());
    } catch (const NotHermitianError& e) {
      put_string(report_json, io::emit(io::make_report(e, t)));
      return fail(UNIPSD_NOT_HERMITIAN, e.what());
    }
    return finish_recognition(a, binary, cert, report_json);
  });
}

void unipsd_certificate_free(unipsd_certificate* c) { delete c; }

unipsd_status unipsd_certificate_generate(size_t n, uint64_t seed, const unipsd_gen_params* params,
                                          const unipsd_tolerance* tol, unipsd_certificate** out) {
  return guarded([&] {
    UNIPSD_REQUIRE(out != nullptr, "null argument");
    GeneratorParams p;
    if (params != nullptr) {
      UNIPSD_REQUIRE(params->alphabet >= UNIPSD_PHASES_UNIFORM && params->alphabet <= UNIPSD_PHASES_ONE,
                     "unknown phase alphabet");
      p.min_block_size = params->min_block_size;
      p.max_block_size = params->max_block_size;
      p.zero_fraction = params->zero_fraction;
      p.alphabet = static_cast<PhaseAlphabet>(params->alphabet);
    }
    p.tolerance = tolerance_from(tol);
    *out = new unipsd_certificate{random_certificate(n, seed, p)};
    return UNIPSD_OK;
  });
}

unipsd_status unipsd_certificate_from_json(const char* text, size_t len, unipsd_certificate** out) {
  return guarded([&] {
    UNIPSD_REQUIRE(text != nullptr && out != nullptr, "null argument");
    *out = new unipsd_certificate{io::parse_certificate(std::string_view(text, len))};
    return UNIPSD_OK;
  });
}

unipsd_status unipsd_certificate_to_json(const unipsd_certificate* c, char** out) {
  return guarded([&] {
    UNIPSD_REQUIRE(c != nullptr && out != nullptr, "null argument");
    *out = dup_string(io::emit(c->cert));
    return UNIPSD_OK;
  });
}

size_t unipsd_certificate_dim(const unipsd_certificate* c) { return c == nullptr ? 0 : c->cert.n; }

size_t unipsd_certificate_block_count(const unipsd_certificate* c) {
  return c == nullptr ? 0 : c->cert.blocks.size();
}

int unipsd_certificate_is_canonical(const unipsd_certificate* c) {
  return c != nullptr && c->cert.is_canonical() ? 1 : 0;
}

unipsd_status unipsd_certificate_canonicalize(const unipsd_certificate* c, unipsd_certificate** out) {
  return guarded([&] {
    UNIPSD_REQUIRE(c != nullptr && out != nullptr, "null argument");
    *out = new unipsd_certificate{canonicalize(c->cert)};
    return UNIPSD_OK;
  });
}

unipsd_status unipsd_certificate_reconstruct(const unipsd_certificate* c, unipsd_matrix** out) {
  return guarded([&] {
    UNIPSD_REQUIRE(c != nullptr && out != nullptr, "null argument");
    *out = wrap(reconstruct(c->cert));
    return UNIPSD_OK;
  });
}

unipsd_status unipsd_certificate_verify(const unipsd_certificate* c, const unipsd_matrix* a,
                                        char** report_json) {
  return guarded([&] {
    UNIPSD_REQUIRE(c != nullptr && a != nullptr, "null argument");
    const CertificateCheck check = verify(c->cert, hermitian_of(a));
    put_string(report_json, io::emit(check));
    return check.passed ? UNIPSD_OK : UNIPSD_FAIL;
  });
}

unipsd_status unipsd_factor(const unipsd_certificate* c, const unipsd_matrix* a, int kind,
                            char** doc_json) {
  return guarded([&] {
    UNIPSD_REQUIRE(c != nullptr, "null argument");
    UNIPSD_REQUIRE(kind == UNIPSD_FACTOR_LU || kind == UNIPSD_FACTOR_CHOLESKY, "unknown factor kind");
    const FactorPair f = kind == UNIPSD_FACTOR_LU ? lu_structured(c->cert) : cholesky_structured(c->cert);
    const HermitianMatrix target = a != nullptr ? hermitian_of(a) : reconstruct(c->cert);
    const FactorizationReport check = verify_factorization(target, f);
    put_string(doc_json, io::emit(f, check));
    return check.passed ? UNIPSD_OK : UNIPSD_FAIL;
  });
}

unipsd_status unipsd_oracle(const unipsd_matrix* a, char** doc_json) {
  return guarded([&] {
    UNIPSD_REQUIRE(a != nullptr, "null argument");
    const OracleVerdict v = psd_oracle(hermitian_of(a));
    put_string(doc_json, io::emit(v));
    return v.psd ? UNIPSD_OK : UNIPSD_FAIL;
  });
}

unipsd_status unipsd_psrp(const unipsd_matrix* a, int mode, size_t samples, uint64_t seed,
                          char** doc_json) {
  return guarded([&] {
    UNIPSD_REQUIRE(a != nullptr, "null argument");
    UNIPSD_REQUIRE(mode == UNIPSD_PSRP_EXHAUSTIVE || mode == UNIPSD_PSRP_SAMPLED, "unknown PSRP mode");
    const PsrpMode m = mode == UNIPSD_PSRP_EXHAUSTIVE ? PsrpMode::Exhaustive : PsrpMode::Sampled;
    const PsrpReport rep = psrp_check(a->raw, m, samples, seed, a->tol);
    put_string(doc_json, io::emit(rep));
    return rep.passed ? UNIPSD_OK : UNIPSD_FAIL;
  });
}

unipsd_status unipsd_null_extension(const unipsd_matrix* a, const size_t* subset, size_t len,
                                    int* holds) {
  return guarded([&] {
    UNIPSD_REQUIRE(a != nullptr && holds != nullptr && (subset != nullptr || len == 0), "null argument");
    *holds = null_extension_check(hermitian_of(a), IndexSet(subset, subset + len)) ? 1 : 0;
    return UNIPSD_OK;
  });
}

unipsd_status unipsd_mutate(const unipsd_matrix* a, uint64_t seed, int kind, unipsd_matrix** out,
                            size_t* row, size_t* col) {
  return guarded([&] {
    UNIPSD_REQUIRE(a != nullptr && out != nullptr, "null argument");
    UNIPSD_REQUIRE(kind >= UNIPSD_MUTATE_PHASE_FLIP && kind <= UNIPSD_MUTATE_DIAG_ZERO,
                   "unknown mutation kind");
    const Mutation m = mutate(hermitian_of(a), seed, static_cast<MutationKind>(kind));
    if (row != nullptr) *row = m.row;
    if (col != nullptr) *col = m.col;
    *out = wrap(m.matrix);
    return UNIPSD_OK;
  });
}

}  // extern "C"
