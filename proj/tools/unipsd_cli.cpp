// unipsd command-line tool. Talks to the library only through the C API.
//
// Exit codes: 0 accepted/pass, 1 not PSD/fail, 2 out of class,
// 3 not Hermitian, 4 I/O or usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "unipsd/unipsd.h"

namespace {

constexpr int kExitUsage = 4;

struct Options {
  double tol_mod = 1e-8;
  double tol_herm = 1e-10;
  std::uint64_t seed = 0;
  std::string blocks;
  std::string mode = "exhaustive";
  std::size_t samples = 1000;
  std::string output;
  bool quiet = false;
  bool binary = false;
  double zero_fraction = 0.1;
  std::string alphabet = "uniform";
  std::string kind;
  std::string certificate_out;
  std::size_t n = 0;
  std::string matrix_path;
  std::string certificate_path;
};

struct StringDeleter {
  void operator()(char* s) const { unipsd_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct MatrixDeleter {
  void operator()(unipsd_matrix* m) const { unipsd_matrix_free(m); }
};
using OwnedMatrix = std::unique_ptr<unipsd_matrix, MatrixDeleter>;

struct CertificateDeleter {
  void operator()(unipsd_certificate* c) const { unipsd_certificate_free(c); }
};
using OwnedCertificate = std::unique_ptr<unipsd_certificate, CertificateDeleter>;

int exit_code(unipsd_status s) { return s <= UNIPSD_IO_ERROR ? static_cast<int>(s) : kExitUsage; }

unipsd_tolerance tolerance(const Options& o) {
  unipsd_tolerance t;
  unipsd_tolerance_default(&t);
  t.eps_mod = o.tol_mod;
  t.eps_herm = o.tol_herm;
  return t;
}

int report_error(unipsd_status s) {
  std::cerr << "unipsd: " << unipsd_status_string(s) << ": " << unipsd_last_error() << "\n";
  return exit_code(s);
}

bool write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

// Sends a document to --output (or stdout unless --quiet).
bool deliver(const Options& o, const std::string& text) {
  if (!o.output.empty()) {
    if (!write_text(o.output, text)) {
      std::cerr << "unipsd: cannot write '" << o.output << "'\n";
      return false;
    }
    return true;
  }
  if (!o.quiet) std::cout << text << std::flush;
  return true;
}

int finish(const Options& o, unipsd_status s, char* doc) {
  OwnedString owned(doc);
  if (s > UNIPSD_IO_ERROR || (!owned && s != UNIPSD_OK)) return report_error(s);
  if (owned && !deliver(o, owned.get())) return kExitUsage;
  return exit_code(s);
}

int load_matrix(const Options& o, int flags, OwnedMatrix& out) {
  const unipsd_tolerance t = tolerance(o);
  unipsd_matrix* m = nullptr;
  const unipsd_status s = unipsd_matrix_read_file(o.matrix_path.c_str(), &t, flags, &m);
  if (s != UNIPSD_OK) return report_error(s);
  out.reset(m);
  return 0;
}

int cmd_check(const Options& o, bool print_report) {
  const unipsd_tolerance t = tolerance(o);
  char* report = nullptr;
  const unipsd_status s = unipsd_check_file(o.matrix_path.c_str(), &t, o.binary, nullptr, &report);
  OwnedString owned(report);
  if (!owned) return report_error(s);
  if (s != UNIPSD_OK && *unipsd_last_error() != '\0' && !o.quiet) {
    std::cerr << "unipsd: " << unipsd_last_error() << "\n";
  }
  const std::string text = print_report ? std::string(owned.get())
                                        : std::string(unipsd_verdict_string(s)) + "\n";
  if (!deliver(o, text)) return kExitUsage;
  return exit_code(s);
}

int cmd_factor(const Options& o, int kind) {
  unipsd_certificate* cert = nullptr;
  char* report = nullptr;
  OwnedMatrix a;
  if (int rc = load_matrix(o, 0, a)) return rc;
  const unipsd_status s = unipsd_recognize(a.get(), o.binary, &cert, &report);
  OwnedCertificate owned_cert(cert);
  if (s != UNIPSD_OK) return finish(o, s, report);
  unipsd_string_free(report);

  char* doc = nullptr;
  const unipsd_status status = unipsd_factor(owned_cert.get(), a.get(), kind, &doc);
  return finish(o, status, doc);
}

int cmd_oracle(const Options& o) {
  OwnedMatrix a;
  if (int rc = load_matrix(o, 0, a)) return rc;
  char* doc = nullptr;
  const unipsd_status status = unipsd_oracle(a.get(), &doc);
  return finish(o, status, doc);
}

int cmd_psrp(const Options& o) {
  int mode = 0;
  if (o.mode == "exhaustive") {
    mode = UNIPSD_PSRP_EXHAUSTIVE;
  } else if (o.mode == "sampled") {
    mode = UNIPSD_PSRP_SAMPLED;
  } else {
    std::cerr << "unipsd: --mode must be exhaustive or sampled\n";
    return kExitUsage;
  }
  OwnedMatrix a;
  if (int rc = load_matrix(o, UNIPSD_READ_GENERAL, a)) return rc;
  char* doc = nullptr;
  const unipsd_status status = unipsd_psrp(a.get(), mode, o.samples, o.seed, &doc);
  return finish(o, status, doc);
}

bool parse_blocks(const std::string& spec, unipsd_gen_params& p) {
  if (spec.empty()) return true;
  std::size_t lo = 0, hi = 0;
  char colon = 0;
  std::istringstream in(spec);
  if (spec.find(':') == std::string::npos) {
    if (!(in >> lo) || !in.eof()) return false;
    hi = lo;
  } else if (!(in >> lo >> colon >> hi) || colon != ':' || !in.eof()) {
    return false;
  }
  p.min_block_size = lo;
  p.max_block_size = hi;
  return true;
}

int cmd_gen(const Options& o) {
  static const std::map<std::string, int> alphabets = {
      {"uniform", UNIPSD_PHASES_UNIFORM}, {"roots4", UNIPSD_PHASES_ROOTS4},
      {"roots8", UNIPSD_PHASES_ROOTS8},   {"signs", UNIPSD_PHASES_SIGNS},
      {"one", UNIPSD_PHASES_ONE}};
  unipsd_gen_params p;
  unipsd_gen_params_default(&p);
  p.zero_fraction = o.zero_fraction;
  if (!parse_blocks(o.blocks, p)) {
    std::cerr << "unipsd: --blocks expects K or MIN:MAX\n";
    return kExitUsage;
  }
  const auto it = alphabets.find(o.alphabet);
  if (it == alphabets.end()) {
    std::cerr << "unipsd: unknown --alphabet '" << o.alphabet << "'\n";
    return kExitUsage;
  }
  p.alphabet = it->second;

  const unipsd_tolerance t = tolerance(o);
  unipsd_certificate* cert = nullptr;
  unipsd_status s = unipsd_certificate_generate(o.n, o.seed, &p, &t, &cert);
  if (s != UNIPSD_OK) return report_error(s);
  OwnedCertificate owned_cert(cert);

  if (!o.certificate_out.empty()) {
    char* doc = nullptr;
    s = unipsd_certificate_to_json(cert, &doc);
    if (s != UNIPSD_OK) return report_error(s);
    OwnedString owned(doc);
    if (!write_text(o.certificate_out, owned.get())) {
      std::cerr << "unipsd: cannot write '" << o.certificate_out << "'\n";
      return kExitUsage;
    }
  }

  unipsd_matrix* m = nullptr;
  s = unipsd_certificate_reconstruct(cert, &m);
  if (s != UNIPSD_OK) return report_error(s);
  OwnedMatrix owned_m(m);
  char* text = nullptr;
  const unipsd_status status = unipsd_matrix_to_mtx(m, &text);
  return finish(o, status, text);
}

int cmd_mutate(const Options& o) {
  static const std::map<std::string, int> kinds = {
      {"phase_flip", UNIPSD_MUTATE_PHASE_FLIP},
      {"edge_delete", UNIPSD_MUTATE_EDGE_DELETE},
      {"diag_negate", UNIPSD_MUTATE_DIAG_NEGATE},
      {"diag_zero", UNIPSD_MUTATE_DIAG_ZERO}};
  const auto it = kinds.find(o.kind);
  if (it == kinds.end()) {
    std::cerr << "unipsd: --kind must be phase_flip, edge_delete, diag_negate or diag_zero\n";
    return kExitUsage;
  }
  OwnedMatrix a;
  if (int rc = load_matrix(o, 0, a)) return rc;
  unipsd_matrix* m = nullptr;
  std::size_t row = 0, col = 0;
  const unipsd_status s = unipsd_mutate(a.get(), o.seed, it->second, &m, &row, &col);
  if (s != UNIPSD_OK) return report_error(s);
  OwnedMatrix owned_m(m);
  if (!o.quiet) std::cerr << "unipsd: " << o.kind << " at (" << row + 1 << "," << col + 1 << ")\n";
  char* text = nullptr;
  const unipsd_status status = unipsd_matrix_to_mtx(m, &text);
  return finish(o, status, text);
}

int cmd_verify(const Options& o) {
  std::ifstream in(o.certificate_path, std::ios::binary);
  if (!in) {
    std::cerr << "unipsd: cannot open '" << o.certificate_path << "'\n";
    return kExitUsage;
  }
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  unipsd_certificate* cert = nullptr;
  unipsd_status s = unipsd_certificate_from_json(text.data(), text.size(), &cert);
  if (s != UNIPSD_OK) return report_error(s);
  OwnedCertificate owned_cert(cert);
  OwnedMatrix a;
  if (int rc = load_matrix(o, 0, a)) return rc;
  char* doc = nullptr;
  const unipsd_status status = unipsd_certificate_verify(cert, a.get(), &doc);
  return finish(o, status, doc);
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Recognize, decompose and factor Hermitian PSD matrices with entries of modulus 0 or 1"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(unipsd_version()));
  app.add_option("--tol-mod", o.tol_mod, "modulus band for classifying entries as 0 or 1");
  app.add_option("--tol-herm", o.tol_herm, "allowed Hermitian asymmetry before rejection");
  app.add_option("--seed", o.seed, "seed for gen, mutate and sampled psrp");
  app.add_option("--output", o.output, "write the result document to this path");
  app.add_flag("--quiet", o.quiet, "print nothing to stdout; rely on the exit code");

  auto with_matrix = [&](CLI::App* sub) {
    sub->add_option("matrix", o.matrix_path, "Matrix Market coordinate file")->required();
  };

  auto* check = app.add_subcommand("check", "print the verdict for a matrix");
  with_matrix(check);
  check->add_flag("--binary", o.binary, "restrict to real (0,1) matrices");
  auto* decompose = app.add_subcommand("decompose", "print the run report with certificate or witness");
  with_matrix(decompose);
  decompose->add_flag("--binary", o.binary, "restrict to real (0,1) matrices");
  auto* factor_lu = app.add_subcommand("factor-lu", "structured LU factors of an accepted matrix");
  with_matrix(factor_lu);
  auto* factor_chol = app.add_subcommand("factor-cholesky", "structured Cholesky factor of an accepted matrix");
  with_matrix(factor_chol);
  auto* psrp = app.add_subcommand("psrp", "check the principal submatrix rank property");
  with_matrix(psrp);
  psrp->add_option("--mode", o.mode, "exhaustive (n <= 16) or sampled");
  psrp->add_option("--samples", o.samples, "subsets to draw in sampled mode");
  auto* oracle = app.add_subcommand("oracle", "spectral PSD check");
  with_matrix(oracle);
  auto* gen = app.add_subcommand("gen", "write a matrix built from a seeded certificate");
  gen->add_option("n", o.n, "dimension")->required();
  gen->add_option("--blocks", o.blocks, "block size K or range MIN:MAX");
  gen->add_option("--zero-fraction", o.zero_fraction, "probability an index lands in the zero set");
  gen->add_option("--alphabet", o.alphabet, "uniform, roots4, roots8, signs or one");
  gen->add_option("--certificate", o.certificate_out, "also write the generating certificate here");
  auto* mutate = app.add_subcommand("mutate", "break positive semidefiniteness of an accepted matrix");
  with_matrix(mutate);
  mutate->add_option("--kind", o.kind, "phase_flip, edge_delete, diag_negate or diag_zero")->required();
  auto* verify = app.add_subcommand("verify", "check a certificate document against a matrix");
  verify->add_option("certificate", o.certificate_path, "certificate JSON document")->required();
  with_matrix(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*check) return cmd_check(o, false);
    if (*decompose) return cmd_check(o, true);
    if (*factor_lu) return cmd_factor(o, UNIPSD_FACTOR_LU);
    if (*factor_chol) return cmd_factor(o, UNIPSD_FACTOR_CHOLESKY);
    if (*psrp) return cmd_psrp(o);
    if (*oracle) return cmd_oracle(o);
    if (*gen) return cmd_gen(o);
    if (*mutate) return cmd_mutate(o);
    if (*verify) return cmd_verify(o);
  } catch (const std::exception& e) {
    std::cerr << "unipsd: " << e.what() << "\n";
  }
  return kExitUsage;
}
