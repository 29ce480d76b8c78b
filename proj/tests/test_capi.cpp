#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "unipsd/unipsd.h"

namespace {

std::string fixture(const char* name) { return std::string(UNIPSD_FIXTURES) + "/" + name; }

// Takes ownership of a returned string.
std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  unipsd_string_free(s);
  return out;
}

unipsd_matrix* dense(std::size_t n, const std::vector<double>& re_im, int flags = UNIPSD_READ_HERMITIAN) {
  unipsd_matrix* m = nullptr;
  REQUIRE(unipsd_matrix_from_dense(n, re_im.data(), nullptr, flags, &m) == UNIPSD_OK);
  return m;
}

std::vector<double> ones(std::size_t n) {
  std::vector<double> v(2 * n * n, 0.0);
  for (std::size_t k = 0; k < n * n; ++k) v[2 * k] = 1.0;
  return v;
}

}  // namespace

TEST_CASE("strings and defaults") {
  CHECK(std::strlen(unipsd_version()) > 0);
  CHECK(std::string(unipsd_status_string(UNIPSD_OK)) == "ok");
  CHECK(std::string(unipsd_status_string(UNIPSD_MALFORMED_CERTIFICATE)) == "malformed certificate");
  CHECK(std::string(unipsd_verdict_string(UNIPSD_FAIL)) == "not_psd");
  CHECK(std::string(unipsd_verdict_string(UNIPSD_IO_ERROR)) == "io_error");
  unipsd_tolerance t;
  unipsd_tolerance_default(&t);
  CHECK(t.eps_mod == 1e-8);
  CHECK(t.eps_herm == 1e-10);
  unipsd_gen_params p;
  unipsd_gen_params_default(&p);
  CHECK(p.min_block_size == 1);
  CHECK(p.zero_fraction == doctest::Approx(0.1));
  unipsd_string_free(nullptr);
  unipsd_matrix_free(nullptr);
  unipsd_certificate_free(nullptr);
}

TEST_CASE("matrix handles") {
  unipsd_matrix* m = dense(2, {1, 0, 0, -1, 0, 1, 1, 0});
  CHECK(unipsd_matrix_dim(m) == 2);
  CHECK(unipsd_matrix_is_hermitian(m) == 1);
  double re = 0, im = 0;
  CHECK(unipsd_matrix_get(m, 1, 0, &re, &im) == UNIPSD_OK);
  CHECK(re == 0.0);
  CHECK(im == 1.0);
  CHECK(unipsd_matrix_get(m, 2, 0, &re, &im) == UNIPSD_INVALID_ARGUMENT);
  CHECK(std::strlen(unipsd_last_error()) > 0);

  const std::string mtx = take([&] {
    char* s = nullptr;
    CHECK(unipsd_matrix_to_mtx(m, &s) == UNIPSD_OK);
    return s;
  }());
  CHECK(mtx.rfind("%%MatrixMarket matrix coordinate complex hermitian", 0) == 0);
  unipsd_matrix* back = nullptr;
  CHECK(unipsd_matrix_parse(mtx.data(), mtx.size(), nullptr, UNIPSD_READ_HERMITIAN, &back) == UNIPSD_OK);
  CHECK(unipsd_matrix_get(back, 0, 1, &re, &im) == UNIPSD_OK);
  CHECK(im == -1.0);
  unipsd_matrix_free(back);

  const double x[] = {1, 0, 1, 0};
  double q = 0;
  CHECK(unipsd_quadratic_form(m, x, 2, &q) == UNIPSD_OK);
  CHECK(q == doctest::Approx(2.0));
  CHECK(unipsd_quadratic_form(m, x, 1, &q) == UNIPSD_INVALID_ARGUMENT);
  unipsd_matrix_free(m);
}

TEST_CASE("matrix construction errors") {
  unipsd_matrix* m = nullptr;
  const std::vector<double> skew{1, 0, 0, 1, 0, 1, 1, 0};
  CHECK(unipsd_matrix_from_dense(2, skew.data(), nullptr, UNIPSD_READ_HERMITIAN, &m) == UNIPSD_NOT_HERMITIAN);
  CHECK(m == nullptr);
  CHECK(std::string(unipsd_last_error()).find("not Hermitian") != std::string::npos);

  CHECK(unipsd_matrix_from_dense(2, skew.data(), nullptr, UNIPSD_READ_GENERAL, &m) == UNIPSD_OK);
  CHECK(unipsd_matrix_is_hermitian(m) == 0);
  char* doc = nullptr;
  CHECK(unipsd_recognize(m, 0, nullptr, &doc) == UNIPSD_NOT_HERMITIAN);
  CHECK(doc == nullptr);
  CHECK(unipsd_psrp(m, UNIPSD_PSRP_EXHAUSTIVE, 0, 0, &doc) == UNIPSD_OK);
  take(doc);
  unipsd_matrix_free(m);
  m = nullptr;

  const std::vector<double> nilpotent{0, 0, 1, 0, 0, 0, 0, 0};
  CHECK(unipsd_matrix_from_dense(2, nilpotent.data(), nullptr, UNIPSD_READ_GENERAL, &m) == UNIPSD_OK);
  CHECK(unipsd_psrp(m, UNIPSD_PSRP_EXHAUSTIVE, 0, 0, &doc) == UNIPSD_FAIL);
  CHECK(take(doc).find("\"subset\": [\n        1\n      ]") != std::string::npos);
  unipsd_matrix_free(m);
  m = nullptr;

  unipsd_tolerance bad;
  unipsd_tolerance_default(&bad);
  bad.eps_mod = 0.7;
  CHECK(unipsd_matrix_from_dense(2, skew.data(), &bad, 0, &m) == UNIPSD_INVALID_ARGUMENT);
  CHECK(unipsd_matrix_from_dense(2, nullptr, nullptr, 0, &m) == UNIPSD_INVALID_ARGUMENT);

  const char text[] = "%%MatrixMarket matrix coordinate complex skew-hermitian\n1 1 0\n";
  CHECK(unipsd_matrix_parse(text, sizeof text - 1, nullptr, 0, &m) == UNIPSD_IO_ERROR);
  CHECK(std::string(unipsd_last_error()).find("line 1") != std::string::npos);
  CHECK(unipsd_matrix_read_file("/nonexistent/file.mtx", nullptr, 0, &m) == UNIPSD_IO_ERROR);
  CHECK(m == nullptr);
}

TEST_CASE("recognition through the C API") {
  unipsd_matrix* j3 = dense(3, ones(3));
  unipsd_certificate* cert = nullptr;
  char* report = nullptr;
  CHECK(unipsd_recognize(j3, 0, &cert, &report) == UNIPSD_OK);
  const std::string rep = take(report);
  CHECK(rep.find("\"verdict\": \"accepted\"") != std::string::npos);
  REQUIRE(cert != nullptr);
  CHECK(unipsd_certificate_dim(cert) == 3);
  CHECK(unipsd_certificate_block_count(cert) == 1);
  CHECK(unipsd_certificate_is_canonical(cert) == 1);

  char* doc = nullptr;
  CHECK(unipsd_certificate_verify(cert, j3, &doc) == UNIPSD_OK);
  take(doc);
  CHECK(unipsd_factor(cert, j3, UNIPSD_FACTOR_LU, &doc) == UNIPSD_OK);
  CHECK(take(doc).find("\"kind\": \"lu\"") != std::string::npos);
  CHECK(unipsd_factor(cert, nullptr, UNIPSD_FACTOR_CHOLESKY, &doc) == UNIPSD_OK);
  take(doc);
  CHECK(unipsd_factor(cert, j3, 9, &doc) == UNIPSD_INVALID_ARGUMENT);
  CHECK(unipsd_oracle(j3, &doc) == UNIPSD_OK);
  take(doc);
  CHECK(unipsd_psrp(j3, UNIPSD_PSRP_EXHAUSTIVE, 0, 0, &doc) == UNIPSD_OK);
  CHECK(take(doc).find("\"subsets_checked\": 7") != std::string::npos);
  CHECK(unipsd_psrp(j3, UNIPSD_PSRP_SAMPLED, 10, 1, &doc) == UNIPSD_OK);
  take(doc);

  const size_t subset[] = {0, 1};
  int holds = 0;
  CHECK(unipsd_null_extension(j3, subset, 2, &holds) == UNIPSD_OK);
  CHECK(holds == 1);

  unipsd_matrix* mutated = nullptr;
  size_t row = 9, col = 9;
  CHECK(unipsd_mutate(j3, 4, UNIPSD_MUTATE_EDGE_DELETE, &mutated, &row, &col) == UNIPSD_OK);
  CHECK(row < col);
  CHECK(unipsd_recognize(mutated, 0, nullptr, &report) == UNIPSD_FAIL);
  CHECK(take(report).find("\"witness\"") != std::string::npos);
  CHECK(unipsd_oracle(mutated, &doc) == UNIPSD_FAIL);
  take(doc);
  CHECK(unipsd_certificate_verify(cert, mutated, &doc) == UNIPSD_FAIL);
  take(doc);
  CHECK(unipsd_mutate(mutated, 4, UNIPSD_MUTATE_EDGE_DELETE, &mutated, nullptr, nullptr) ==
        UNIPSD_INVALID_ARGUMENT);
  unipsd_matrix_free(mutated);

  unipsd_matrix* half = dense(1, {0.5, 0});
  CHECK(unipsd_recognize(half, 0, nullptr, &report) == UNIPSD_OUT_OF_CLASS);
  take(report);
  unipsd_matrix_free(half);

  unipsd_matrix* phase = dense(2, {1, 0, 0, -1, 0, 1, 1, 0});
  CHECK(unipsd_recognize(phase, 1, nullptr, nullptr) == UNIPSD_OUT_OF_CLASS);
  CHECK(unipsd_recognize(phase, 0, nullptr, nullptr) == UNIPSD_OK);
  unipsd_matrix_free(phase);

  unipsd_certificate_free(cert);
  unipsd_matrix_free(j3);
}

TEST_CASE("check_file produces a report for every verdict") {
  struct Case {
    const char* file;
    unipsd_status status;
    const char* verdict;
  };
  const Case cases[] = {
      {"J3.mtx", UNIPSD_OK, "accepted"},
      {"path3.mtx", UNIPSD_FAIL, "not_psd"},
      {"out_of_class.mtx", UNIPSD_OUT_OF_CLASS, "out_of_class"},
      {"not_hermitian.mtx", UNIPSD_NOT_HERMITIAN, "not_hermitian"},
      {"malformed.mtx", UNIPSD_IO_ERROR, "io_error"},
      {"missing.mtx", UNIPSD_IO_ERROR, "io_error"},
  };
  for (const Case& c : cases) {
    CAPTURE(c.file);
    char* report = nullptr;
    CHECK(unipsd_check_file(fixture(c.file).c_str(), nullptr, 0, nullptr, &report) == c.status);
    const std::string rep = take(report);
    CHECK(rep.find(std::string("\"verdict\": \"") + c.verdict + "\"") != std::string::npos);
  }
}

TEST_CASE("certificates through the C API") {
  unipsd_gen_params p;
  unipsd_gen_params_default(&p);
  p.alphabet = UNIPSD_PHASES_ROOTS8;
  unipsd_certificate* c = nullptr;
  CHECK(unipsd_certificate_generate(20, 3, &p, nullptr, &c) == UNIPSD_OK);
  char* json = nullptr;
  CHECK(unipsd_certificate_to_json(c, &json) == UNIPSD_OK);
  const std::string text = take(json);

  unipsd_certificate* back = nullptr;
  CHECK(unipsd_certificate_from_json(text.data(), text.size(), &back) == UNIPSD_OK);
  CHECK(unipsd_certificate_to_json(back, &json) == UNIPSD_OK);
  CHECK(take(json) == text);

  unipsd_matrix* a = nullptr;
  CHECK(unipsd_certificate_reconstruct(c, &a) == UNIPSD_OK);
  unipsd_certificate* found = nullptr;
  CHECK(unipsd_recognize(a, 0, &found, nullptr) == UNIPSD_OK);
  unipsd_certificate* canon = nullptr;
  CHECK(unipsd_certificate_canonicalize(found, &canon) == UNIPSD_OK);
  CHECK(unipsd_certificate_to_json(canon, &json) == UNIPSD_OK);
  CHECK(take(json) == text);

  CHECK(unipsd_certificate_from_json("{}", 2, &back) == UNIPSD_IO_ERROR);
  const std::string bad =
      R"({"n": 2, "blocks": [[1]], "zero_set": [], "phases": [[1,0],[1,0]],
          "tolerance_used": {"eps_herm": 1e-10, "eps_mod": 1e-8, "eps_rank": 1e-10, "eps_residual": 1e-10}})";
  unipsd_certificate* unchanged = back;
  CHECK(unipsd_certificate_from_json(bad.data(), bad.size(), &back) == UNIPSD_MALFORMED_CERTIFICATE);
  CHECK(back == unchanged);
  p.alphabet = 42;
  CHECK(unipsd_certificate_generate(5, 1, &p, nullptr, &c) == UNIPSD_INVALID_ARGUMENT);
  CHECK(unipsd_certificate_generate(0, 1, nullptr, nullptr, &c) == UNIPSD_INVALID_ARGUMENT);

  unipsd_certificate_free(canon);
  unipsd_certificate_free(found);
  unipsd_matrix_free(a);
  unipsd_certificate_free(back);
  unipsd_certificate_free(c);
}
