#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "unipsd/matrix.hpp"

using namespace unipsd;
using oracle::I;
using oracle::mat;

TEST_CASE("classify_entry bands") {
  const ToleranceConfig tol;
  CHECK(classify_entry({1e-12, 0.0}, tol) == EntryClass::Zero);
  CHECK(classify_entry(I, tol) == EntryClass::Unit);
  CHECK(classify_entry({0.5, 0.0}, tol) == EntryClass::OutOfClass);
  CHECK(classify_entry({-1.0, 0.0}, tol) == EntryClass::Unit);
  CHECK(classify_entry(std::polar(1.0 + 5e-9, 0.7), tol) == EntryClass::Unit);
  CHECK(classify_entry(std::polar(1.0 + 2e-8, 0.7), tol) == EntryClass::OutOfClass);
  CHECK(classify_entry({2e-8, 0.0}, tol) == EntryClass::OutOfClass);
  CHECK(std::string(to_string(EntryClass::OutOfClass)) == "out_of_class");
}

TEST_CASE("tolerance validation") {
  ToleranceConfig tol;
  CHECK_NOTHROW(tol.validate());
  tol.eps_mod = 0.5;
  CHECK_THROWS_AS(tol.validate(), std::invalid_argument);
  tol = {};
  tol.eps_herm = -1.0;
  CHECK_THROWS_AS(tol.validate(), std::invalid_argument);
  tol = {};
  tol.eps_rank = std::nan("");
  CHECK_THROWS_AS(tol.validate(), std::invalid_argument);
}

TEST_CASE("dense matrix basics") {
  const DenseMatrix a = mat({{1.0, I}, {2.0, 3.0}});
  CHECK(a.rows() == 2);
  CHECK(a(0, 1) == I);
  const DenseMatrix adj = a.adjoint();
  CHECK(adj(1, 0) == -I);
  CHECK(adj(0, 1) == Complex{2.0});
  CHECK(a * DenseMatrix::identity(2) == a);
  CHECK(oracle::max_diff(a * adj, oracle::multiply(a, adj)) == 0.0);
  const DenseMatrix s = a.submatrix({1}, {0, 1});
  CHECK(s.rows() == 1);
  CHECK(s(0, 1) == Complex{3.0});
  CHECK_THROWS_AS(max_abs_diff(a, DenseMatrix::identity(3)), std::invalid_argument);
  CHECK_THROWS_AS(DenseMatrix::from_rows({{1.0, 2.0}, {1.0}}), std::invalid_argument);
}

TEST_CASE("validate_hermitian examples") {
  const HermitianMatrix h = validate_hermitian(mat({{1.0, I}, {-I, 1.0}}));
  CHECK(h.dense() == mat({{1.0, I}, {-I, 1.0}}));

  try {
    validate_hermitian(mat({{1.0, I}, {I, 1.0}}));
    FAIL("expected NotHermitianError");
  } catch (const NotHermitianError& e) {
    CHECK(e.row() == 0);
    CHECK(e.col() == 1);
    CHECK(e.deviation() == doctest::Approx(2.0));
  }

  const DenseMatrix raw = mat({{1.0, Complex{1.0, 1e-12}}, {1.0, 1.0}});
  const HermitianMatrix s = validate_hermitian(raw);
  // The symmetrized entry is the average of the two sides.
  CHECK(std::abs(s(0, 1) - Complex{1.0, 0.5e-12}) < 1e-18);
  CHECK(s(1, 0) == std::conj(s(0, 1)));
}

TEST_CASE("validate_hermitian reports the worst pair") {
  const DenseMatrix raw = mat({{1.0, 0.0, 0.0}, {1e-3, 1.0, 0.5}, {0.0, 0.0, 1.0}});
  try {
    validate_hermitian(raw);
    FAIL("expected NotHermitianError");
  } catch (const NotHermitianError& e) {
    CHECK(e.row() == 1);
    CHECK(e.col() == 2);
    CHECK(e.deviation() == doctest::Approx(0.5));
  }
}

TEST_CASE("validate_hermitian rejects bad shapes and values") {
  CHECK_THROWS_AS(validate_hermitian(DenseMatrix(2, 3)), std::invalid_argument);
  DenseMatrix nan = DenseMatrix::identity(2);
  nan(0, 1) = std::nan("");
  CHECK_THROWS_AS(validate_hermitian(nan), std::invalid_argument);
  DenseMatrix imag_diag = DenseMatrix::identity(2);
  imag_diag(0, 0) = Complex{1.0, 1.0};
  CHECK_THROWS_AS(validate_hermitian(imag_diag), NotHermitianError);
}

TEST_CASE("validate_hermitian properties") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> jitter(-3e-11, 3e-11);
  const ToleranceConfig tol;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 7;
    DenseMatrix raw(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      raw(i, i) = g(rng);
      for (std::size_t j = 0; j < i; ++j) {
        raw(i, j) = {g(rng), g(rng)};
        raw(j, i) = std::conj(raw(i, j)) + Complex{jitter(rng), jitter(rng)};
      }
    }
    const HermitianMatrix h = validate_hermitian(raw, tol);
    CHECK(is_hermitian_exact(h.dense()));
    // Symmetrization moves no entry by more than eps_herm / 2.
    CHECK(oracle::max_diff(h.dense(), raw) <= tol.eps_herm / 2);
    // Idempotent.
    CHECK(validate_hermitian(h.dense(), tol).dense() == h.dense());
    // Commutes with a unitary diagonal similarity up to rounding.
    std::vector<Complex> d(n);
    for (auto& z : d) z = std::polar(1.0, g(rng));
    DenseMatrix scaled(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) scaled(i, j) = d[i] * raw(i, j) * std::conj(d[j]);
    const HermitianMatrix hs = validate_hermitian(scaled, tol);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        CHECK(std::abs(hs(i, j) - d[i] * h(i, j) * std::conj(d[j])) < 1e-12);
  }
}

TEST_CASE("from_lower mirrors the lower triangle") {
  DenseMatrix m = mat({{Complex{2.0, 0.3}, 9.0}, {I, 1.0}});
  const HermitianMatrix h = HermitianMatrix::from_lower(m);
  CHECK(h(0, 0) == Complex{2.0});
  CHECK(h(0, 1) == -I);
  CHECK(h(1, 0) == I);
}
