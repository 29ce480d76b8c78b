// Dense complex matrices, tolerance bands and Hermitian validation.
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace unipsd {

using Complex = std::complex<double>;
using Index = std::size_t;
using IndexSet = std::vector<Index>;

/// Thresholds used throughout the library.
///
/// `eps_mod` separates the "modulus 0" and "modulus 1" bands; anything in
/// between is out of class. `eps_rank` is a relative multiplier scaled by
/// dimension and the largest singular value. `eps_residual` is scaled by n.
struct ToleranceConfig {
  double eps_mod = 1e-8;
  double eps_herm = 1e-10;
  double eps_rank = 1e-10;
  double eps_residual = 1e-10;

  /// Throws std::invalid_argument unless every field is positive and finite
  /// and eps_mod < 0.5.
  void validate() const;

  friend bool operator==(const ToleranceConfig&, const ToleranceConfig&) = default;
};

enum class EntryClass { Zero, Unit, OutOfClass };

const char* to_string(EntryClass c);

/// Zero iff |z| <= eps_mod, Unit iff ||z| - 1| <= eps_mod.
EntryClass classify_entry(Complex z, const ToleranceConfig& tol);

/// Row-major dense complex matrix, not necessarily square.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(Index rows, Index cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  DenseMatrix(Index rows, Index cols, std::vector<Complex> data);

  static DenseMatrix identity(Index n);
  static DenseMatrix from_rows(const std::vector<std::vector<Complex>>& rows);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Complex& operator()(Index i, Index j) { return data_[i * cols_ + j]; }
  const Complex& operator()(Index i, Index j) const { return data_[i * cols_ + j]; }

  std::span<const Complex> row(Index i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<const Complex> data() const { return data_; }

  DenseMatrix adjoint() const;
  DenseMatrix submatrix(const IndexSet& rows, const IndexSet& cols) const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<Complex> data_;
};

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);

/// max_ij |a_ij - b_ij|; throws std::invalid_argument on shape mismatch.
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

bool all_finite(const DenseMatrix& m);
bool is_hermitian_exact(const DenseMatrix& m);

/// Raised by validate_hermitian. Indices are 0-based with row <= col.
class NotHermitianError : public std::runtime_error {
 public:
  NotHermitianError(Index row, Index col, double deviation);
  Index row() const { return row_; }
  Index col() const { return col_; }
  double deviation() const { return deviation_; }

 private:
  Index row_;
  Index col_;
  double deviation_;
};

/// Square matrix stored with exact Hermitian symmetry and a real diagonal.
/// Only obtainable through validate_hermitian (or trusted internal
/// constructors that already guarantee the symmetry).
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  Index n() const { return dense_.rows(); }
  const Complex& operator()(Index i, Index j) const { return dense_(i, j); }
  const DenseMatrix& dense() const { return dense_; }
  const ToleranceConfig& tolerance() const { return tol_; }

  /// Builds from an already exactly Hermitian matrix. Mirrors the lower
  /// triangle over the upper one and zeroes diagonal imaginary parts, so the
  /// invariant holds regardless of tiny asymmetries in `m`.
  static HermitianMatrix from_lower(DenseMatrix m, ToleranceConfig tol = {});

  friend bool operator==(const HermitianMatrix& a, const HermitianMatrix& b) {
    return a.dense_ == b.dense_ && a.tol_ == b.tol_;
  }

 private:
  friend HermitianMatrix validate_hermitian(const DenseMatrix&, const ToleranceConfig&);
  DenseMatrix dense_;
  ToleranceConfig tol_;
};

/// Accepts `raw` when max_ij |raw_ij - conj(raw_ji)| <= eps_herm and returns
/// the symmetrized matrix (raw + raw*) / 2.
///
/// Throws std::invalid_argument for non-square or non-finite input and
/// NotHermitianError (reporting the worst pair) when the bound is violated.
HermitianMatrix validate_hermitian(const DenseMatrix& raw, const ToleranceConfig& tol = {});

}  // namespace unipsd
