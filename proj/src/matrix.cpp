#include "unipsd/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace unipsd {

void ToleranceConfig::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(eps_mod) || !positive(eps_herm) || !positive(eps_rank) ||
      !positive(eps_residual)) {
    throw std::invalid_argument("tolerances must be positive and finite");
  }
  if (eps_mod >= 0.5) {
    throw std::invalid_argument("eps_mod must be below 0.5 so the 0 and 1 bands stay disjoint");
  }
}

const char* to_string(EntryClass c) {
  switch (c) {
    case EntryClass::Zero: return "zero";
    case EntryClass::Unit: return "unit";
    case EntryClass::OutOfClass: return "out_of_class";
  }
  return "?";
}

EntryClass classify_entry(Complex z, const ToleranceConfig& tol) {
  const double m = std::abs(z);
  if (m <= tol.eps_mod) return EntryClass::Zero;
  if (std::abs(m - 1.0) <= tol.eps_mod) return EntryClass::Unit;
  return EntryClass::OutOfClass;
}

DenseMatrix::DenseMatrix(Index rows, Index cols, std::vector<Complex> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw std::invalid_argument("matrix data size does not match its shape");
  }
}

DenseMatrix DenseMatrix::identity(Index n) {
  DenseMatrix m(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::from_rows(const std::vector<std::vector<Complex>>& rows) {
  const Index r = rows.size();
  const Index c = r == 0 ? 0 : rows.front().size();
  DenseMatrix m(r, c);
  for (Index i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("ragged matrix rows");
    for (Index j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

DenseMatrix DenseMatrix::adjoint() const {
  DenseMatrix out(cols_, rows_);
  for (Index i = 0; i < rows_; ++i)
    for (Index j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

DenseMatrix DenseMatrix::submatrix(const IndexSet& rows, const IndexSet& cols) const {
  DenseMatrix out(rows.size(), cols.size());
  for (Index a = 0; a < rows.size(); ++a) {
    if (rows[a] >= rows_) throw std::out_of_range("row index out of range");
    for (Index b = 0; b < cols.size(); ++b) {
      if (cols[b] >= cols_) throw std::out_of_range("column index out of range");
      out(a, b) = (*this)(rows[a], cols[b]);
    }
  }
  return out;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
  DenseMatrix out(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (Index j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("shape mismatch");
  }
  double worst = 0.0;
  auto x = a.data();
  auto y = b.data();
  for (Index k = 0; k < x.size(); ++k) worst = std::max(worst, std::abs(x[k] - y[k]));
  return worst;
}

bool all_finite(const DenseMatrix& m) {
  for (const Complex& z : m.data()) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

bool is_hermitian_exact(const DenseMatrix& m) {
  if (!m.square()) return false;
  for (Index i = 0; i < m.rows(); ++i) {
    if (m(i, i).imag() != 0.0) return false;
    for (Index j = 0; j < i; ++j) {
      if (m(i, j) != std::conj(m(j, i))) return false;
    }
  }
  return true;
}

NotHermitianError::NotHermitianError(Index row, Index col, double deviation)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "matrix is not Hermitian: |a(" << row + 1 << ',' << col + 1 << ") - conj(a("
           << col + 1 << ',' << row + 1 << "))| = " << deviation;
        return os.str();
      }()),
      row_(row), col_(col), deviation_(deviation) {}

HermitianMatrix HermitianMatrix::from_lower(DenseMatrix m, ToleranceConfig tol) {
  if (!m.square()) throw std::invalid_argument("Hermitian matrix must be square");
  for (Index i = 0; i < m.rows(); ++i) {
    m(i, i) = m(i, i).real();
    for (Index j = 0; j < i; ++j) m(j, i) = std::conj(m(i, j));
  }
  HermitianMatrix h;
  h.dense_ = std::move(m);
  h.tol_ = tol;
  return h;
}

HermitianMatrix validate_hermitian(const DenseMatrix& raw, const ToleranceConfig& tol) {
  tol.validate();
  if (!raw.square()) throw std::invalid_argument("matrix is not square");
  if (!all_finite(raw)) throw std::invalid_argument("matrix has non-finite entries");

  const Index n = raw.rows();
  double worst = 0.0;
  Index wi = 0, wj = 0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      const double dev = std::abs(raw(i, j) - std::conj(raw(j, i)));
      if (dev > worst) {
        worst = dev;
        wi = i;
        wj = j;
      }
    }
  }
  if (worst > tol.eps_herm) throw NotHermitianError(wi, wj, worst);

  DenseMatrix sym(n, n);
  for (Index i = 0; i < n; ++i) {
    sym(i, i) = raw(i, i).real();
    for (Index j = 0; j < i; ++j) {
      const Complex v = (raw(i, j) + std::conj(raw(j, i))) * 0.5;
      sym(i, j) = v;
      sym(j, i) = std::conj(v);
    }
  }
  HermitianMatrix h;
  h.dense_ = std::move(sym);
  h.tol_ = tol;
  return h;
}

}  // namespace unipsd
