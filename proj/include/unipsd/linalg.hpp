// Self-contained dense eigen/singular value routines used by the numerical
// oracle. Both are Jacobi methods: slow compared to LAPACK, but accurate to a
// few ulps of ||A|| and free of external dependencies.
#pragma once

#include <vector>

#include "unipsd/matrix.hpp"

namespace unipsd::linalg {

struct EigenDecomposition {
  std::vector<double> values;  ///< ascending
  DenseMatrix vectors;         ///< column k is the unit eigenvector for values[k]
};

/// Cyclic two-sided complex Jacobi. Only the lower triangle of `a` is read;
/// the input is treated as the Hermitian matrix it determines.
EigenDecomposition hermitian_eigen(const DenseMatrix& a);

/// Singular values in descending order, by one-sided (Hestenes) Jacobi on
/// whichever of `m`, `m*` has fewer columns.
std::vector<double> singular_values(const DenseMatrix& m);

}  // namespace unipsd::linalg
