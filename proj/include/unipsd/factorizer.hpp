// Structured LU and Cholesky factors read directly off a canonical
// certificate. No elimination is performed, so the factors carry the exact
// 0/unit-modulus pattern.
#pragma once

#include <optional>
#include <vector>

#include "unipsd/certificate.hpp"
#include "unipsd/matrix.hpp"

namespace unipsd {

enum class FactorKind { LU, Cholesky };

const char* to_string(FactorKind kind);

struct FactorPair {
  FactorKind kind = FactorKind::LU;
  DenseMatrix lower;
  std::optional<DenseMatrix> upper;  ///< absent for Cholesky (the cofactor is lower^*)

  DenseMatrix product() const;
};

/// With r(i) the root of i's block and d the phases:
///   L = I + sum over non-root members i of d_i conj(d_r(i)) e_i e_r(i)^T
///   U = sum over roots r and members j of r's block of d_r conj(d_j) e_r e_j^T
/// L is unit lower triangular; U is zero outside root rows.
/// Throws MalformedCertificate for non-canonical input.
FactorPair lu_structured(const Certificate& cert);

/// L_{i, r(i)} = d_i conj(d_r(i)) for every block member, all else 0.
FactorPair cholesky_structured(const Certificate& cert);

struct PatternViolation {
  char factor;  ///< 'L' or 'U'
  Index row;
  Index col;
};

struct FactorizationReport {
  double residual = 0.0;        ///< max-norm of the product minus A
  double residual_bound = 0.0;  ///< eps_residual * n
  std::vector<PatternViolation> pattern_violations;
  Index modulus_violations = 0;  ///< factor entries that are neither 0 nor unit modulus
  bool passed = false;           ///< residual within bound and triangular patterns exact
};

FactorizationReport verify_factorization(const HermitianMatrix& a, const FactorPair& f);

}  // namespace unipsd
