#include "unipsd/factorizer.hpp"

#include <cmath>

namespace unipsd {
namespace {

void require_canonical(const Certificate& cert) {
  cert.validate();
  if (!cert.is_canonical()) throw MalformedCertificate("factorization needs a canonical certificate");
}

}  // namespace

const char* to_string(FactorKind kind) { return kind == FactorKind::LU ? "lu" : "cholesky"; }

DenseMatrix FactorPair::product() const {
  return upper ? lower * *upper : lower * lower.adjoint();
}

FactorPair lu_structured(const Certificate& cert) {
  require_canonical(cert);
  const Index n = cert.n;
  const auto& d = cert.phases;
  FactorPair f;
  f.kind = FactorKind::LU;
  f.lower = DenseMatrix::identity(n);
  DenseMatrix u(n, n);
  for (const IndexSet& b : cert.blocks) {
    const Index r = b.front();
    for (Index i : b) {
      if (i != r) f.lower(i, r) = d[i] * std::conj(d[r]);
      u(r, i) = d[r] * std::conj(d[i]);
    }
    u(r, r) = 1.0;
  }
  f.upper = std::move(u);
  return f;
}

FactorPair cholesky_structured(const Certificate& cert) {
  require_canonical(cert);
  const auto& d = cert.phases;
  FactorPair f;
  f.kind = FactorKind::Cholesky;
  f.lower = DenseMatrix(cert.n, cert.n);
  for (const IndexSet& b : cert.blocks) {
    const Index r = b.front();
    for (Index i : b) f.lower(i, r) = d[i] * std::conj(d[r]);
    f.lower(r, r) = 1.0;
  }
  return f;
}

FactorizationReport verify_factorization(const HermitianMatrix& a, const FactorPair& f) {
  const Index n = a.n();
  if (f.lower.rows() != n || f.lower.cols() != n ||
      (f.upper && (f.upper->rows() != n || f.upper->cols() != n))) {
    throw std::invalid_argument("factor dimensions do not match the matrix");
  }
  const ToleranceConfig& tol = a.tolerance();
  FactorizationReport rep;
  rep.residual = max_abs_diff(f.product(), a.dense());
  rep.residual_bound = tol.eps_residual * static_cast<double>(n);

  auto scan = [&](const DenseMatrix& m, char name, bool lower) {
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        const Complex z = m(i, j);
        if (classify_entry(z, tol) == EntryClass::OutOfClass) ++rep.modulus_violations;
        const bool outside = lower ? j > i : j < i;
        if (outside && z != Complex{}) rep.pattern_violations.push_back({name, i, j});
      }
    }
  };
  scan(f.lower, 'L', true);
  if (f.upper) scan(*f.upper, 'U', false);

  rep.passed = rep.residual <= rep.residual_bound && rep.pattern_violations.empty();
  return rep;
}

}  // namespace unipsd
