#include "unipsd/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "unipsd/linalg.hpp"
#include "unipsd/random.hpp"

namespace unipsd {

OracleVerdict psd_oracle(const HermitianMatrix& a) {
  const Index n = a.n();
  OracleVerdict v;
  if (n == 0) {
    v.psd = true;
    return v;
  }
  linalg::EigenDecomposition eig = linalg::hermitian_eigen(a.dense());

  double scale = 0.0;
  for (Index i = 0; i < n; ++i) scale = std::max(scale, std::abs(a(i, i).real()));
  for (double lambda : eig.values) scale = std::max(scale, std::abs(lambda));

  v.eigenvalues = eig.values;
  v.min_eigenvalue = eig.values.front();
  v.threshold = a.tolerance().eps_rank * static_cast<double>(n) * scale;
  v.psd = v.min_eigenvalue >= -v.threshold;
  if (!v.psd) {
    std::vector<Complex> x(n);
    for (Index i = 0; i < n; ++i) x[i] = eig.vectors(i, 0);
    v.witness = std::move(x);
  }
  return v;
}

Index numerical_rank(const DenseMatrix& m, const ToleranceConfig& tol) {
  const std::vector<double> sigma = linalg::singular_values(m);
  if (sigma.empty() || sigma.front() == 0.0) return 0;
  const double cutoff =
      tol.eps_rank * static_cast<double>(std::max(m.rows(), m.cols())) * sigma.front();
  return static_cast<Index>(
      std::count_if(sigma.begin(), sigma.end(), [&](double s) { return s > cutoff; }));
}

PsrpConditions psrp_subset(const DenseMatrix& a, const IndexSet& subset, const ToleranceConfig& tol) {
  if (!a.square()) throw std::invalid_argument("PSRP needs a square matrix");
  if (subset.empty()) throw std::invalid_argument("PSRP subset must be nonempty");
  std::vector<char> used(a.rows(), 0);
  for (Index i : subset) {
    if (i >= a.rows()) throw std::invalid_argument("PSRP subset index out of range");
    if (used[i]) throw std::invalid_argument("PSRP subset repeats an index");
    used[i] = 1;
  }
  IndexSet all(a.rows());
  for (Index i = 0; i < a.rows(); ++i) all[i] = i;

  PsrpConditions c;
  c.rank_principal = numerical_rank(a.submatrix(subset, subset), tol);
  c.rank_row_strip = numerical_rank(a.submatrix(subset, all), tol);
  c.rank_column_strip = numerical_rank(a.submatrix(all, subset), tol);
  c.rows = c.rank_principal == c.rank_row_strip;
  c.columns = c.rank_principal == c.rank_column_strip;
  return c;
}

const char* to_string(PsrpCondition c) { return c == PsrpCondition::RowStrip ? "i" : "ii"; }

const char* to_string(PsrpMode m) { return m == PsrpMode::Exhaustive ? "exhaustive" : "sampled"; }

namespace {

void check_one(const DenseMatrix& a, IndexSet subset, const ToleranceConfig& tol, PsrpReport& rep) {
  const PsrpConditions c = psrp_subset(a, subset, tol);
  ++rep.subsets_checked;
  if (!c.rows) rep.failures.push_back({subset, c.rank_principal, c.rank_row_strip, PsrpCondition::RowStrip});
  if (!c.columns) {
    rep.failures.push_back({subset, c.rank_principal, c.rank_column_strip, PsrpCondition::ColumnStrip});
  }
}

}  // namespace

PsrpReport psrp_check(const DenseMatrix& a, PsrpMode mode, Index samples, std::uint64_t seed,
                      const ToleranceConfig& tol) {
  if (!a.square()) throw std::invalid_argument("PSRP needs a square matrix");
  const Index n = a.rows();
  PsrpReport rep;
  rep.mode = mode;

  if (mode == PsrpMode::Exhaustive) {
    if (n > kMaxExhaustivePsrp) {
      throw std::invalid_argument("exhaustive PSRP check is limited to n <= 16; use sampled mode");
    }
    const std::uint64_t count = std::uint64_t{1} << n;
    for (std::uint64_t mask = 1; mask < count; ++mask) {
      IndexSet subset;
      for (Index i = 0; i < n; ++i)
        if (mask >> i & 1U) subset.push_back(i);
      check_one(a, std::move(subset), tol, rep);
    }
  } else {
    if (samples == 0) throw std::invalid_argument("sampled PSRP check needs at least one sample");
    if (n == 0) throw std::invalid_argument("sampled PSRP check needs a nonempty matrix");
    SeededRng rng(seed);
    for (Index s = 0; s < samples; ++s) {
      IndexSet subset;
      while (subset.empty()) {
        for (Index i = 0; i < n; ++i)
          if (rng.below(2)) subset.push_back(i);
      }
      check_one(a, std::move(subset), tol, rep);
    }
  }
  rep.passed = rep.failures.empty();
  return rep;
}

bool null_extension_check(const HermitianMatrix& a, const IndexSet& subset) {
  const Index n = a.n();
  const ToleranceConfig& tol = a.tolerance();
  for (Index i : subset)
    if (i >= n) throw std::invalid_argument("subset index out of range");
  if (subset.empty()) return true;

  const linalg::EigenDecomposition eig = linalg::hermitian_eigen(a.dense().submatrix(subset, subset));
  double sigma_max = 0.0;
  for (double lambda : eig.values) sigma_max = std::max(sigma_max, std::abs(lambda));
  const double null_cutoff = tol.eps_rank * static_cast<double>(subset.size()) * sigma_max;
  const double bound = tol.eps_rank * static_cast<double>(n);

  for (Index k = 0; k < eig.values.size(); ++k) {
    if (std::abs(eig.values[k]) > null_cutoff) continue;
    std::vector<Complex> v(n);
    for (Index p = 0; p < subset.size(); ++p) v[subset[p]] = eig.vectors(p, k);
    for (Index i = 0; i < n; ++i) {
      Complex y{};
      const auto row = a.dense().row(i);
      for (Index j = 0; j < n; ++j) y += row[j] * v[j];
      if (std::abs(y) > bound) return false;
    }
  }
  return true;
}

}  // namespace unipsd
