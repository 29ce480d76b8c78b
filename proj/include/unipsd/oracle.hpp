// Numerical ground truth: a spectral PSD test, numerical rank, and the
// principal submatrix rank property (PSRP).
//
// Nothing here depends on the recognizer; the two are meant to be compared.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unipsd/matrix.hpp"

namespace unipsd {

struct OracleVerdict {
  bool psd = false;
  double min_eigenvalue = 0.0;
  double threshold = 0.0;  ///< psd iff min_eigenvalue >= -threshold
  std::vector<double> eigenvalues;
  std::optional<std::vector<Complex>> witness;  ///< eigenvector of min_eigenvalue when not psd
};

/// psd iff lambda_min >= -eps_rank * n * max(max_i |a_ii|, sigma_max).
OracleVerdict psd_oracle(const HermitianMatrix& a);

/// Count of singular values above eps_rank * max(rows, cols) * sigma_max.
Index numerical_rank(const DenseMatrix& m, const ToleranceConfig& tol = {});

struct PsrpConditions {
  bool rows = false;     ///< (i): rank A[a,a] == rank A[a,:]
  bool columns = false;  ///< (ii): rank A[a,a] == rank A[:,a]
  Index rank_principal = 0;
  Index rank_row_strip = 0;
  Index rank_column_strip = 0;
};

/// Throws std::invalid_argument for an empty subset, a repeated index or an
/// out-of-range one. Indices are 0-based.
PsrpConditions psrp_subset(const DenseMatrix& a, const IndexSet& subset,
                           const ToleranceConfig& tol = {});

enum class PsrpMode { Exhaustive, Sampled };

const char* to_string(PsrpMode m);

inline constexpr Index kMaxExhaustivePsrp = 16;

/// Row strips (condition "i") or column strips (condition "ii").
enum class PsrpCondition { RowStrip, ColumnStrip };

const char* to_string(PsrpCondition c);

struct PsrpFailure {
  IndexSet subset;
  Index rank_principal;
  Index rank_strip;
  PsrpCondition condition;
};

struct PsrpReport {
  PsrpMode mode = PsrpMode::Exhaustive;
  Index subsets_checked = 0;
  std::vector<PsrpFailure> failures;
  bool passed = true;
};

/// Exhaustive mode visits every nonempty subset in increasing bitmask order
/// and needs n <= 16. Sampled mode draws `samples` nonempty subsets from
/// `seed` (each index kept with probability 1/2).
PsrpReport psrp_check(const DenseMatrix& a, PsrpMode mode, Index samples = 0,
                      std::uint64_t seed = 0, const ToleranceConfig& tol = {});

/// For a PSD matrix: every null vector w of A[a,a], zero-extended to v,
/// satisfies ||A v||_max <= eps_rank * n.
bool null_extension_check(const HermitianMatrix& a, const IndexSet& subset);

}  // namespace unipsd
