// Block/phase certificates: a PSD matrix with entries of modulus 0 or 1 is a
// unitary monomial similarity of J_{k1} (+) ... (+) J_{km} (+) 0. The
// certificate records that similarity as a partition plus a phase vector.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "unipsd/matrix.hpp"

namespace unipsd {

class MalformedCertificate : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Indices are 0-based. `phases` has length n and holds the diagonal of the
/// unitary diagonal factor; entries on the zero set are exactly 1.
///
/// Canonical form: members of every block ascending, blocks ordered by their
/// smallest member, zero set ascending, and the phase of each block's
/// smallest member (its root) exactly 1.
struct Certificate {
  Index n = 0;
  std::vector<IndexSet> blocks;
  IndexSet zero_set;
  std::vector<Complex> phases;
  ToleranceConfig tolerance_used;

  /// Throws MalformedCertificate unless blocks and zero set partition
  /// {0..n-1}, blocks are nonempty, phases are unit modulus within eps_mod
  /// and exactly 1 on the zero set.
  void validate() const;
  bool is_canonical() const;

  Index rank() const { return blocks.size(); }

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// A_ij = phases[i] * conj(phases[j]) when i and j share a block, else 0.
HermitianMatrix reconstruct(const Certificate& cert);

/// Sorts members and blocks, then rotates each block's phases so the root
/// phase is exactly 1. Idempotent.
Certificate canonicalize(const Certificate& cert);

/// Component-wise comparison: identical partitions and phases within `tol`.
bool equivalent(const Certificate& a, const Certificate& b, double tol);

struct CertificateCheck {
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Compares reconstruct(cert) against `a` entrywise at cert.tolerance_used.eps_mod.
CertificateCheck verify(const Certificate& cert, const HermitianMatrix& a);

/// M = Q * D with Q a permutation and D unitary diagonal (in gathered order):
/// M(perm[p], p) = diag[p].
struct MonomialSimilarity {
  std::vector<Index> perm;
  std::vector<Complex> diag;

  DenseMatrix to_dense() const;
};

struct GatheredForm {
  MonomialSimilarity similarity;
  std::vector<Index> block_sizes;
  Index n = 0;

  /// S = J_{k1} (+) ... (+) J_{km} (+) 0.
  DenseMatrix direct_sum() const;
};

/// Gathers each block into consecutive positions (within-block order kept,
/// zero set last) so that reconstruct(cert) = M * S * M^*.
GatheredForm materialize_similarity(const Certificate& cert);

enum class PhaseAlphabet {
  UniformAngle,  ///< e^{i theta}, theta uniform in [0, 2 pi)
  FourthRoots,   ///< {1, i, -1, -i}
  EighthRoots,
  Signs,         ///< {1, -1}
  One,           ///< (0,1) matrices
};

struct GeneratorParams {
  Index min_block_size = 1;
  Index max_block_size = 0;  ///< 0 means n
  double zero_fraction = 0.1;
  PhaseAlphabet alphabet = PhaseAlphabet::UniformAngle;
  ToleranceConfig tolerance;
};

/// Deterministic in (n, seed, params); the result is canonical.
///
/// Each index is first sent to the zero set with probability zero_fraction.
/// The rest are shuffled and cut into blocks with sizes uniform in
/// [min_block_size, max_block_size]; a leftover shorter than min_block_size
/// joins the zero set.
Certificate random_certificate(Index n, std::uint64_t seed, const GeneratorParams& params = {});

enum class MutationKind { PhaseFlip, EdgeDelete, DiagNegate, DiagZero };

const char* to_string(MutationKind kind);

struct Mutation {
  HermitianMatrix matrix;
  MutationKind kind;
  Index row;
  Index col;  ///< equals row for the diagonal kinds
};

/// Alters one Hermitian pair or diagonal entry of `a` at an explicit site:
/// PhaseFlip negates a_ij, EdgeDelete zeroes a_ij, DiagNegate negates a_ii,
/// DiagZero zeroes a_ii.
Mutation mutate_at(const HermitianMatrix& a, MutationKind kind, Index row, Index col);

/// Seeded mutation of an accepted matrix that always breaks positive
/// semidefiniteness. Throws std::invalid_argument when `a` is not accepted or
/// the kind does not apply to its structure (PhaseFlip/EdgeDelete need a block
/// of size >= 3, DiagZero a block of size >= 2, DiagNegate any block).
Mutation mutate(const HermitianMatrix& a, std::uint64_t seed, MutationKind kind);

}  // namespace unipsd
