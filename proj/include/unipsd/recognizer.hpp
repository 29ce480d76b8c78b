// Combinatorial recognition of Hermitian PSD matrices whose entries have
// modulus 0 or 1.
//
// The support graph on unit-diagonal indices must be a disjoint union of
// cliques, and on each clique the entries must factor as a_ij = d_i conj(d_j)
// for a unit phase vector d (a consistent gauge). Everything else fails on a
// principal submatrix of size at most 3, which is returned as a witness.
#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "unipsd/certificate.hpp"
#include "unipsd/matrix.hpp"

namespace unipsd {

enum class RejectionReason { NotPSD, OutOfClass, NotHermitian };

const char* to_string(RejectionReason reason);

struct Rejection {
  RejectionReason reason = RejectionReason::NotPSD;
  /// Length n with x^* A x < 0 for NotPSD, empty otherwise.
  std::vector<Complex> witness;
  /// 0-based. The principal submatrix (<= 3 indices) for NotPSD, the
  /// offending (i, j) pair otherwise.
  IndexSet offending_indices;
  std::string detail;
};

using Recognition = std::variant<Certificate, Rejection>;

inline bool accepted(const Recognition& r) { return std::holds_alternative<Certificate>(r); }

/// Certificate iff `a` is PSD and every entry classifies as Zero or Unit.
///
/// Rejection precedence: out-of-class entries first (smallest (i, j) in
/// row-major order), then a negative diagonal, then a zero diagonal with a
/// unit entry in its row, then non-clique components, then gauge mismatches;
/// each scan runs in ascending index order. O(n^2).
Recognition recognize(const HermitianMatrix& a);

/// As recognize, but every entry must also be real and nonnegative
/// ((0,1) matrices). Accepted certificates carry phases exactly 1.
Recognition recognize_binary(const HermitianMatrix& a);

/// Re(x^* A x). Throws std::invalid_argument on a length mismatch.
double quadratic_form(const HermitianMatrix& a, std::span<const Complex> x);

Rejection make_not_hermitian(const NotHermitianError& e);

/// Unit-diagonal vertices, zero-diagonal indices, and unit-entry adjacency
/// restricted to the vertices.
struct SupportGraph {
  IndexSet vertices;
  IndexSet zero_set;
  std::vector<IndexSet> adjacency;  ///< indexed by matrix index; empty for zero_set

  /// Connected components over `vertices`, each ascending, ordered by root.
  std::vector<IndexSet> components() const;
};

SupportGraph support_graph(const HermitianMatrix& a);

}  // namespace unipsd
