// Matrix Market ingestion and JSON documents for certificates and reports.
//
// All indices crossing this boundary are 1-based; everything inside the
// library is 0-based.
#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "unipsd/certificate.hpp"
#include "unipsd/factorizer.hpp"
#include "unipsd/matrix.hpp"
#include "unipsd/oracle.hpp"
#include "unipsd/recognizer.hpp"

namespace unipsd::io {

class IoError : public std::runtime_error {
 public:
  IoError(std::size_t line, const std::string& what);
  explicit IoError(const std::string& what) : std::runtime_error(what), line_(0) {}
  /// 1-based source line, 0 when not tied to a line.
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

enum class MmField { Complex, Real, Integer };
enum class MmSymmetry { General, Symmetric, Hermitian };

inline constexpr Index kMaxDimension = 16384;

struct MatrixDocument {
  struct Entry {
    Index row;  ///< 0-based
    Index col;
    Complex value;
  };
  MmField field = MmField::Complex;
  MmSymmetry symmetry = MmSymmetry::General;
  Index n = 0;
  std::vector<Entry> entries;

  /// Dense materialization; hermitian files mirror conj(v), symmetric files v.
  DenseMatrix to_dense() const;
};

/// Coordinate-format Matrix Market reader. Supported qualifiers: field
/// complex/real/integer, symmetry general/symmetric/hermitian. Symmetric and
/// hermitian files may only store i >= j. Throws IoError with the offending
/// line for anything else.
MatrixDocument read_matrix_document(std::istream& in);

/// read_matrix_document + validate_hermitian.
HermitianMatrix parse_matrix(std::istream& in, const ToleranceConfig& tol = {});
HermitianMatrix parse_matrix(std::string_view text, const ToleranceConfig& tol = {});
HermitianMatrix read_matrix_file(const std::filesystem::path& path, const ToleranceConfig& tol = {});
DenseMatrix read_general_matrix_file(const std::filesystem::path& path);

/// "matrix coordinate complex hermitian", lower triangle, nonzeros only,
/// shortest round-trip decimal formatting.
std::string write_matrix(const HermitianMatrix& a);

enum class Verdict { Accepted, NotPsd, OutOfClass, NotHermitian, IoError };

const char* to_string(Verdict v);

struct RunReport {
  Verdict verdict = Verdict::IoError;
  std::optional<Certificate> certificate;    ///< iff Accepted
  std::optional<std::vector<Complex>> witness;  ///< iff NotPsd
  std::optional<double> witness_value;       ///< x^* A x of the witness
  IndexSet offending_indices;
  std::string diagnostics;
  ToleranceConfig tolerance_used;
};

RunReport make_report(const Recognition& r, const HermitianMatrix& a);
RunReport make_report(const NotHermitianError& e, const ToleranceConfig& tol);
RunReport make_report(const IoError& e, const ToleranceConfig& tol);

/// Deterministic, key-sorted JSON. Complex numbers are [re, im] pairs.
std::string emit(const Certificate& c);
std::string emit(const RunReport& r);
std::string emit(const PsrpReport& r);
std::string emit(const FactorPair& f, const FactorizationReport& check);
std::string emit(const OracleVerdict& v);
std::string emit(const CertificateCheck& c);

/// Inverse of emit(Certificate). Throws IoError for malformed JSON or schema
/// violations and MalformedCertificate for structurally invalid content.
Certificate parse_certificate(std::string_view text);

}  // namespace unipsd::io
