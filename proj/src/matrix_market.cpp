#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "unipsd/io.hpp"

namespace unipsd::io {
namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool skippable(std::string_view line) {
  const auto tokens = split(line);
  return tokens.empty() || tokens.front().front() == '%';
}

Index parse_index(std::string_view tok, std::size_t line, const char* what) {
  unsigned long long v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw IoError(line, std::string("invalid ") + what + " '" + std::string(tok) + "'");
  }
  return static_cast<Index>(v);
}

double parse_real(std::string_view tok, std::size_t line, bool integer_only) {
  std::string_view body = tok;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  double v = 0.0;
  bool ok = false;
  if (integer_only) {
    long long k = 0;
    const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), k);
    ok = ec == std::errc{} && ptr == body.data() + body.size() && !body.empty();
    v = static_cast<double>(k);
  } else {
    const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
    ok = ec == std::errc{} && ptr == body.data() + body.size() && !body.empty();
  }
  if (!ok) throw IoError(line, "non-numeric value '" + std::string(tok) + "'");
  if (!std::isfinite(v)) throw IoError(line, "non-finite value '" + std::string(tok) + "'");
  return v;
}

void append_number(std::string& out, double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

}  // namespace

IoError::IoError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

DenseMatrix MatrixDocument::to_dense() const {
  DenseMatrix m(n, n);
  for (const Entry& e : entries) {
    m(e.row, e.col) = e.value;
    if (e.row == e.col) continue;
    if (symmetry == MmSymmetry::Hermitian) m(e.col, e.row) = std::conj(e.value);
    if (symmetry == MmSymmetry::Symmetric) m(e.col, e.row) = e.value;
  }
  return m;
}

MatrixDocument read_matrix_document(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw IoError(1, "empty input");
  ++lineno;

  const auto header = split(line);
  if (header.empty() || lower(header[0]) != "%%matrixmarket") {
    throw IoError(lineno, "missing %%MatrixMarket header");
  }
  if (header.size() != 5) throw IoError(lineno, "header needs: matrix coordinate <field> <symmetry>");
  if (lower(header[1]) != "matrix") throw IoError(lineno, "unsupported object '" + std::string(header[1]) + "'");
  if (lower(header[2]) != "coordinate") {
    throw IoError(lineno, "unsupported format '" + std::string(header[2]) + "' (only coordinate)");
  }

  MatrixDocument doc;
  const std::string field = lower(header[3]);
  if (field == "complex") {
    doc.field = MmField::Complex;
  } else if (field == "real") {
    doc.field = MmField::Real;
  } else if (field == "integer") {
    doc.field = MmField::Integer;
  } else {
    throw IoError(lineno, "unsupported field '" + std::string(header[3]) + "'");
  }
  const std::string symmetry = lower(header[4]);
  if (symmetry == "general") {
    doc.symmetry = MmSymmetry::General;
  } else if (symmetry == "symmetric") {
    doc.symmetry = MmSymmetry::Symmetric;
  } else if (symmetry == "hermitian") {
    doc.symmetry = MmSymmetry::Hermitian;
  } else {
    throw IoError(lineno, "unsupported symmetry '" + std::string(header[4]) + "'");
  }

  bool have_size = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (skippable(line)) continue;
    have_size = true;
    break;
  }
  if (!have_size) throw IoError(lineno, "missing size line");
  const auto size = split(line);
  if (size.size() != 3) throw IoError(lineno, "size line needs: rows cols entries");
  const Index rows = parse_index(size[0], lineno, "row count");
  const Index cols = parse_index(size[1], lineno, "column count");
  const Index nnz = parse_index(size[2], lineno, "entry count");
  if (rows != cols) throw IoError(lineno, "matrix is not square");
  if (rows == 0) throw IoError(lineno, "matrix dimension must be positive");
  if (rows > kMaxDimension) throw IoError(lineno, "matrix dimension exceeds " + std::to_string(kMaxDimension));
  if (nnz > rows * rows) throw IoError(lineno, "more entries declared than the matrix can hold");
  doc.n = rows;

  const std::size_t expected_tokens = doc.field == MmField::Complex ? 4 : 3;
  const bool triangular = doc.symmetry != MmSymmetry::General;
  std::unordered_set<std::uint64_t> seen;
  doc.entries.reserve(nnz);
  while (doc.entries.size() < nnz) {
    if (!std::getline(in, line)) {
      throw IoError(lineno, "expected " + std::to_string(nnz) + " entries, found " +
                                std::to_string(doc.entries.size()));
    }
    ++lineno;
    if (skippable(line)) continue;
    const auto tok = split(line);
    if (tok.size() != expected_tokens) {
      throw IoError(lineno, "expected " + std::to_string(expected_tokens) + " fields, found " +
                                std::to_string(tok.size()));
    }
    const Index i = parse_index(tok[0], lineno, "row index");
    const Index j = parse_index(tok[1], lineno, "column index");
    if (i < 1 || i > doc.n || j < 1 || j > doc.n) {
      throw IoError(lineno, "index (" + std::string(tok[0]) + "," + std::string(tok[1]) + ") out of range");
    }
    if (triangular && i < j) {
      throw IoError(lineno, "upper-triangle entry (" + std::to_string(i) + "," + std::to_string(j) +
                                ") in a " + symmetry + " file");
    }
    if (!seen.insert(static_cast<std::uint64_t>(i - 1) * doc.n + (j - 1)).second) {
      throw IoError(lineno, "duplicate entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
    const bool integer = doc.field == MmField::Integer;
    const double re = parse_real(tok[2], lineno, integer);
    const double im = doc.field == MmField::Complex ? parse_real(tok[3], lineno, false) : 0.0;
    doc.entries.push_back({i - 1, j - 1, Complex{re, im}});
  }
  while (std::getline(in, line)) {
    ++lineno;
    if (!skippable(line)) throw IoError(lineno, "more entries than declared");
  }
  return doc;
}

HermitianMatrix parse_matrix(std::istream& in, const ToleranceConfig& tol) {
  return validate_hermitian(read_matrix_document(in).to_dense(), tol);
}

HermitianMatrix parse_matrix(std::string_view text, const ToleranceConfig& tol) {
  std::istringstream in{std::string(text)};
  return parse_matrix(in, tol);
}

namespace {

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return in;
}

}  // namespace

HermitianMatrix read_matrix_file(const std::filesystem::path& path, const ToleranceConfig& tol) {
  std::ifstream in = open_or_throw(path);
  return parse_matrix(in, tol);
}

DenseMatrix read_general_matrix_file(const std::filesystem::path& path) {
  std::ifstream in = open_or_throw(path);
  return read_matrix_document(in).to_dense();
}

std::string write_matrix(const HermitianMatrix& a) {
  const Index n = a.n();
  std::vector<std::pair<Index, Index>> nz;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j <= i; ++j)
      if (a(i, j) != Complex{}) nz.emplace_back(i, j);

  std::string out = "%%MatrixMarket matrix coordinate complex hermitian\n";
  out += std::to_string(n) + " " + std::to_string(n) + " " + std::to_string(nz.size()) + "\n";
  for (const auto& [i, j] : nz) {
    out += std::to_string(i + 1);
    out += ' ';
    out += std::to_string(j + 1);
    out += ' ';
    append_number(out, a(i, j).real());
    out += ' ';
    append_number(out, a(i, j).imag());
    out += '\n';
  }
  return out;
}

}  // namespace unipsd::io
