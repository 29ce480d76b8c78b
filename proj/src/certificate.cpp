#include "unipsd/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "unipsd/random.hpp"
#include "unipsd/recognizer.hpp"

namespace unipsd {

void Certificate::validate() const {
  if (phases.size() != n) throw MalformedCertificate("phase vector length differs from n");
  std::vector<char> owner(n, 0);
  auto claim = [&](Index i) {
    if (i >= n) throw MalformedCertificate("certificate index out of range");
    if (owner[i]) throw MalformedCertificate("index " + std::to_string(i + 1) + " appears twice");
    owner[i] = 1;
  };
  for (const IndexSet& b : blocks) {
    if (b.empty()) throw MalformedCertificate("empty block");
    for (Index i : b) claim(i);
  }
  for (Index i : zero_set) claim(i);
  if (std::find(owner.begin(), owner.end(), 0) != owner.end()) {
    throw MalformedCertificate("blocks and zero set do not cover every index");
  }
  for (Index i = 0; i < n; ++i) {
    const Complex p = phases[i];
    if (!std::isfinite(p.real()) || !std::isfinite(p.imag()) ||
        std::abs(std::abs(p) - 1.0) > tolerance_used.eps_mod) {
      throw MalformedCertificate("phase of index " + std::to_string(i + 1) + " is not unit modulus");
    }
  }
  for (Index i : zero_set) {
    if (phases[i] != Complex{1.0, 0.0}) throw MalformedCertificate("zero-set phases must be exactly 1");
  }
}

bool Certificate::is_canonical() const {
  for (Index k = 0; k < blocks.size(); ++k) {
    if (!std::is_sorted(blocks[k].begin(), blocks[k].end())) return false;
    if (k > 0 && blocks[k - 1].front() >= blocks[k].front()) return false;
    if (phases[blocks[k].front()] != Complex{1.0, 0.0}) return false;
  }
  return std::is_sorted(zero_set.begin(), zero_set.end());
}

HermitianMatrix reconstruct(const Certificate& cert) {
  cert.validate();
  DenseMatrix a(cert.n, cert.n);
  for (const IndexSet& b : cert.blocks) {
    for (Index i : b) {
      a(i, i) = 1.0;
      for (Index j : b) {
        if (j < i) a(i, j) = cert.phases[i] * std::conj(cert.phases[j]);
      }
    }
  }
  return HermitianMatrix::from_lower(std::move(a), cert.tolerance_used);
}

Certificate canonicalize(const Certificate& cert) {
  cert.validate();
  Certificate out = cert;
  for (IndexSet& b : out.blocks) std::sort(b.begin(), b.end());
  std::sort(out.blocks.begin(), out.blocks.end(),
            [](const IndexSet& x, const IndexSet& y) { return x.front() < y.front(); });
  std::sort(out.zero_set.begin(), out.zero_set.end());
  for (const IndexSet& b : out.blocks) {
    const Complex gauge = std::conj(out.phases[b.front()]);
    if (gauge == Complex{1.0, 0.0}) continue;
    for (Index i : b) out.phases[i] *= gauge;
    out.phases[b.front()] = 1.0;
  }
  return out;
}

bool equivalent(const Certificate& a, const Certificate& b, double tol) {
  if (a.n != b.n || a.blocks != b.blocks || a.zero_set != b.zero_set) return false;
  for (Index i = 0; i < a.n; ++i) {
    if (std::abs(a.phases[i] - b.phases[i]) > tol) return false;
  }
  return true;
}

CertificateCheck verify(const Certificate& cert, const HermitianMatrix& a) {
  if (cert.n != a.n()) throw std::invalid_argument("certificate and matrix dimensions differ");
  CertificateCheck check;
  check.max_deviation = max_abs_diff(reconstruct(cert).dense(), a.dense());
  check.tolerance = cert.tolerance_used.eps_mod;
  check.passed = check.max_deviation <= check.tolerance;
  return check;
}

DenseMatrix MonomialSimilarity::to_dense() const {
  const Index n = perm.size();
  DenseMatrix m(n, n);
  for (Index p = 0; p < n; ++p) m(perm[p], p) = diag[p];
  return m;
}

DenseMatrix GatheredForm::direct_sum() const {
  DenseMatrix s(n, n);
  Index offset = 0;
  for (Index k : block_sizes) {
    for (Index i = offset; i < offset + k; ++i)
      for (Index j = offset; j < offset + k; ++j) s(i, j) = 1.0;
    offset += k;
  }
  return s;
}

GatheredForm materialize_similarity(const Certificate& cert) {
  cert.validate();
  if (!cert.is_canonical()) throw MalformedCertificate("certificate is not canonical");
  GatheredForm g;
  g.n = cert.n;
  for (const IndexSet& b : cert.blocks) {
    g.block_sizes.push_back(b.size());
    for (Index i : b) g.similarity.perm.push_back(i);
  }
  for (Index i : cert.zero_set) g.similarity.perm.push_back(i);
  for (Index i : g.similarity.perm) g.similarity.diag.push_back(cert.phases[i]);
  return g;
}

namespace {

Complex draw_phase(SeededRng& rng, PhaseAlphabet alphabet) {
  switch (alphabet) {
    case PhaseAlphabet::UniformAngle: return std::polar(1.0, 2.0 * std::numbers::pi * rng.unit());
    case PhaseAlphabet::FourthRoots: {
      static constexpr Complex roots[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      return roots[rng.below(4)];
    }
    case PhaseAlphabet::EighthRoots: {
      const double h = std::numbers::sqrt2 / 2.0;
      const Complex roots[] = {{1, 0}, {h, h}, {0, 1}, {-h, h}, {-1, 0}, {-h, -h}, {0, -1}, {h, -h}};
      return roots[rng.below(8)];
    }
    case PhaseAlphabet::Signs: return rng.below(2) ? Complex{-1.0, 0.0} : Complex{1.0, 0.0};
    case PhaseAlphabet::One: return {1.0, 0.0};
  }
  return {1.0, 0.0};
}

}  // namespace

Certificate random_certificate(Index n, std::uint64_t seed, const GeneratorParams& params) {
  params.tolerance.validate();
  if (n == 0) throw std::invalid_argument("dimension must be at least 1");
  const Index max_block = params.max_block_size == 0 ? n : params.max_block_size;
  if (params.min_block_size == 0 || params.min_block_size > max_block || params.min_block_size > n) {
    throw std::invalid_argument("impossible block size range");
  }
  if (!(params.zero_fraction >= 0.0 && params.zero_fraction < 1.0)) {
    throw std::invalid_argument("zero fraction must lie in [0, 1)");
  }

  SeededRng rng(seed);
  Certificate cert;
  cert.n = n;
  cert.tolerance_used = params.tolerance;
  cert.phases.assign(n, Complex{1.0, 0.0});

  IndexSet live;
  for (Index i = 0; i < n; ++i) {
    if (rng.unit() < params.zero_fraction) {
      cert.zero_set.push_back(i);
    } else {
      live.push_back(i);
    }
  }
  rng.shuffle(live);

  Index pos = 0;
  while (live.size() - pos >= params.min_block_size) {
    const Index remaining = live.size() - pos;
    const Index size = rng.between(params.min_block_size, std::min(max_block, remaining));
    IndexSet block(live.begin() + static_cast<std::ptrdiff_t>(pos),
                   live.begin() + static_cast<std::ptrdiff_t>(pos + size));
    std::sort(block.begin(), block.end());
    for (Index k = 1; k < block.size(); ++k) cert.phases[block[k]] = draw_phase(rng, params.alphabet);
    cert.blocks.push_back(std::move(block));
    pos += size;
  }
  for (; pos < live.size(); ++pos) cert.zero_set.push_back(live[pos]);

  std::sort(cert.zero_set.begin(), cert.zero_set.end());
  std::sort(cert.blocks.begin(), cert.blocks.end(),
            [](const IndexSet& x, const IndexSet& y) { return x.front() < y.front(); });
  return cert;
}

const char* to_string(MutationKind kind) {
  switch (kind) {
    case MutationKind::PhaseFlip: return "phase_flip";
    case MutationKind::EdgeDelete: return "edge_delete";
    case MutationKind::DiagNegate: return "diag_negate";
    case MutationKind::DiagZero: return "diag_zero";
  }
  return "?";
}

Mutation mutate_at(const HermitianMatrix& a, MutationKind kind, Index row, Index col) {
  const Index n = a.n();
  if (row >= n || col >= n) throw std::invalid_argument("mutation site out of range");
  const bool diagonal = kind == MutationKind::DiagNegate || kind == MutationKind::DiagZero;
  if (diagonal != (row == col)) {
    throw std::invalid_argument(std::string(to_string(kind)) +
                                (diagonal ? " needs a diagonal site" : " needs an off-diagonal site"));
  }
  DenseMatrix m = a.dense();
  const Index i = std::max(row, col);
  const Index j = std::min(row, col);
  switch (kind) {
    case MutationKind::PhaseFlip: m(i, j) = -m(i, j); break;
    case MutationKind::EdgeDelete: m(i, j) = 0.0; break;
    case MutationKind::DiagNegate: m(i, i) = -m(i, i); break;
    case MutationKind::DiagZero: m(i, i) = 0.0; break;
  }
  return {HermitianMatrix::from_lower(std::move(m), a.tolerance()), kind, std::min(row, col),
          std::max(row, col)};
}

Mutation mutate(const HermitianMatrix& a, std::uint64_t seed, MutationKind kind) {
  const Recognition rec = recognize(a);
  const auto* cert = std::get_if<Certificate>(&rec);
  if (cert == nullptr) throw std::invalid_argument("mutate needs a matrix accepted by recognize");

  Index min_size = 1;
  if (kind == MutationKind::PhaseFlip || kind == MutationKind::EdgeDelete) min_size = 3;
  if (kind == MutationKind::DiagZero) min_size = 2;

  std::vector<const IndexSet*> eligible;
  for (const IndexSet& b : cert->blocks)
    if (b.size() >= min_size) eligible.push_back(&b);
  if (eligible.empty()) {
    throw std::invalid_argument(std::string(to_string(kind)) + " needs a block of size >= " +
                                std::to_string(min_size));
  }

  SeededRng rng(seed);
  const IndexSet& block = *eligible[rng.below(eligible.size())];
  const Index first = rng.below(block.size());
  if (min_size < 3) return mutate_at(a, kind, block[first], block[first]);
  Index second = rng.below(block.size() - 1);
  if (second >= first) ++second;
  return mutate_at(a, kind, block[first], block[second]);
}

}  // namespace unipsd
