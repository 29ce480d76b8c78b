#include "unipsd/recognizer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace unipsd {
namespace {

class ClassTable {
 public:
  ClassTable(const HermitianMatrix& a) : n_(a.n()), cls_(n_ * n_) {
    const ToleranceConfig& tol = a.tolerance();
    for (Index i = 0; i < n_; ++i) {
      for (Index j = i; j < n_; ++j) {
        const EntryClass c = classify_entry(a(i, j), tol);
        cls_[i * n_ + j] = c;
        cls_[j * n_ + i] = c;
      }
    }
  }
  EntryClass operator()(Index i, Index j) const { return cls_[i * n_ + j]; }

 private:
  Index n_;
  std::vector<EntryClass> cls_;
};

std::string index_list(const IndexSet& idx) {
  std::ostringstream os;
  os << '{';
  for (Index k = 0; k < idx.size(); ++k) os << (k ? "," : "") << idx[k] + 1;
  os << '}';
  return os.str();
}

// Unit eigenvector for the smallest eigenvalue of a Hermitian 2x2 block.
std::vector<Complex> smallest_eigvec_2x2(const DenseMatrix& b) {
  const double p = b(0, 0).real();
  const double r = b(1, 1).real();
  const Complex q = b(0, 1);
  const double lambda = 0.5 * (p + r) - std::hypot(0.5 * (p - r), std::abs(q));
  // Rows of (B - lambda I) are orthogonal to the eigenvector; pick the
  // better-conditioned of the two candidate null vectors.
  std::vector<Complex> v1{q, lambda - p};
  std::vector<Complex> v2{lambda - r, std::conj(q)};
  auto norm = [](const std::vector<Complex>& v) { return std::hypot(std::abs(v[0]), std::abs(v[1])); };
  std::vector<Complex>& v = norm(v1) >= norm(v2) ? v1 : v2;
  const double s = norm(v);
  for (Complex& z : v) z /= s;
  return v;
}

double rayleigh(const DenseMatrix& b, const std::vector<Complex>& x) {
  Complex s{};
  for (Index i = 0; i < b.rows(); ++i) {
    Complex y{};
    for (Index j = 0; j < b.cols(); ++j) y += b(i, j) * x[j];
    s += std::conj(x[i]) * y;
  }
  return s.real();
}

// Smallest eigenvector of a small Hermitian block by power iteration on
// (sigma I - B), sigma >= lambda_max. Each basis vector is tried as a start
// so a start orthogonal to the target eigenvector cannot stall the result.
std::vector<Complex> smallest_eigvec_power(const DenseMatrix& b) {
  const Index k = b.rows();
  double sigma = 0.0;
  for (Index i = 0; i < k; ++i) {
    double row = 0.0;
    for (Index j = 0; j < k; ++j) row += std::abs(b(i, j));
    sigma = std::max(sigma, row);
  }

  std::vector<Complex> best;
  double best_q = 0.0;
  for (Index start = 0; start < k; ++start) {
    std::vector<Complex> x(k), y(k);
    x[start] = 1.0;
    for (int it = 0; it < 1000; ++it) {
      double ny = 0.0;
      for (Index i = 0; i < k; ++i) {
        Complex acc = sigma * x[i];
        for (Index j = 0; j < k; ++j) acc -= b(i, j) * x[j];
        y[i] = acc;
        ny += std::norm(acc);
      }
      ny = std::sqrt(ny);
      if (ny == 0.0) break;
      double change = 0.0;
      for (Index i = 0; i < k; ++i) {
        y[i] /= ny;
        change = std::max(change, std::abs(y[i] - x[i]));
      }
      x.swap(y);
      if (change < 1e-15) break;
    }
    const double q = rayleigh(b, x);
    if (best.empty() || q < best_q) {
      best = x;
      best_q = q;
    }
  }
  return best;
}

Rejection not_psd(const HermitianMatrix& a, IndexSet idx, std::string why) {
  std::sort(idx.begin(), idx.end());
  const DenseMatrix b = a.dense().submatrix(idx, idx);
  std::vector<Complex> local;
  if (idx.size() == 1) {
    local = {1.0};
  } else if (idx.size() == 2) {
    local = smallest_eigvec_2x2(b);
  } else {
    local = smallest_eigvec_power(b);
  }

  Rejection r;
  r.reason = RejectionReason::NotPSD;
  r.witness.assign(a.n(), Complex{});
  for (Index k = 0; k < idx.size(); ++k) r.witness[idx[k]] = local[k];
  r.detail = why + " in principal submatrix " + index_list(idx);
  r.offending_indices = std::move(idx);
  return r;
}

Rejection out_of_class(Index i, Index j, Complex z) {
  Rejection r;
  r.reason = RejectionReason::OutOfClass;
  r.offending_indices = {i, j};
  std::ostringstream os;
  os << "entry (" << i + 1 << ',' << j + 1 << ") has modulus " << std::abs(z)
     << ", which is neither 0 nor 1";
  r.detail = os.str();
  return r;
}

}  // namespace

const char* to_string(RejectionReason reason) {
  switch (reason) {
    case RejectionReason::NotPSD: return "not_psd";
    case RejectionReason::OutOfClass: return "out_of_class";
    case RejectionReason::NotHermitian: return "not_hermitian";
  }
  return "?";
}

Recognition recognize(const HermitianMatrix& a) {
  const Index n = a.n();
  const ToleranceConfig& tol = a.tolerance();
  const ClassTable cls(a);

  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j)
      if (cls(i, j) == EntryClass::OutOfClass) return out_of_class(i, j, a(i, j));

  for (Index i = 0; i < n; ++i) {
    if (cls(i, i) == EntryClass::Unit && a(i, i).real() < 0.0) {
      return not_psd(a, {i}, "negative diagonal entry");
    }
  }
  for (Index i = 0; i < n; ++i) {
    if (cls(i, i) != EntryClass::Zero) continue;
    for (Index j = 0; j < n; ++j) {
      if (j != i && cls(i, j) == EntryClass::Unit) {
        return not_psd(a, {i, j}, "zero diagonal with a unit entry in its row");
      }
    }
  }

  Certificate cert;
  cert.n = n;
  cert.phases.assign(n, Complex{1.0, 0.0});
  cert.tolerance_used = tol;

  std::vector<char> seen(n, 0);
  for (Index root = 0; root < n; ++root) {
    if (cls(root, root) == EntryClass::Zero) {
      cert.zero_set.push_back(root);
      continue;
    }
    if (seen[root]) continue;

    // Neighbourhood of the root; the component is a clique iff no member has
    // a unit neighbour outside it.
    IndexSet members{root};
    seen[root] = 1;
    for (Index j = root + 1; j < n; ++j) {
      if (cls(root, j) == EntryClass::Unit) {
        members.push_back(j);
        seen[j] = 1;
      }
    }
    for (Index k = 1; k < members.size(); ++k) {
      const Index u = members[k];
      for (Index v = 0; v < n; ++v) {
        if (v != u && cls(u, v) == EntryClass::Unit && !seen[v]) {
          return not_psd(a, {root, u, v}, "support component is not a clique");
        }
      }
    }

    for (Index k = 1; k < members.size(); ++k) {
      const Index i = members[k];
      cert.phases[i] = a(i, root) / std::abs(a(i, root));
    }
    for (Index x = 1; x < members.size(); ++x) {
      const Index i = members[x];
      for (Index y = x + 1; y < members.size(); ++y) {
        const Index j = members[y];
        if (std::abs(a(i, j) - cert.phases[i] * std::conj(cert.phases[j])) > tol.eps_mod) {
          return not_psd(a, {root, i, j}, "inconsistent phases around a triangle");
        }
      }
    }
    cert.blocks.push_back(std::move(members));
  }
  return cert;
}

Recognition recognize_binary(const HermitianMatrix& a) {
  const Index n = a.n();
  const ToleranceConfig& tol = a.tolerance();
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      const Complex z = a(i, j);
      const EntryClass c = classify_entry(z, tol);
      const bool binary = c == EntryClass::Zero ||
                          (c == EntryClass::Unit && z.real() > 0.0 && std::abs(z.imag()) <= tol.eps_mod);
      if (!binary) {
        Rejection r = out_of_class(i, j, z);
        r.detail = "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") is not 0 or 1";
        return r;
      }
    }
  }
  Recognition r = recognize(a);
  if (auto* cert = std::get_if<Certificate>(&r)) {
    std::fill(cert->phases.begin(), cert->phases.end(), Complex{1.0, 0.0});
  }
  return r;
}

double quadratic_form(const HermitianMatrix& a, std::span<const Complex> x) {
  const Index n = a.n();
  if (x.size() != n) throw std::invalid_argument("vector length does not match matrix dimension");
  Complex s{};
  double xx = 0.0;
  for (Index i = 0; i < n; ++i) {
    Complex y{};
    const auto row = a.dense().row(i);
    for (Index j = 0; j < n; ++j) y += row[j] * x[j];
    s += std::conj(x[i]) * y;
    xx += std::norm(x[i]);
  }
  if (std::abs(s.imag()) > a.tolerance().eps_herm * static_cast<double>(n) * std::max(1.0, xx)) {
    throw std::logic_error("quadratic form of a Hermitian matrix has a non-negligible imaginary part");
  }
  return s.real();
}

Rejection make_not_hermitian(const NotHermitianError& e) {
  Rejection r;
  r.reason = RejectionReason::NotHermitian;
  r.offending_indices = {e.row(), e.col()};
  r.detail = e.what();
  return r;
}

std::vector<IndexSet> SupportGraph::components() const {
  std::vector<IndexSet> out;
  std::vector<char> seen(adjacency.size(), 0);
  for (Index v : vertices) {
    if (seen[v]) continue;
    IndexSet comp{v};
    seen[v] = 1;
    for (Index k = 0; k < comp.size(); ++k) {
      for (Index w : adjacency[comp[k]]) {
        if (!seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

SupportGraph support_graph(const HermitianMatrix& a) {
  const Index n = a.n();
  const ToleranceConfig& tol = a.tolerance();
  SupportGraph g;
  g.adjacency.resize(n);
  std::vector<char> vertex(n, 0);
  for (Index i = 0; i < n; ++i) {
    const EntryClass c = classify_entry(a(i, i), tol);
    if (c == EntryClass::Unit) {
      g.vertices.push_back(i);
      vertex[i] = 1;
    } else if (c == EntryClass::Zero) {
      g.zero_set.push_back(i);
    }
  }
  for (Index i : g.vertices) {
    for (Index j : g.vertices) {
      if (i != j && classify_entry(a(i, j), tol) == EntryClass::Unit) g.adjacency[i].push_back(j);
    }
  }
  return g;
}

}  // namespace unipsd
