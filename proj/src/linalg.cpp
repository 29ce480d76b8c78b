#include "unipsd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace unipsd::linalg {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxSweeps = 100;

// Unitary plane rotation U on coordinates (p, q) that annihilates the
// off-diagonal entry `apq` of the 2x2 Hermitian block [[app, apq], [conj(apq), aqq]]:
//   U = [[c, s*e], [-s*conj(e), c]],  e = apq / |apq|.
struct Rotation {
  double c;
  double s;
  Complex e;
};

Rotation make_rotation(double app, double aqq, Complex apq) {
  const double h = std::abs(apq);
  const double tau = (aqq - app) / (2.0 * h);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
  const double c = 1.0 / std::hypot(1.0, t);
  return {c, t * c, apq / h};
}

// columns p, q of m  <-  [col_p, col_q] * U
void rotate_columns(DenseMatrix& m, Index p, Index q, const Rotation& r) {
  const Complex se = r.s * r.e;
  const Complex se_bar = r.s * std::conj(r.e);
  for (Index k = 0; k < m.rows(); ++k) {
    const Complex x = m(k, p);
    const Complex y = m(k, q);
    m(k, p) = r.c * x - se_bar * y;
    m(k, q) = se * x + r.c * y;
  }
}

// rows p, q of m  <-  U* * [row_p; row_q]
void rotate_rows(DenseMatrix& m, Index p, Index q, const Rotation& r) {
  const Complex se = r.s * r.e;
  const Complex se_bar = r.s * std::conj(r.e);
  for (Index k = 0; k < m.cols(); ++k) {
    const Complex x = m(p, k);
    const Complex y = m(q, k);
    m(p, k) = r.c * x - se * y;
    m(q, k) = se_bar * x + r.c * y;
  }
}

double off_diagonal_norm(const DenseMatrix& a) {
  double sum = 0.0;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < i; ++j) sum += 2.0 * std::norm(a(i, j));
  return std::sqrt(sum);
}

}  // namespace

EigenDecomposition hermitian_eigen(const DenseMatrix& input) {
  if (!input.square()) throw std::invalid_argument("eigen decomposition needs a square matrix");
  const Index n = input.rows();

  DenseMatrix a(n, n);
  for (Index i = 0; i < n; ++i) {
    a(i, i) = input(i, i).real();
    for (Index j = 0; j < i; ++j) {
      a(i, j) = input(i, j);
      a(j, i) = std::conj(input(i, j));
    }
  }
  DenseMatrix v = DenseMatrix::identity(n);

  double frob = 0.0;
  for (const Complex& z : a.data()) frob += std::norm(z);
  frob = std::sqrt(frob);

  if (frob > 0.0) {
    const double skip = 1e-2 * kEps * frob / static_cast<double>(n);
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
      if (off_diagonal_norm(a) <= kEps * frob) break;
      for (Index p = 0; p + 1 < n; ++p) {
        for (Index q = p + 1; q < n; ++q) {
          const Complex apq = a(p, q);
          if (std::abs(apq) <= skip) continue;
          const Rotation r = make_rotation(a(p, p).real(), a(q, q).real(), apq);
          rotate_columns(a, p, q, r);
          rotate_rows(a, p, q, r);
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          a(p, p) = a(p, p).real();
          a(q, q) = a(q, q).real();
          rotate_columns(v, p, q, r);
        }
      }
    }
  }

  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index x, Index y) { return a(x, x).real() < a(y, y).real(); });

  EigenDecomposition out;
  out.values.resize(n);
  out.vectors = DenseMatrix(n, n);
  for (Index k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (Index i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

std::vector<double> singular_values(const DenseMatrix& m) {
  DenseMatrix w = m.cols() > m.rows() ? m.adjoint() : m;
  const Index k = w.cols();

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (Index p = 0; p + 1 < k; ++p) {
      for (Index q = p + 1; q < k; ++q) {
        double alpha = 0.0, beta = 0.0;
        Complex gamma{};
        for (Index i = 0; i < w.rows(); ++i) {
          alpha += std::norm(w(i, p));
          beta += std::norm(w(i, q));
          gamma += std::conj(w(i, p)) * w(i, q);
        }
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= kEps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        rotate_columns(w, p, q, make_rotation(alpha, beta, gamma));
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sigma(k);
  for (Index j = 0; j < k; ++j) {
    double s = 0.0;
    for (Index i = 0; i < w.rows(); ++i) s += std::norm(w(i, j));
    sigma[j] = std::sqrt(s);
  }
  std::sort(sigma.begin(), sigma.end(), std::greater<>());
  return sigma;
}

}  // namespace unipsd::linalg
