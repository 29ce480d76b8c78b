#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "unipsd/certificate.hpp"
#include "unipsd/oracle.hpp"
#include "unipsd/recognizer.hpp"

using namespace unipsd;
using oracle::I;
using oracle::mat;

namespace {

Certificate make(Index n, std::vector<IndexSet> blocks, IndexSet zero = {},
                 std::vector<Complex> phases = {}) {
  Certificate c;
  c.n = n;
  c.blocks = std::move(blocks);
  c.zero_set = std::move(zero);
  c.phases = phases.empty() ? std::vector<Complex>(n, 1.0) : std::move(phases);
  return c;
}

const DenseMatrix kPhaseMatrix = DenseMatrix::from_rows({{1, -I, -1}, {I, 1, -I}, {-1, I, 1}});

}  // namespace

TEST_CASE("reconstruct examples") {
  CHECK(reconstruct(make(3, {{0}, {1}, {2}})).dense() == DenseMatrix::identity(3));
  CHECK(reconstruct(make(3, {{0, 1, 2}})).dense() == oracle::ones(3));
  CHECK(reconstruct(make(3, {{0, 1, 2}}, {}, {1.0, I, -1.0})).dense() == kPhaseMatrix);
  CHECK(reconstruct(make(2, {}, {0, 1})).dense() == DenseMatrix(2, 2));
}

TEST_CASE("validation rejects malformed certificates") {
  CHECK_THROWS_AS(make(3, {{0, 1}}).validate(), MalformedCertificate);
  CHECK_THROWS_AS(make(2, {{0, 1}}, {1}).validate(), MalformedCertificate);
  CHECK_THROWS_AS(make(2, {{0, 2}}).validate(), MalformedCertificate);
  CHECK_THROWS_AS(make(2, {{0, 1}, {}}).validate(), MalformedCertificate);
  CHECK_THROWS_AS(make(2, {{0, 1}}, {}, {1.0, 0.5}).validate(), MalformedCertificate);
  CHECK_THROWS_AS(make(2, {{0}}, {1}, {1.0, I}).validate(), MalformedCertificate);
  Certificate short_phases = make(2, {{0, 1}});
  short_phases.phases.pop_back();
  CHECK_THROWS_AS(reconstruct(short_phases), MalformedCertificate);
}

TEST_CASE("canonicalize examples") {
  const Certificate c = canonicalize(make(3, {{1}, {2, 0}}));
  CHECK(c.blocks == std::vector<IndexSet>{{0, 2}, {1}});
  CHECK(c.is_canonical());

  const Certificate p = make(2, {{0, 1}}, {}, {I, -1.0});
  const Certificate q = canonicalize(p);
  CHECK(q.phases[0] == Complex{1.0});
  CHECK(std::abs(q.phases[1] - I) < 1e-15);
  CHECK(oracle::max_diff(reconstruct(p).dense(), reconstruct(q).dense()) < 1e-15);
  CHECK_FALSE(p.is_canonical());
}

TEST_CASE("canonicalize is idempotent and preserves the matrix") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  for (int trial = 0; trial < 1000; ++trial) {
    const Index n = 1 + trial % 20;
    Certificate c = random_certificate(n, static_cast<std::uint64_t>(trial));
    // Scramble: shuffle blocks and members, re-gauge each block.
    std::shuffle(c.blocks.begin(), c.blocks.end(), rng);
    for (IndexSet& b : c.blocks) {
      std::shuffle(b.begin(), b.end(), rng);
      const Complex g = std::polar(1.0, angle(rng));
      for (Index i : b) c.phases[i] *= g;
    }
    std::reverse(c.zero_set.begin(), c.zero_set.end());
    const Certificate once = canonicalize(c);
    CHECK(once.is_canonical());
    CHECK(canonicalize(once) == once);
    CHECK(oracle::max_diff(reconstruct(once).dense(), reconstruct(c).dense()) < 1e-14);
  }
}

TEST_CASE("verify") {
  const Certificate j3 = make(3, {{0, 1, 2}});
  auto check = verify(j3, HermitianMatrix::from_lower(oracle::ones(3)));
  CHECK(check.passed);
  CHECK(check.max_deviation == 0.0);
  check = verify(j3, HermitianMatrix::from_lower(DenseMatrix::identity(3)));
  CHECK_FALSE(check.passed);
  CHECK(check.max_deviation == doctest::Approx(1.0));
  CHECK_THROWS_AS(verify(j3, HermitianMatrix::from_lower(DenseMatrix::identity(2))), std::invalid_argument);
}

TEST_CASE("materialize_similarity") {
  SUBCASE("identity") {
    const GatheredForm g = materialize_similarity(make(3, {{0}, {1}, {2}}));
    CHECK(g.similarity.perm == std::vector<Index>{0, 1, 2});
    CHECK(g.similarity.to_dense() == DenseMatrix::identity(3));
    CHECK(g.direct_sum() == DenseMatrix::identity(3));
  }
  SUBCASE("interleaved blocks") {
    const Certificate c = make(3, {{0, 2}, {1}});
    const GatheredForm g = materialize_similarity(c);
    CHECK(g.similarity.perm == std::vector<Index>{0, 2, 1});
    CHECK(g.block_sizes == std::vector<Index>{2, 1});
    const DenseMatrix m = g.similarity.to_dense();
    const DenseMatrix rebuilt = oracle::multiply(oracle::multiply(m, g.direct_sum()), oracle::adjoint(m));
    CHECK(rebuilt == mat({{1, 0, 1}, {0, 1, 0}, {1, 0, 1}}));
  }
  SUBCASE("phases") {
    const GatheredForm g = materialize_similarity(make(3, {{0, 1, 2}}, {}, {1.0, I, -1.0}));
    CHECK(g.similarity.perm == std::vector<Index>{0, 1, 2});
    CHECK(g.similarity.diag == std::vector<Complex>{1.0, I, -1.0});
    CHECK(g.direct_sum() == oracle::ones(3));
    const DenseMatrix m = g.similarity.to_dense();
    CHECK(oracle::multiply(oracle::multiply(m, g.direct_sum()), oracle::adjoint(m)) == kPhaseMatrix);
  }
  SUBCASE("random certificates") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const Certificate c = random_certificate(1 + seed % 17, seed);
      const GatheredForm g = materialize_similarity(c);
      const DenseMatrix m = g.similarity.to_dense();
      CHECK(oracle::max_diff(oracle::multiply(oracle::adjoint(m), m), DenseMatrix::identity(c.n)) < 1e-15);
      CHECK(oracle::max_diff(oracle::multiply(oracle::multiply(m, g.direct_sum()), oracle::adjoint(m)),
                             reconstruct(c).dense()) < 1e-15);
    }
  }
  CHECK_THROWS_AS(materialize_similarity(make(2, {{1}, {0}})), MalformedCertificate);
}

TEST_CASE("random_certificate") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Certificate c = random_certificate(1, seed);
    const bool block = c.blocks == std::vector<IndexSet>{{0}} && c.zero_set.empty();
    const bool zero = c.blocks.empty() && c.zero_set == IndexSet{0};
    CHECK((block || zero));
  }
  GeneratorParams p;
  p.min_block_size = 2;
  p.max_block_size = 5;
  p.alphabet = PhaseAlphabet::FourthRoots;
  CHECK(random_certificate(40, 99, p) == random_certificate(40, 99, p));
  CHECK_FALSE(random_certificate(40, 99, p) == random_certificate(40, 100, p));
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Certificate c = random_certificate(40, seed, p);
    CHECK(c.is_canonical());
    CHECK_NOTHROW(c.validate());
    for (const IndexSet& b : c.blocks) {
      CHECK(b.size() >= 2);
      CHECK(b.size() <= 5);
      for (Index i : b) {
        const Complex z = c.phases[i];
        CHECK(z.real() * z.imag() == 0.0);
      }
    }
  }

  const Certificate big = random_certificate(50, 7);
  const auto r = recognize(reconstruct(big));
  REQUIRE(accepted(r));
  CHECK(equivalent(std::get<Certificate>(r), big, 1e-12));

  p = {};
  p.min_block_size = 0;
  CHECK_THROWS_AS(random_certificate(5, 1, p), std::invalid_argument);
  p = {};
  p.zero_fraction = 1.0;
  CHECK_THROWS_AS(random_certificate(5, 1, p), std::invalid_argument);
  CHECK_THROWS_AS(random_certificate(0, 1), std::invalid_argument);
}

TEST_CASE("spectrum, rank and trace laws") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Index n = 4 + seed % 20;
    const Certificate c = random_certificate(n, seed);
    const HermitianMatrix a = reconstruct(c);
    std::vector<double> expected(n, 0.0);
    Index k = 0;
    for (const IndexSet& b : c.blocks) expected[k++] = static_cast<double>(b.size());
    std::sort(expected.begin(), expected.end());
    const OracleVerdict v = psd_oracle(a);
    CHECK(v.psd);
    for (Index t = 0; t < n; ++t) CHECK(std::abs(v.eigenvalues[t] - expected[t]) <= 1e-8 * n);
    CHECK(numerical_rank(a.dense()) == c.rank());
    CHECK(oracle::rank(a.dense()) == c.rank());
    double trace = 0.0;
    for (Index i = 0; i < n; ++i) trace += a(i, i).real();
    CHECK(trace == doctest::Approx(static_cast<double>(n - c.zero_set.size())));
  }
}

TEST_CASE("mutate examples") {
  const HermitianMatrix j3 = HermitianMatrix::from_lower(oracle::ones(3));
  const HermitianMatrix i2 = HermitianMatrix::from_lower(DenseMatrix::identity(2));

  Mutation m = mutate_at(j3, MutationKind::EdgeDelete, 0, 2);
  CHECK(m.matrix.dense() == mat({{1, 1, 0}, {1, 1, 1}, {0, 1, 1}}));
  CHECK(oracle::det3(m.matrix.dense()).real() == doctest::Approx(-1.0));
  CHECK(std::get<Rejection>(recognize(m.matrix)).reason == RejectionReason::NotPSD);

  m = mutate_at(j3, MutationKind::PhaseFlip, 1, 2);
  CHECK(m.matrix.dense() == mat({{1, 1, 1}, {1, 1, -1}, {1, -1, 1}}));
  CHECK(oracle::det3(m.matrix.dense()).real() == doctest::Approx(-4.0));
  CHECK_FALSE(accepted(recognize(m.matrix)));

  m = mutate_at(i2, MutationKind::DiagNegate, 0, 0);
  CHECK(m.matrix.dense() == mat({{-1, 0}, {0, 1}}));
  const auto r = recognize(m.matrix);
  REQUIRE_FALSE(accepted(r));
  CHECK(std::get<Rejection>(r).witness == std::vector<Complex>{1.0, 0.0});

  CHECK_THROWS_AS(mutate_at(j3, MutationKind::EdgeDelete, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(mutate_at(j3, MutationKind::DiagZero, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(mutate_at(j3, MutationKind::DiagZero, 3, 3), std::invalid_argument);
  CHECK(std::string(to_string(MutationKind::DiagNegate)) == "diag_negate");
}

TEST_CASE("seeded mutations always break positive semidefiniteness") {
  const MutationKind kinds[] = {MutationKind::PhaseFlip, MutationKind::EdgeDelete,
                                MutationKind::DiagNegate, MutationKind::DiagZero};
  GeneratorParams p;
  p.min_block_size = 3;
  p.zero_fraction = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const HermitianMatrix a = reconstruct(random_certificate(3 + seed % 10, seed, p));
    for (MutationKind kind : kinds) {
      const Mutation m = mutate(a, seed, kind);
      CHECK(m.kind == kind);
      CHECK_FALSE(psd_oracle(m.matrix).psd);
      CHECK_FALSE(accepted(recognize(m.matrix)));
      CHECK(mutate(a, seed, kind).matrix == m.matrix);
    }
  }
  const HermitianMatrix i3 = HermitianMatrix::from_lower(DenseMatrix::identity(3));
  CHECK_THROWS_AS(mutate(i3, 1, MutationKind::PhaseFlip), std::invalid_argument);
  CHECK_THROWS_AS(mutate(i3, 1, MutationKind::DiagZero), std::invalid_argument);
  CHECK_NOTHROW(mutate(i3, 1, MutationKind::DiagNegate));
  CHECK_THROWS_AS(mutate(HermitianMatrix::from_lower(mat({{0, 0}, {1, 1}})), 1, MutationKind::DiagNegate),
                  std::invalid_argument);
}
