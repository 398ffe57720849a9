#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "preproj/matrix.hpp"

using namespace preproj;
using fixture::ints;
using fixture::vec;

TEST(RankKerIm, IdentityOverGF5) {
  const Field f = Field::prime(5);
  const auto r = rank_ker_im(Matrix::identity(f, 2));
  EXPECT_EQ(r.rank, 2u);
  EXPECT_EQ(r.kernel.dim(), 0u);
  EXPECT_EQ(r.image.dim(), 2u);
}

TEST(RankKerIm, ZeroMatrix) {
  const auto r = rank_ker_im(Matrix(Field::prime(5), 3, 2));
  EXPECT_EQ(r.rank, 0u);
  EXPECT_EQ(r.kernel.dim(), 2u);
  EXPECT_EQ(r.image.dim(), 0u);
}

TEST(RankKerIm, NilpotentOverQ) {
  const Field f = Field::rationals();
  const auto r = rank_ker_im(fixture::jordan2(f));
  const Subspace e1 = Subspace::span(f, 2, {vec(f, {1, 0})});
  EXPECT_EQ(r.rank, 1u);
  EXPECT_EQ(r.kernel, e1);
  EXPECT_EQ(r.image, e1);
}

TEST(SolveAffine, Identity) {
  const Field f = Field::prime(7);
  const auto s = solve_affine(Matrix::identity(f, 2), vec(f, {1, 2}));
  ASSERT_TRUE(s);
  EXPECT_EQ(s->particular, vec(f, {1, 2}));
  EXPECT_EQ(s->nullspace.dim(), 0u);
}

TEST(SolveAffine, ZeroMapMissesTarget) {
  const Field f = Field::prime(7);
  EXPECT_FALSE(solve_affine(Matrix(f, 2, 2), vec(f, {1, 0})));
}

TEST(SolveAffine, HandEliminated) {
  const Field f = Field::prime(5);
  const auto s = solve_affine(ints(f, {{1, 1}, {0, 0}}), vec(f, {3, 0}));
  ASSERT_TRUE(s);
  EXPECT_EQ(s->particular, vec(f, {3, 0}));
  EXPECT_EQ(s->nullspace, Subspace::span(f, 2, {vec(f, {4, 1})}));
}

TEST(CharRoots, Diagonal) {
  const Field f = Field::prime(7);
  const auto r = char_roots(ints(f, {{2, 0}, {0, 3}}));
  EXPECT_EQ(r.field, f);
  ASSERT_EQ(r.roots.size(), 2u);
  EXPECT_EQ(r.roots[0], std::make_pair(f.from_int(2), 1));
  EXPECT_EQ(r.roots[1], std::make_pair(f.from_int(3), 1));
}

TEST(CharRoots, CompanionOfXSquaredPlusOneOverGF3) {
  const Field f = Field::prime(3);
  const auto r = char_roots(ints(f, {{0, -1}, {1, 0}}));
  EXPECT_EQ(r.field.order(), 9u);
  ASSERT_EQ(r.roots.size(), 2u);
  for (const auto& [x, mult] : r.roots) {
    EXPECT_EQ(mult, 1);
    EXPECT_TRUE(r.field.is_zero(r.field.add(r.field.mul(x, x), r.field.one())));
  }
}

TEST(CharRoots, ZeroMatrix) {
  const Field f = Field::prime(5);
  const auto r = char_roots(Matrix(f, 2, 2));
  ASSERT_EQ(r.roots.size(), 1u);
  EXPECT_EQ(r.roots[0], std::make_pair(f.zero(), 2));
}

TEST(Spin, Examples) {
  const Field f = Field::prime(5);
  const Vector e1 = vec(f, {1, 0}), e2 = vec(f, {0, 1});
  EXPECT_EQ(spin(f, 2, {e1}, {Matrix::identity(f, 2)}).dim(), 1u);
  EXPECT_EQ(spin(f, 2, {e1}, {fixture::jordan2(f)}), Subspace::span(f, 2, {e1}));
  EXPECT_EQ(spin(f, 2, {e2}, {fixture::jordan2(f)}).dim(), 2u);
}

TEST(Fitting, Examples) {
  const Field f = Field::prime(5);
  const auto inv = fitting(ints(f, {{1, 2}, {0, 3}}));
  EXPECT_EQ(inv.ker_part.dim(), 0u);
  EXPECT_EQ(inv.im_part.dim(), 2u);
  const auto nil = fitting(fixture::jordan2(f));
  EXPECT_EQ(nil.ker_part.dim(), 2u);
  EXPECT_EQ(nil.im_part.dim(), 0u);
  const auto idem = fitting(ints(f, {{0, 0}, {0, 1}}));
  EXPECT_EQ(idem.ker_part, Subspace::span(f, 2, {vec(f, {1, 0})}));
  EXPECT_EQ(idem.im_part, Subspace::span(f, 2, {vec(f, {0, 1})}));
}

TEST(ExtendScalars, PreservesRankAndIdentity) {
  Rng rng(3);
  const Field f3 = Field::prime(3), f9 = f3.extend(2);
  const Embedding e(f3, f9);
  for (int t = 0; t < 20; ++t) {
    const Matrix m = Matrix::random(f3, 3, 4, rng);
    EXPECT_EQ(rank(extend_scalars(m, e)), rank(m));
  }
  const Field f2 = Field::prime(2), f4 = f2.extend(2);
  EXPECT_EQ(extend_scalars(Matrix::identity(f2, 3), Embedding(f2, f4)), Matrix::identity(f4, 3));
}

// Properties

class FieldSweep : public ::testing::TestWithParam<Field> {};

TEST_P(FieldSweep, RankNullityAndTranspose) {
  const Field f = GetParam();
  Rng rng(11);
  for (int t = 0; t < 60; ++t) {
    const std::size_t r = rng.between(0, 6), c = rng.between(0, 6);
    Matrix m = Matrix::random(f, r, c, rng);
    if (r > 1 && c > 0 && rng.coin()) m.set_block(r - 1, 0, m.block(0, 0, 1, c));  // force dependence
    const auto rki = rank_ker_im(m);
    EXPECT_EQ(rki.rank + rki.kernel.dim(), c);
    EXPECT_EQ(rki.rank, rank(m.transpose()));
    EXPECT_EQ(rki.image.dim(), rki.rank);
    for (const auto& k : rki.kernel.basis().columns()) EXPECT_TRUE(is_zero_vector(f, mul_vector(m, k)));
  }
}

TEST_P(FieldSweep, SolveAffineMatchesAugmentedRank) {
  const Field f = GetParam();
  Rng rng(12);
  for (int t = 0; t < 60; ++t) {
    const std::size_t r = rng.between(1, 5), c = rng.between(1, 5);
    Matrix a = Matrix::random(f, r, c, rng);
    if (rng.coin()) a.set_block(0, 0, Matrix(f, 1, c));
    Vector b(r);
    for (auto& x : b) x = f.random(rng);
    const auto sol = solve_affine(a, b);
    const bool consistent = rank(a.hstack(Matrix::from_columns(f, r, {b}))) == rank(a);
    ASSERT_EQ(sol.has_value(), consistent);
    if (!sol) continue;
    EXPECT_EQ(mul_vector(a, sol->particular), b);
    EXPECT_EQ(sol->nullspace.dim(), c - rank(a));
    for (const auto& k : sol->nullspace.basis().columns()) EXPECT_TRUE(is_zero_vector(f, mul_vector(a, k)));
  }
}

TEST_P(FieldSweep, FittingPartsAreComplementary) {
  const Field f = GetParam();
  Rng rng(13);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = rng.between(1, 6);
    Matrix phi = Matrix::random(f, n, n, rng);
    if (n > 1 && rng.coin()) phi.set_block(0, 0, Matrix(f, 1, n));
    const auto parts = fitting(phi);
    EXPECT_EQ(parts.ker_part.dim() + parts.im_part.dim(), n);
    EXPECT_EQ(parts.ker_part.intersection(parts.im_part).dim(), 0u);
    EXPECT_TRUE(parts.ker_part.is_invariant(phi));
    EXPECT_TRUE(parts.im_part.is_invariant(phi));
  }
}

TEST_P(FieldSweep, SpinIsInvariantAndMinimal) {
  const Field f = GetParam();
  Rng rng(14);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = rng.between(1, 6);
    std::vector<Matrix> ops;
    for (int k = 0; k < 2; ++k) {
      Matrix op = Matrix::random(f, n, n, rng);
      // Upper triangular operators keep small spans likely.
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < r; ++c) op(r, c) = f.zero();
      ops.push_back(op);
    }
    Vector g(n, f.zero());
    g[rng.below(n)] = f.one();
    const Subspace s = spin(f, n, {g}, ops);
    EXPECT_TRUE(s.contains(g));
    for (const auto& op : ops) EXPECT_TRUE(s.is_invariant(op));
    // Minimal: it equals the span of the orbit words applied to g.
    Subspace orbit = Subspace::span(f, n, {g});
    for (std::size_t step = 0; step < n; ++step) {
      std::vector<Vector> more = orbit.basis().columns();
      for (const auto& b : orbit.basis().columns())
        for (const auto& op : ops) more.push_back(mul_vector(op, b));
      orbit = Subspace::span(f, n, more);
    }
    EXPECT_EQ(s, orbit);
  }
}

TEST_P(FieldSweep, CharRootsMultiplicities) {
  const Field f = GetParam();
  Rng rng(15);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = rng.between(1, 5);
    const auto r = char_roots(Matrix::random(f, n, n, rng));
    int sum = 0;
    for (const auto& [x, m] : r.roots) sum += m;
    if (f.is_finite()) {
      EXPECT_EQ(sum, static_cast<int>(n));
    } else {
      EXPECT_LE(sum, static_cast<int>(n));
      EXPECT_EQ(r.splits, sum == static_cast<int>(n));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Fields, FieldSweep,
                         ::testing::Values(Field::prime(2), Field::prime(7), Field::galois(3, 2), Field::rationals()),
                         [](const auto& info) {
                           std::string n = info.param.name();
                           for (auto& c : n)
                             if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
                           return n;
                         });

TEST(FieldAxioms, RandomTriplesInExtensions) {
  for (const Field& f : {Field::galois(7, 2), Field::galois(2, 5), Field::galois(5, 3)}) {
    Rng rng(16);
    for (int t = 0; t < 300; ++t) {
      const Scalar a = f.random(rng), b = f.random(rng), c = f.random(rng);
      EXPECT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
      EXPECT_EQ(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
      EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
      EXPECT_EQ(f.mul(a, b), f.mul(b, a));
      if (!f.is_zero(a)) {
        EXPECT_TRUE(f.is_one(f.mul(a, f.inv(a))));
      }
    }
  }
}

TEST(RankOracle, AgreesWithIndependentElimination) {
  const Field f = Field::prime(11);
  Rng rng(17);
  for (int t = 0; t < 100; ++t) {
    const std::size_t r = rng.between(1, 7), c = rng.between(1, 7);
    Matrix m = Matrix::random(f, r, c, rng);
    if (r > 2) m.set_block(1, 0, m.block(0, 0, 1, c) + m.block(2, 0, 1, c));
    EXPECT_EQ(rank(m), oracle::rank_mod(oracle::to_ints(m), 11));
  }
}
