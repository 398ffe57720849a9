#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "preproj/almost_commuting.hpp"
#include "preproj/generators.hpp"

using namespace preproj;
using fixture::ints;
using fixture::vec;

namespace {

void expect_verified(const ACInstance& inst, const Subspace& u) {
  const ACInstance ext = extend_scalars(inst, u.field());
  const std::size_t n = inst.a.rows();
  EXPECT_GT(u.dim(), 0u);
  EXPECT_LT(u.dim(), n);
  EXPECT_TRUE(u.is_invariant(ext.a));
  EXPECT_TRUE(u.is_invariant(ext.b));
  EXPECT_EQ(spin(u.field(), n, u.basis().columns(), {ext.a, ext.b}), u);
}

}  // namespace

TEST(CommonInvariant, ZeroAndJordanBlock) {
  const Field f = Field::prime(5);
  const ACInstance inst(Matrix(f, 2, 2), fixture::jordan2(f));
  const Subspace u = common_invariant(inst);
  EXPECT_EQ(u, Subspace::span(f, 2, {vec(f, {1, 0})}));
}

TEST(CommonInvariant, JordanWorkedExampleOverQ) {
  const Field f = Field::rationals();
  const ACInstance inst(fixture::jordan2(f), ints(f, {{0, 0}, {0, 1}}));
  EXPECT_EQ(rank(inst.c), 1u);
  const Subspace u = common_invariant(inst);
  EXPECT_EQ(u, Subspace::span(f, 2, {vec(f, {1, 0})}));
  for (const auto& b : u.basis().columns()) {
    EXPECT_TRUE(is_zero_vector(f, mul_vector(inst.a, b)));
    EXPECT_TRUE(is_zero_vector(f, mul_vector(inst.b, b)));
  }
}

TEST(CommonInvariant, CommutingPairGivesEigenspace) {
  const Field f = Field::prime(7);
  const Matrix a = ints(f, {{1, 0, 0}, {0, 1, 0}, {0, 0, 4}});
  const Matrix b = ints(f, {{2, 3, 0}, {5, 6, 0}, {0, 0, 1}});
  const ACInstance inst(a, b);
  ASSERT_TRUE(inst.c.is_zero());
  const Subspace u = common_invariant(inst);
  expect_verified(inst, u);
  const Subspace e1 = Subspace::span(f, 3, {vec(f, {1, 0, 0}), vec(f, {0, 1, 0})});
  const Subspace e2 = Subspace::span(f, 3, {vec(f, {0, 0, 1})});
  EXPECT_TRUE(e1.contains(u) || e2.contains(u));
}

TEST(CommonInvariant, RankTwoCommutatorRejected) {
  const Field f = Field::prime(7);
  Rng rng(61);
  int rejected = 0;
  for (int t = 0; t < 20; ++t) {
    const ACInstance inst(Matrix::random(f, 4, 4, rng), Matrix::random(f, 4, 4, rng));
    if (rank(inst.c) < 2) continue;
    EXPECT_ERROR(common_invariant(inst), RankTooHigh);
    ++rejected;
  }
  EXPECT_GT(rejected, 0);
}

TEST(ExtendScalars, ClassificationUnchanged) {
  const Field f = Field::prime(3);
  const PairRep r = fixture::jordan_nearly(f);
  const PairRep e = extend_scalars(r, f.extend(2));
  EXPECT_EQ(e.field().order(), 9u);
  EXPECT_EQ(classify_relation(e, Weights::zero(e.field(), 1), 0).relation,
            classify_relation(r, Weights::zero(f, 1), 0).relation);
}

// Properties

class AlmostCommutingSweep : public ::testing::TestWithParam<int> {};

TEST_P(AlmostCommutingSweep, AlwaysFindsVerifiedSubspace) {
  const Field fields[] = {Field::prime(7), Field::galois(3, 2), Field::rationals()};
  const Field f = fields[GetParam()];
  Rng rng(62 + GetParam());
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + t % 7;
    const ACInstance inst = random_almost_commuting(f, n, rng);
    ASSERT_LE(rank(inst.c), 1u);
    expect_verified(inst, common_invariant(inst));
  }
}

INSTANTIATE_TEST_SUITE_P(Fields, AlmostCommutingSweep, ::testing::Values(0, 1, 2));
