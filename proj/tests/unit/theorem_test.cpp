#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "preproj/generators.hpp"
#include "preproj/harness.hpp"
#include "preproj/theorem.hpp"

using namespace preproj;
using fixture::vec;

namespace {

PairRep zero_xi(const Representation& x, const Quiver& q) {
  std::vector<Matrix> xi;
  for (const auto& a : q.arrows()) xi.emplace_back(x.field(), x.dim(a.tail), x.dim(a.head));
  return PairRep::from_pair(q, x.field(), x.dims(), x.matrices(), xi);
}

/// δ-block on the oriented 2-cycle with X = (1, t) and ξ = (t, 1), a module for λ = 0.
PairRep cycle2_block(const Field& f, std::int64_t t) {
  const Matrix one = Matrix::identity(f, 1), s = one.scaled(f.from_int(t));
  return PairRep::from_pair(named_quiver("cycle:2"), f, {1, 1}, {one, s}, {s, one});
}

PairRep conjugated(const PairRep& r, Rng& rng) {
  std::vector<Matrix> basis;
  for (std::size_t i = 0; i < r.base().vertex_count(); ++i)
    basis.push_back(Matrix::random_invertible(r.field(), r.rep().dim(i), rng));
  return change_basis(r, basis);
}

}  // namespace

TEST(NonRegular, ZeroXiWitnessIsPreinjectivePart) {
  const Field f = Field::prime(5);
  const Quiver k = named_quiver("kronecker");
  const auto p = projective_rep(k, f, 0), i = injective_rep(k, f, 1);
  const PairRep r = zero_xi(direct_sum({p, i}).rep, k);
  const Weights zero = Weights::zero(f, 2);
  const auto w = find_submodule_nonregular(r, zero, affine_classify(k));
  EXPECT_TRUE(verify_witness(r, w));
  EXPECT_EQ(w.provenance(), Provenance::NonRegular);
  EXPECT_EQ(w.sub.dims(), i.dims());
}

TEST(NonRegular, GeneratedKroneckerInstances) {
  const Field f = Field::prime(5);
  const Quiver k = named_quiver("kronecker");
  const auto x0 = direct_sum({projective_rep(k, f, 0), injective_rep(k, f, 1)}).rep;
  int nearly = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(seed);
    const auto x = change_basis(x0, {Matrix::random_invertible(f, 3, rng), Matrix::random_invertible(f, 3, rng)});
    const Weights lambda = random_balanced_weights(k, f, rng, 0.3);
    Vector col(3);
    for (auto& c : col) c = f.random(rng);
    const auto r = solve_nearly(x, lambda, 0, col, rng);
    if (!r) continue;
    const auto cls = classify_relation(*r, lambda, 0);
    ASSERT_TRUE(cls.nearly);
    if (cls.relation == Relation::Nearly) ++nearly;
    const auto w = nontrivial_submodule(*r, lambda, 0, {});
    EXPECT_TRUE(verify_witness(*r, w));
    EXPECT_EQ(w.provenance(), Provenance::NonRegular);
  }
  EXPECT_GT(nearly, 0);
}

TEST(NonRegular, ModuleInput) {
  const Field f = Field::prime(7);
  const Quiver k = named_quiver("kronecker");
  const auto x = direct_sum({projective_rep(k, f, 0), injective_rep(k, f, 1)}).rep;
  Rng rng(81);
  const auto r = solve_nearly(x, Weights::zero(f, 2), 0, {}, rng);
  ASSERT_TRUE(r);
  ASSERT_EQ(classify_relation(*r, Weights::zero(f, 2), 0).relation, Relation::Module);
  EXPECT_TRUE(verify_witness(*r, find_submodule_nonregular(*r, Weights::zero(f, 2), affine_classify(k))));
}

TEST(MultiTube, TwoCycleDistinctTubes) {
  const Field f = Field::prime(5);
  Rng rng(82);
  const PairRep r = conjugated(direct_sum({cycle2_block(f, 1), cycle2_block(f, 2)}), rng);
  const Weights zero = Weights::zero(f, 2);
  ASSERT_EQ(classify_relation(r, zero, 0).relation, Relation::Module);
  const auto w = find_submodule_multitube(r, zero, affine_classify(r.base()), 0);
  EXPECT_TRUE(verify_witness(r, w));
  EXPECT_EQ(w.provenance(), Provenance::MultiTube);
  EXPECT_EQ(w.sub.dims(), (DimVector{1, 1}));
}

TEST(MultiTube, NestedThreeTubes) {
  const Field f = Field::prime(7);
  const Quiver k = named_quiver("kronecker");
  const Matrix one = Matrix::identity(f, 1);
  std::vector<PairRep> blocks;
  for (std::int64_t t : {1, 2, 3}) {
    const Matrix s = one.scaled(f.from_int(t));
    // X = (1, t), ξ = (t, −1) solves the relations with λ = 0.
    blocks.push_back(PairRep::from_pair(k, f, {1, 1}, {one, s}, {s, one.scaled(f.from_int(-1))}));
  }
  Rng rng(83);
  const PairRep r = conjugated(direct_sum(blocks), rng);
  const Weights zero = Weights::zero(f, 2);
  ASSERT_EQ(classify_relation(r, zero, 0).relation, Relation::Module);
  const auto w = find_submodule_multitube(r, zero, affine_classify(k), 0);
  EXPECT_TRUE(verify_witness(r, w));
  EXPECT_EQ(w.provenance(), Provenance::MultiTube);
  EXPECT_EQ(defect(k, affine_classify(k), w.sub.dims()), 0);
}

TEST(Cycle, JordanLoopLemma) {
  const Field f = Field::prime(5);
  const PairRep r = fixture::jordan_nearly(f);
  const auto w = find_submodule_cycle(r, Weights::zero(f, 1), 0);
  EXPECT_TRUE(verify_witness(r, w));
  EXPECT_EQ(w.provenance(), Provenance::LoopLemma);
  EXPECT_EQ(w.sub.spaces[0], Subspace::span(f, 2, {vec(f, {1, 0})}));
}

TEST(Cycle, JordanNonzeroWeightInPositiveCharacteristic) {
  for (std::uint64_t p : {2, 3}) {
    const PairRep two = weyl_pair(p, 2, p);
    const Weights one{two.field(), {two.field().one()}};
    const auto w = find_submodule_cycle(two, one, 0);
    EXPECT_TRUE(verify_witness(two, w));
    EXPECT_EQ(w.provenance(), Provenance::GenericSearch);
    EXPECT_ERROR(nontrivial_submodule(two, one, 0), PreconditionFailed);
    EXPECT_ERROR(find_submodule_cycle(weyl_pair(p, 1, p), one, 0), HypothesisViolated);
  }
}

TEST(Cycle, GeneratedTwoCycleUsesReorientation) {
  const Field f = Field::prime(5);
  const Quiver q = named_quiver("cycle:2");
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Rng rng(seed);
    GenSpec spec{q, 0, random_balanced_weights(q, f, rng, 0.3), {2, 2}, f, seed, GenMode::SolveNearly};
    const PairRep r = gen_nearly(spec);
    const auto w = find_submodule_cycle(r, spec.lambda, 0);
    EXPECT_TRUE(verify_witness(r, w));
    EXPECT_EQ(w.provenance(), Provenance::CycleReorient);
    EXPECT_GE(w.path.size(), 2u);
  }
}

TEST(NontrivialSubmodule, Preconditions) {
  const Field f = Field::prime(5);
  const Quiver k = named_quiver("kronecker");
  Rng rng(84);
  GenSpec spec{k, 0, Weights::zero(f, 2), {1, 1}, f, 1, GenMode::SolveNearly};
  EXPECT_ERROR(nontrivial_submodule(gen_nearly(spec), spec.lambda, 0), PreconditionFailed);

  const Field q = Field::rationals();
  Weights lambda{q, {q.from_int(1), q.from_int(1)}};
  const Matrix one = Matrix::identity(q, 2);
  const auto r = PairRep::from_pair(k, q, {2, 2}, {one, one}, {Matrix(q, 2, 2), Matrix(q, 2, 2)});
  EXPECT_ERROR(nontrivial_submodule(r, lambda, 0), PreconditionFailed);
}

TEST(ReducedWeights, Examples) {
  const Field f = Field::prime(7);
  const Quiver k = named_quiver("kronecker");
  const std::vector<DimVector> p_dims = {proj_dim_vector(k, 0), proj_dim_vector(k, 1)};
  const Weights lambda{f, {f.from_int(3), f.from_int(5)}};
  const auto homog = reduced_weights(lambda, p_dims, {{1, 1}}, k, 0);
  ASSERT_EQ(homog.lambda_prime.values.size(), 1u);
  EXPECT_EQ(homog.lambda_prime.values[0], lambda.dot({1, 1}));
  EXPECT_EQ(homog.v_prime, 0u);

  const auto zero = reduced_weights(Weights::zero(f, 2), p_dims, {{1, 1}}, k, 0);
  EXPECT_TRUE(f.is_zero(zero.lambda_prime.values[0]));

  const Quiver c = named_quiver("cycle:3");
  const Weights l3{f, {f.from_int(1), f.from_int(2), f.from_int(4)}};
  const auto cyc = reduced_weights(l3, {}, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}, c, 2);
  EXPECT_EQ(cyc.lambda_prime.values, (std::vector<Scalar>{f.from_int(2), f.from_int(4), f.from_int(1)}));
  EXPECT_EQ(cyc.v_prime, 1u);
  EXPECT_EQ(cyc.delta_prime, (DimVector{1, 1, 1}));

  EXPECT_ERROR(reduced_weights(l3, {}, {{1, 0, 0}, {0, 1, 0}}, c, 0), BadTubeData);
}

// Properties

TEST(ReducedWeights, PreservesPairingOnCycles) {
  const Field f = Field::prime(7);
  Rng rng(85);
  for (std::size_t n = 2; n <= 5; ++n) {
    const Quiver c = named_quiver("cycle:" + std::to_string(n));
    for (int t = 0; t < 20; ++t) {
      const Weights lambda = fixture::random_weights(f, n, rng);
      std::vector<DimVector> s;
      const std::size_t shift = rng.below(n);
      for (std::size_t j = 0; j < n; ++j) {
        DimVector e(n, 0);
        e[(j + shift) % n] = 1;
        s.push_back(e);
      }
      const std::size_t v = rng.below(n);
      const auto red = reduced_weights(lambda, {}, s, c, v);
      EXPECT_EQ(red.lambda_prime.dot(red.delta_prime), lambda.dot(DimVector(n, 1)));
      EXPECT_EQ(s[red.v_prime][v], 1);
    }
  }
}

TEST(Theorem, DimensionMultipleFromProjective) {
  const Field f = Field::prime(7);
  const Quiver k = named_quiver("kronecker");
  const auto aff = affine_classify(k);
  Rng rng(86);
  const Matrix one = Matrix::identity(f, 1);
  for (std::int64_t m = 1; m <= 4; ++m) {
    std::vector<Representation> parts;
    for (std::int64_t j = 0; j < m; ++j)
      parts.emplace_back(k, f, DimVector{1, 1}, std::vector<Matrix>{one, one.scaled(f.from_int(rng.between(0, 6)))});
    const auto x = direct_sum(parts).rep;
    ASSERT_EQ(euler_form(k, x.dims(), x.dims()), 0);
    for (auto v : aff.extending_vertices) EXPECT_EQ(hom_dim(projective_rep(k, f, v), x), static_cast<std::size_t>(m));
  }
}

TEST(Theorem, GeneratedInstancesAlwaysYieldWitnesses) {
  std::size_t trials = 0;
  for (const char* name : {"jordan", "cycle:2", "cycle:3", "kronecker", "Dtilde4"}) {
    for (const Field& f : {Field::prime(5), Field::galois(7, 2)}) {
      for (std::uint64_t seed = 0; seed < 4; ++seed) {
        TrialSpec spec;
        spec.quiver = named_quiver(name);
        spec.m = 2 + static_cast<std::int64_t>(seed % 2);
        spec.field = f;
        spec.seed = 1000 + seed;
        const auto rep = run_theorem_trial(spec, seed);
        EXPECT_TRUE(rep.verified) << name << " " << f.name() << " seed " << seed << ": " << rep.message;
        EXPECT_FALSE(rep.error.has_value());
        ++trials;
      }
    }
  }
  EXPECT_EQ(trials, 40u);
}
