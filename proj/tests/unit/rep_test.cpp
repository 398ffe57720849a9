#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "preproj/homological.hpp"
#include "preproj/simplicity.hpp"

using namespace preproj;
using fixture::ints;
using fixture::vec;

namespace {

const char* const kQuivers[] = {"jordan", "cycle:2", "cycle:3", "kronecker", "Dtilde4"};

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

}  // namespace

TEST(MomentDefect, JordanIsCommutator) {
  const Field f = Field::prime(7);
  Rng rng(31);
  const Matrix a = Matrix::random(f, 3, 3, rng), b = Matrix::random(f, 3, 3, rng);
  const auto r = PairRep::from_pair(named_quiver("jordan"), f, {3}, {a}, {b});
  EXPECT_EQ(moment_defect(r, Weights::zero(f, 1)).per_vertex[0], commutator(a, b));
}

TEST(MomentDefect, ZeroRepresentation) {
  const Field f = Field::prime(5);
  const Quiver q = named_quiver("kronecker");
  const auto r = PairRep::from_pair(q, f, {0, 0}, {Matrix(f, 0, 0), Matrix(f, 0, 0)},
                                    {Matrix(f, 0, 0), Matrix(f, 0, 0)});
  for (const auto& m : moment_defect(r, Weights::zero(f, 2)).per_vertex) EXPECT_TRUE(m.empty());
}

TEST(MomentDefect, ScalarTwoCycleCommutes) {
  const Field f = Field::prime(5);
  const Matrix one = Matrix::identity(f, 1);
  const auto r = PairRep::from_pair(named_quiver("cycle:2"), f, {1, 1}, {one, one}, {one, one});
  for (const auto& m : moment_defect(r, Weights::zero(f, 2)).per_vertex) EXPECT_TRUE(m.is_zero());
}

TEST(ClassifyRelation, JordanNearly) {
  const Field f = Field::rationals();
  const auto c = classify_relation(fixture::jordan_nearly(f), Weights::zero(f, 1), 0);
  EXPECT_EQ(c.relation, Relation::Nearly);
  EXPECT_EQ(c.defect.ranks[0], 1u);
}

TEST(HomSpace, Simples) {
  const Field f = Field::prime(5);
  const Quiver q = named_quiver("Dtilde4");
  EXPECT_EQ(hom_dim(simple_rep(q, f, 1), simple_rep(q, f, 1)), 1u);
  EXPECT_EQ(hom_dim(simple_rep(q, f, 1), simple_rep(q, f, 2)), 0u);
}

TEST(Ext1, Examples) {
  const Field f = Field::prime(5);
  const Quiver j = named_quiver("jordan");
  const Representation s = simple_rep(j, f, 0);
  EXPECT_EQ(hom_dim(s, s), 1u);
  EXPECT_EQ(euler_form(j, {1}, {1}), 0);
  EXPECT_EQ(ext1_dim(j, s, s), 1);

  const Quiver k = named_quiver("kronecker");
  Rng rng(32);
  for (std::size_t i = 0; i < 2; ++i)
    for (int t = 0; t < 5; ++t) {
      const auto n = random_rep(k, f, fixture::random_dims(2, 0, 3, rng), rng);
      EXPECT_EQ(ext1_dim(k, projective_rep(k, f, i), n), 0);
    }
  const Matrix one = Matrix::identity(f, 1);
  const Representation reg(k, f, {1, 1}, {one, one.scaled(f.from_int(2))});
  EXPECT_EQ(hom_dim(reg, reg), 1u);
  EXPECT_EQ(ext1_dim(k, reg, reg), 1);
}

TEST(PhiMap, NoArrowsIsZeroFromZero) {
  const Field f = Field::prime(5);
  Quiver q;
  q.add_vertex("x");
  const Representation m(q, f, {2}), n(q, f, {3});
  const PhiMap phi = phi_map(m, n);
  EXPECT_EQ(phi.matrix.cols(), 0u);
  EXPECT_EQ(rank(phi.matrix), 0u);
}

TEST(DirectSum, SinglePart) {
  const Field f = Field::prime(5);
  Rng rng(33);
  const auto r = random_rep(named_quiver("kronecker"), f, {2, 3}, rng);
  EXPECT_EQ(direct_sum({r}).rep, r);
}

TEST(SpinSubmodule, Examples) {
  const Field f = Field::prime(5);
  Rng rng(34);
  const auto r = random_rep(named_quiver("kronecker"), f, {2, 2}, rng);
  EXPECT_EQ(spin_submodule(r, {}).total_dim(), 0u);
  std::vector<GradedVector> all;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < 2; ++k) {
      Vector e(2, f.zero());
      e[k] = f.one();
      all.emplace_back(i, e);
    }
  EXPECT_EQ(spin_submodule(r, all), full_subrep(r));
  const auto s = spin_submodule(fixture::jordan_nearly(f).rep(), {{0, vec(f, {1, 0})}});
  EXPECT_EQ(s.total_dim(), 1u);
}

TEST(Quotient, ByZeroAndByWhole) {
  const Field f = Field::prime(5);
  Rng rng(35);
  const auto r = random_rep(named_quiver("cycle:3"), f, {1, 2, 2}, rng);
  const auto q0 = quotient(r, zero_subrep(r));
  EXPECT_EQ(q0.rep.dims(), r.dims());
  EXPECT_EQ(q0.rep, r);
  EXPECT_EQ(quotient(r, full_subrep(r)).rep.total_dim(), 0u);
}

TEST(Simplicity, Examples) {
  const Field f = Field::prime(5);
  Rng rng(36);
  const auto one_dim = random_rep(double_quiver(named_quiver("jordan")), f, {1}, rng);
  EXPECT_TRUE(simplicity(one_dim, {}, 1).simple);

  const Quiver k = named_quiver("kronecker");
  const Matrix one = Matrix::identity(f, 1);
  const Representation a(k, f, {1, 1}, {one, one}), b(k, f, {1, 1}, {one, one.scaled(f.from_int(3))});
  const auto sum = direct_sum({a, b});
  const auto res = simplicity(sum.rep, {}, 1);
  EXPECT_FALSE(res.simple);
  EXPECT_TRUE(is_proper_witness(sum.rep, res.witness));

  const auto jn = simplicity(fixture::jordan_nearly(f).rep(), {}, 1);
  EXPECT_FALSE(jn.simple);
  EXPECT_EQ(jn.witness.spaces[0], Subspace::span(f, 2, {vec(f, {1, 0})}));
}

TEST(Reorient, EmptyFlipsIsIdentity) {
  const Field f = Field::prime(5);
  Rng rng(37);
  const auto r = fixture::random_pair(named_quiver("cycle:3"), f, {1, 2, 1}, rng);
  EXPECT_EQ(reorient(r, {}), r);
}

// Properties

TEST(TraceIdentity, SumOfTracesVanishes) {
  Rng rng(41);
  for (const Field& f : {Field::prime(5), Field::galois(3, 2), Field::rationals()}) {
    for (const char* name : kQuivers) {
      const Quiver q = named_quiver(name);
      for (int t = 0; t < 10; ++t) {
        const auto r = fixture::random_pair(q, f, fixture::random_dims(q.vertex_count(), 0, 3, rng), rng);
        const auto lambda = fixture::random_weights(f, q.vertex_count(), rng);
        const auto md = moment_defect(r, lambda);
        Scalar sum = f.zero();
        for (std::size_t i = 0; i < q.vertex_count(); ++i)
          sum = f.add(sum, f.add(md.per_vertex[i].trace(), f.mul(lambda.values[i], f.from_int(r.dims()[i]))));
        EXPECT_TRUE(f.is_zero(sum)) << name;
        const auto c = classify_relation(r, lambda, 0);
        if (c.relation == Relation::Module) {
          EXPECT_TRUE(f.is_zero(lambda.dot(r.dims())));
        }
      }
    }
  }
}

TEST(FourTerm, KernelAndCokernelDimensions) {
  const Field f = Field::prime(5);
  Rng rng(42);
  for (const char* name : {"kronecker", "cycle:3", "Dtilde4"}) {
    const Quiver q = named_quiver(name);
    for (int t = 0; t < 15; ++t) {
      const auto m = random_rep(q, f, fixture::random_dims(q.vertex_count(), 0, 3, rng), rng);
      Representation n = random_rep(q, f, fixture::random_dims(q.vertex_count(), 0, 3, rng), rng);
      if (t % 3 == 0) n = m;
      const PhiMap phi = phi_map(m, n);
      const std::size_t rk = rank(phi.matrix);
      const std::size_t hom = oracle::hom_dim(m, n);
      EXPECT_EQ(hom, hom_dim(m, n));
      EXPECT_EQ(static_cast<std::int64_t>(phi.matrix.cols() - rk), ext1_dim(q, m, n));
      EXPECT_EQ(static_cast<std::int64_t>(phi.matrix.cols() - rk),
                static_cast<std::int64_t>(hom) - euler_form(q, m.dims(), n.dims()));
      EXPECT_EQ(phi.matrix.rows() - rk, hom);
    }
  }
}

TEST(FourTerm, TraceOrthogonality) {
  const Field f = Field::prime(5);
  Rng rng(43);
  for (const char* name : {"kronecker", "cycle:3"}) {
    const Quiver q = named_quiver(name);
    for (int t = 0; t < 10; ++t) {
      const auto m = random_rep(q, f, fixture::random_dims(q.vertex_count(), 1, 3, rng), rng);
      const auto n = t % 2 ? m : random_rep(q, f, fixture::random_dims(q.vertex_count(), 1, 3, rng), rng);
      const PhiMap phi = phi_map(m, n);
      const auto homs = hom_space(m, n);
      for (const auto& h : homs) ASSERT_TRUE(is_homomorphism(m, n, h));
      for (int k = 0; k < 5; ++k) {
        Vector x(phi.matrix.cols());
        for (auto& s : x) s = f.random(rng);
        const auto image = phi.apply(phi.unpack_domain(x));
        EXPECT_EQ(phi.pack_codomain(image), mul_vector(phi.matrix, x));
        for (const auto& h : homs) EXPECT_TRUE(f.is_zero(trace_pairing(f, image, h)));
      }
    }
  }
}

TEST(SpinSubmodule, ClosedAndQuotientDimsAdd) {
  const Field f = Field::galois(2, 2);
  Rng rng(44);
  for (const char* name : kQuivers) {
    const Quiver q = double_quiver(named_quiver(name));
    for (int t = 0; t < 10; ++t) {
      const auto r = random_rep(q, f, fixture::random_dims(q.vertex_count(), 0, 3, rng), rng);
      std::vector<GradedVector> gens;
      const std::size_t i = rng.below(q.vertex_count());
      if (r.dim(i) > 0) {
        Vector v(r.dim(i));
        for (auto& s : v) s = f.random(rng);
        gens.emplace_back(i, v);
      }
      const SubRep s = spin_submodule(r, gens);
      EXPECT_TRUE(is_subrep(r, s));
      const auto quo = quotient(r, s);
      EXPECT_EQ(add(quo.rep.dims(), s.dims()), r.dims());
    }
  }
}

TEST(Simplicity, WitnessesAndCertificatesReverify) {
  const Field f = Field::prime(3);
  Rng rng(45);
  for (int t = 0; t < 40; ++t) {
    const Quiver q = double_quiver(named_quiver(kQuivers[t % 5]));
    const auto r = random_rep(q, f, fixture::random_dims(q.vertex_count(), 0, 2, rng), rng);
    if (r.total_dim() == 0) continue;
    const auto res = simplicity(r, {}, t);
    if (!res.simple) {
      EXPECT_TRUE(is_proper_witness(r, res.witness));
      EXPECT_TRUE(is_subrep(r, res.witness));
    } else if (res.certificate.exhaustive) {
      EXPECT_FALSE(exhaustive_submodule(r));
    }
    EXPECT_EQ(res.simple, oracle::is_simple_exhaustive(r));
  }
}

TEST(Reorient, PreservesMomentDefect) {
  Rng rng(46);
  for (const Field& f : {Field::prime(5), Field::rationals()}) {
    for (const char* name : kQuivers) {
      const Quiver q = named_quiver(name);
      for (int t = 0; t < 5; ++t) {
        const auto r = fixture::random_pair(q, f, fixture::random_dims(q.vertex_count(), 0, 3, rng), rng);
        const auto lambda = fixture::random_weights(f, q.vertex_count(), rng);
        std::vector<std::size_t> flips;
        for (std::size_t a = 0; a < q.arrow_count(); ++a)
          if (rng.coin()) flips.push_back(a);
        const auto flipped = reorient(r, flips);
        EXPECT_EQ(flipped.base(), reorient_quiver(q, flips));
        EXPECT_EQ(moment_defect(flipped, lambda).per_vertex, moment_defect(r, lambda).per_vertex);
        EXPECT_EQ(classify_relation(flipped, lambda, 0).relation, classify_relation(r, lambda, 0).relation);
      }
    }
  }
}
