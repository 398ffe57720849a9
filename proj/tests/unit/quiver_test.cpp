#include <gtest/gtest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "preproj/homological.hpp"
#include "preproj/quiver.hpp"

using namespace preproj;

namespace {

Quiver a2() {
  Quiver q;
  q.add_vertex("1");
  q.add_vertex("2");
  q.add_arrow("a", "1", "2");
  return q;
}

}  // namespace

TEST(DoubleQuiver, SingleArrow) {
  const Quiver d = double_quiver(a2());
  ASSERT_EQ(d.arrow_count(), 2u);
  EXPECT_EQ(d.arrow(0).name, "a");
  EXPECT_EQ(d.arrow(0).tail, 0u);
  EXPECT_EQ(d.arrow(0).head, 1u);
  EXPECT_EQ(d.arrow(1).name, star_name("a"));
  EXPECT_EQ(d.arrow(1).tail, 1u);
  EXPECT_EQ(d.arrow(1).head, 0u);
}

TEST(DoubleQuiver, JordanHasTwoLoops) {
  const Quiver d = double_quiver(named_quiver("jordan"));
  ASSERT_EQ(d.arrow_count(), 2u);
  for (const auto& a : d.arrows()) {
    EXPECT_EQ(a.tail, 0u);
    EXPECT_EQ(a.head, 0u);
  }
}

TEST(DoubleQuiver, NoArrows) {
  Quiver q;
  q.add_vertex("x");
  EXPECT_EQ(double_quiver(q), q);
}

TEST(Quiver, NameCollisionAndUnknownName) {
  Quiver q = a2();
  EXPECT_ERROR(q.add_vertex("1"), NameCollision);
  EXPECT_ERROR(q.vertex_index("nope"), UnknownName);
}

TEST(EulerForm, Examples) {
  EXPECT_EQ(euler_form(named_quiver("kronecker"), {1, 1}, {1, 1}), 0);
  EXPECT_EQ(euler_form(a2(), {1, 0}, {0, 1}), -1);
}

TEST(AffineClassify, Families) {
  for (int n = 1; n <= 5; ++n) {
    const auto aff = affine_classify(named_quiver("cycle:" + std::to_string(n)));
    EXPECT_TRUE(aff.is_affine);
    EXPECT_EQ(aff.delta, DimVector(n, 1));
    EXPECT_TRUE(aff.has_oriented_cycle);
  }
  const auto k = affine_classify(named_quiver("kronecker"));
  EXPECT_TRUE(k.is_affine);
  EXPECT_EQ(k.delta, (DimVector{1, 1}));
  EXPECT_EQ(k.extending_vertices, (std::vector<std::size_t>{0, 1}));
  const auto d4 = affine_classify(named_quiver("Dtilde4"));
  EXPECT_TRUE(d4.is_affine);
  EXPECT_EQ(d4.delta, (DimVector{2, 1, 1, 1, 1}));
  EXPECT_EQ(affine_classify(named_quiver("jordan")).delta, DimVector{1});
  EXPECT_FALSE(affine_classify(a2()).is_affine);
}

TEST(AffineClassify, ExtendingVerticesHaveUnitDelta) {
  for (const char* name : {"jordan", "cycle:2", "cycle:4", "kronecker", "Dtilde4"}) {
    const auto aff = affine_classify(named_quiver(name));
    ASSERT_FALSE(aff.extending_vertices.empty()) << name;
    for (auto v : aff.extending_vertices) EXPECT_EQ(aff.delta[v], 1) << name;
  }
}

TEST(Defect, Examples) {
  const Quiver k = named_quiver("kronecker");
  const auto aff = affine_classify(k);
  EXPECT_EQ(defect(k, aff, aff.delta), 0);
  for (std::int64_t n = 0; n < 5; ++n) {
    EXPECT_EQ(defect(k, aff, {n, n + 1}), -1);
    EXPECT_EQ(defect(k, aff, {n + 1, n}), 1);
  }
}

TEST(Defect, ProjectiveAtExtendingVertexIsMinusOne) {
  for (const char* name : {"kronecker", "Dtilde4"}) {
    const Quiver q = named_quiver(name);
    const auto aff = affine_classify(q);
    for (auto v : aff.extending_vertices) EXPECT_EQ(defect(q, aff, proj_dim_vector(q, v)), -1) << name;
  }
}

TEST(InfinityQuiver, Counting) {
  const Field f = Field::prime(5);
  const Quiver j = named_quiver("jordan");
  const auto inf = infinity_quiver(j, 0, Weights::zero(f, 1));
  EXPECT_EQ(inf.quiver.vertex_count(), 2u);
  EXPECT_EQ(inf.quiver.arrow_count(), 2u);
  EXPECT_EQ(inf.quiver.arrow(inf.arrow).tail, inf.infinity);
  EXPECT_EQ(inf.quiver.arrow(inf.arrow).head, 0u);
  EXPECT_TRUE(f.is_zero(inf.weights.values[inf.infinity]));
  const Quiver d4 = named_quiver("Dtilde4");
  const auto inf4 = infinity_quiver(d4, 1, Weights::zero(f, 5));
  EXPECT_EQ(inf4.quiver.vertex_count(), 6u);
  EXPECT_EQ(inf4.quiver.arrow_count(), 5u);
}

TEST(ProjDimVector, Examples) {
  EXPECT_EQ(proj_dim_vector(a2(), 0), (DimVector{1, 1}));
  EXPECT_EQ(proj_dim_vector(named_quiver("kronecker"), 0), (DimVector{1, 2}));
  EXPECT_ERROR(proj_dim_vector(named_quiver("cycle:2"), 0), CyclicQuiver);
}

// Properties

TEST(EulerForm, BilinearAndDeltaRadical) {
  Rng rng(21);
  for (const char* name : {"jordan", "cycle:3", "kronecker", "Dtilde4"}) {
    const Quiver q = named_quiver(name);
    const auto delta = affine_classify(q).delta;
    for (int t = 0; t < 50; ++t) {
      const auto a = fixture::random_dims(q.vertex_count(), -4, 4, rng);
      const auto a2v = fixture::random_dims(q.vertex_count(), -4, 4, rng);
      const auto b = fixture::random_dims(q.vertex_count(), -4, 4, rng);
      EXPECT_EQ(euler_form(q, add(a, a2v), b), euler_form(q, a, b) + euler_form(q, a2v, b));
      EXPECT_EQ(euler_form(q, b, add(a, a2v)), euler_form(q, b, a) + euler_form(q, b, a2v));
      EXPECT_EQ(euler_form(q, delta, a) + euler_form(q, a, delta), 0) << name;
    }
    EXPECT_EQ(euler_form(q, delta, delta), 0);
  }
}

TEST(ProjDimVector, HomFromProjectiveCountsDimension) {
  const Field f = Field::prime(5);
  Rng rng(22);
  for (const char* name : {"kronecker", "Dtilde4"}) {
    const Quiver q = named_quiver(name);
    for (int t = 0; t < 10; ++t) {
      const auto dims = fixture::random_dims(q.vertex_count(), 0, 3, rng);
      const Representation m = random_rep(q, f, dims, rng);
      for (std::size_t i = 0; i < q.vertex_count(); ++i) {
        const Representation p = projective_rep(q, f, i);
        EXPECT_EQ(p.dims(), proj_dim_vector(q, i));
        EXPECT_EQ(hom_dim(p, m), static_cast<std::size_t>(dims[i]));
        EXPECT_EQ(oracle::hom_dim(p, m), static_cast<std::size_t>(dims[i]));
      }
    }
  }
}
