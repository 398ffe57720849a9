#pragma once

#include <cstddef>
#include <vector>

#include "preproj/error.hpp"
#include "preproj/representation.hpp"

/// Expect `expr` to throw preproj::Error with the given code.
#define EXPECT_ERROR(expr, error_code)                                        \
  do {                                                                        \
    try {                                                                     \
      (void)(expr);                                                           \
      ADD_FAILURE() << #expr " did not throw";                                \
    } catch (const ::preproj::Error& e) {                                     \
      EXPECT_EQ(e.code(), ::preproj::ErrorCode::error_code) << e.what();      \
    }                                                                         \
  } while (false)

namespace fixture {

using namespace preproj;

inline Matrix ints(const Field& f, const std::vector<std::vector<std::int64_t>>& rows) {
  return Matrix::from_ints(f, rows);
}

inline Vector vec(const Field& f, const std::vector<std::int64_t>& xs) {
  Vector v;
  for (auto x : xs) v.push_back(f.from_int(x));
  return v;
}

/// The 2x2 Jordan block with ones above the diagonal.
inline Matrix jordan2(const Field& f) { return ints(f, {{0, 1}, {0, 0}}); }

/// Jordan quiver pair a = J2, b = diag(0, 1): commutator of rank one.
inline PairRep jordan_nearly(const Field& f) {
  return PairRep::from_pair(named_quiver("jordan"), f, {2}, {jordan2(f)}, {ints(f, {{0, 0}, {0, 1}})});
}

/// Random double-quiver representation with the given dims.
inline PairRep random_pair(const Quiver& q, const Field& f, const DimVector& dims, Rng& rng) {
  std::vector<Matrix> x, xi;
  for (const auto& a : q.arrows()) {
    x.push_back(Matrix::random(f, dims[a.head], dims[a.tail], rng));
    xi.push_back(Matrix::random(f, dims[a.tail], dims[a.head], rng));
  }
  return PairRep::from_pair(q, f, dims, std::move(x), std::move(xi));
}

inline DimVector random_dims(std::size_t n, std::int64_t lo, std::int64_t hi, Rng& rng) {
  DimVector d(n);
  for (auto& x : d) x = rng.between(lo, hi);
  return d;
}

inline Weights random_weights(const Field& f, std::size_t n, Rng& rng) {
  Weights w{f, {}};
  for (std::size_t i = 0; i < n; ++i) w.values.push_back(f.random(rng));
  return w;
}

/// Random weights with λ·dims = 0, adjusting the last vertex whose
/// dimension is invertible in the field. Zero when no such vertex exists.
inline Weights weights_killing(const Field& f, const DimVector& dims, Rng& rng) {
  Weights w = random_weights(f, dims.size(), rng);
  for (std::size_t k = dims.size(); k-- > 0;) {
    const Scalar dk = f.from_int(dims[k]);
    if (f.is_zero(dk)) continue;
    w.values[k] = f.zero();
    w.values[k] = f.neg(f.div(w.dot(dims), dk));
    return w;
  }
  return Weights::zero(f, dims.size());
}

}  // namespace fixture
