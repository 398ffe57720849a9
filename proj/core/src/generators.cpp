#include "preproj/generators.hpp"

#include <algorithm>

#include "preproj/error.hpp"
#include "preproj/homological.hpp"
#include "preproj/infinity.hpp"

namespace preproj {

std::string to_string(GenMode m) {
  switch (m) {
    case GenMode::SolveNearly: return "SolveNearly";
    case GenMode::ConjugatedSum: return "ConjugatedSum";
    case GenMode::EllLift: return "EllLift";
    case GenMode::WeylSum: return "WeylSum";
  }
  return "SolveNearly";
}

std::optional<GenMode> parse_gen_mode(const std::string& s) {
  for (auto m : {GenMode::SolveNearly, GenMode::ConjugatedSum, GenMode::EllLift, GenMode::WeylSum})
    if (s == to_string(m)) return m;
  return std::nullopt;
}

std::optional<PairRep> solve_nearly(const Representation& x_rep, const Weights& lambda, std::size_t v,
                                    const Vector& x, Rng& rng) {
  const Field& f = x_rep.field();
  const Quiver& q = x_rep.quiver();
  require(lambda.values.size() == q.vertex_count(), ErrorCode::DimensionMismatch, "weights do not match quiver");
  const PhiMap pm = phi_map(x_rep, x_rep);
  const std::size_t nd = pm.matrix.cols(), rows = pm.matrix.rows();
  const std::size_t dv = x_rep.dim(v);
  const std::size_t ny = x.empty() ? 0 : dv;
  require(x.empty() || x.size() == dv, ErrorCode::DimensionMismatch, "x has the wrong length");

  Matrix a(f, rows, nd + ny);
  a.set_block(0, 0, pm.matrix);
  for (std::size_t c = 0; c < ny; ++c)
    for (std::size_t r = 0; r < dv; ++r) a(pm.codomain_offsets[v] + c * dv + r, nd + c) = f.neg(x[r]);
  Vector rhs(rows, f.zero());
  for (std::size_t i = 0; i < q.vertex_count(); ++i) {
    const std::size_t d = x_rep.dim(i);
    for (std::size_t k = 0; k < d; ++k) rhs[pm.codomain_offsets[i] + k * d + k] = lambda.values[i];
  }
  auto sol = solve_affine(a, rhs);
  if (!sol) return std::nullopt;
  Vector z = sol->particular;
  const Matrix& ns = sol->nullspace.basis();
  for (std::size_t j = 0; j < ns.cols(); ++j) {
    const Scalar c = f.random(rng);
    if (f.is_zero(c)) continue;
    for (std::size_t r = 0; r < z.size(); ++r) z[r] = f.add(z[r], f.mul(c, ns(r, j)));
  }
  z.resize(nd);
  return PairRep::from_pair(q, f, x_rep.dims(), x_rep.matrices(), pm.unpack_domain(z));
}

namespace {

constexpr std::size_t kNearlyAttempts = 8;

Vector random_nonzero_vector(const Field& f, std::size_t n, Rng& rng) {
  Vector x(n, f.zero());
  if (n == 0) return x;
  do {
    for (auto& e : x) e = f.random(rng);
  } while (is_zero_vector(f, x));
  return x;
}

PairRep conjugate(const PairRep& r, Rng& rng) {
  std::vector<Matrix> basis;
  for (std::size_t i = 0; i < r.base().vertex_count(); ++i)
    basis.push_back(Matrix::random_invertible(r.field(), r.rep().dim(i), rng));
  return change_basis(r, basis);
}

// A random column at v. The degenerate choice lies in the image of a
// singular endomorphism of X, which leaves room for a nonzero y.
Vector pick_column(const Representation& x, std::size_t v, bool degenerate, Rng& rng) {
  const Field& f = x.field();
  const std::size_t d = x.dim(v);
  if (degenerate && d > 1) {
    const auto end = hom_space(x, x);
    Matrix phi(f, d, d);
    for (const auto& b : end) phi = phi + b[v].scaled(f.random(rng));
    const auto rs = roots(char_poly(phi));
    if (!rs.empty()) {
      const Matrix shifted = phi - Matrix::identity(f, d).scaled(rs[rng.below(rs.size())].first);
      const Vector u = mul_vector(shifted, random_nonzero_vector(f, d, rng));
      if (!is_zero_vector(f, u)) return u;
    }
  }
  return random_nonzero_vector(f, d, rng);
}

std::optional<PairRep> try_solve(const GenSpec& s, const DimVector& dims, bool nearly, bool degenerate, Rng& rng) {
  Representation x = random_rep(s.quiver, s.field, dims, rng);
  Vector col = nearly ? pick_column(x, s.v, degenerate, rng) : Vector{};
  return solve_nearly(x, s.lambda, s.v, col, rng);
}

// Attempts alternate between generic and degenerate columns; an instance
// with nonzero defect at v is preferred over a module.
template <class F>
PairRep prefer_nearly(const GenSpec& s, F&& attempt) {
  std::optional<PairRep> fallback;
  for (std::size_t k = 0; k < s.retries; ++k) {
    auto r = attempt(k % 2 == 1);
    if (!r) continue;
    if (classify_relation(*r, s.lambda, s.v).relation == Relation::Nearly) return *r;
    if (!fallback) fallback = std::move(r);
    if (k + 1 >= kNearlyAttempts) break;
  }
  if (fallback) return *fallback;
  throw Error(ErrorCode::RetriesExhausted, "no solution after " + std::to_string(s.retries) + " attempts");
}

template <class F>
PairRep with_retries(const GenSpec& s, F&& attempt) {
  for (std::size_t k = 0; k < s.retries; ++k)
    if (auto r = attempt()) return *r;
  throw Error(ErrorCode::RetriesExhausted, "no solution after " + std::to_string(s.retries) + " attempts");
}

// Split dims into two nonzero parts, each with λ·part = 0.
std::optional<std::pair<DimVector, DimVector>> split_dims(const GenSpec& s, Rng& rng) {
  const Field& f = s.field;
  const bool lambda_zero = std::all_of(s.lambda.values.begin(), s.lambda.values.end(),
                                       [&](const Scalar& x) { return f.is_zero(x); });
  if (lambda_zero && rng.coin()) {
    for (int tries = 0; tries < 16; ++tries) {
      DimVector a(s.dims.size());
      for (std::size_t i = 0; i < a.size(); ++i) a[i] = rng.between(0, s.dims[i]);
      const DimVector b = sub(s.dims, a);
      if (total(a) > 0 && total(b) > 0) return std::make_pair(a, b);
    }
  }
  const AffineData aff = affine_classify(s.quiver);
  if (!aff.is_affine) return std::nullopt;
  std::int64_t m = 0;
  for (std::size_t i = 0; i < aff.delta.size(); ++i)
    if (aff.delta[i] == 1) m = s.dims[i];
  if (m < 2 || scale(aff.delta, m) != s.dims) return std::nullopt;
  const std::int64_t k = rng.between(1, m - 1);
  return std::make_pair(scale(aff.delta, k), scale(aff.delta, m - k));
}

PairRep weyl_blocks(const Field& f, std::uint64_t p, std::size_t m, const Scalar& lambda, Rng& rng) {
  const auto n = static_cast<std::size_t>(p);
  Matrix d(f, n, n), t(f, n, n);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    d(k, k + 1) = f.from_int(static_cast<std::int64_t>(k + 1));
    t(k + 1, k) = lambda;
  }
  const Quiver q = named_quiver("jordan");
  std::vector<PairRep> parts(m, PairRep::from_pair(q, f, {static_cast<std::int64_t>(p)}, {d}, {t}));
  return conjugate(direct_sum(parts), rng);
}

}  // namespace

PairRep gen_nearly(const GenSpec& s) {
  const Quiver& q = s.quiver;
  const Field& f = s.field;
  require(s.dims.size() == q.vertex_count() && s.lambda.values.size() == q.vertex_count(),
          ErrorCode::DimensionMismatch, "dims and weights must match the quiver");
  require(s.v < q.vertex_count(), ErrorCode::UnknownName, "vertex out of range");
  require(s.lambda.field == f, ErrorCode::FieldMismatch, "weights live over a different field");
  for (auto d : s.dims) require(d >= 0, ErrorCode::DimensionMismatch, "negative dimension");
  require(f.is_zero(s.lambda.dot(s.dims)), ErrorCode::Infeasible, "λ·dims ≠ 0");
  Rng rng(s.seed);

  PairRep out;
  switch (s.mode) {
    case GenMode::SolveNearly:
      out = prefer_nearly(s, [&](bool degenerate) { return try_solve(s, s.dims, true, degenerate, rng); });
      break;
    case GenMode::ConjugatedSum: {
      const auto parts = split_dims(s, rng);
      if (!parts) {
        out = conjugate(
            prefer_nearly(s, [&](bool degenerate) { return try_solve(s, s.dims, true, degenerate, rng); }), rng);
        break;
      }
      PairRep a =
          prefer_nearly(s, [&](bool degenerate) { return try_solve(s, parts->first, true, degenerate, rng); });
      PairRep b = with_retries(s, [&] { return try_solve(s, parts->second, false, false, rng); });
      out = conjugate(rng.coin() ? direct_sum({a, b}) : direct_sum({b, a}), rng);
      break;
    }
    case GenMode::EllLift: {
      // A module over Q_∞ with one dimension at ∞ restricts to a nearly pair.
      const InfinityQuiver iq = infinity_quiver(q, s.v, s.lambda);
      DimVector dims = s.dims;
      dims.push_back(1);
      out = prefer_nearly(s, [&](bool degenerate) -> std::optional<PairRep> {
        const Representation x = random_rep(q, f, s.dims, rng);
        Representation xi(iq.quiver, f, dims);
        for (std::size_t a = 0; a < q.arrow_count(); ++a) xi.set_matrix(a, x.matrix(a));
        const Vector col = pick_column(x, s.v, degenerate, rng);
        xi.set_matrix(iq.arrow, Matrix::from_columns(f, col.size(), {col}));
        auto lifted = solve_nearly(xi, iq.weights, s.v, {}, rng);
        if (!lifted) return std::nullopt;
        return restrict(InfRep{*lifted, iq.weights, iq.infinity, iq.arrow});
      });
      break;
    }
    case GenMode::WeylSum: {
      require(q.vertex_count() == 1 && q.arrow_count() == 1, ErrorCode::PreconditionFailed,
              "WeylSum needs the Jordan quiver");
      const std::uint64_t p = f.characteristic();
      require(p != 0 && s.dims[0] > 0 && s.dims[0] % static_cast<std::int64_t>(p) == 0,
              ErrorCode::PreconditionFailed, "WeylSum needs positive characteristic p dividing the dimension");
      require(!f.is_zero(s.lambda.values[0]), ErrorCode::PreconditionFailed, "WeylSum needs λ ≠ 0");
      out = weyl_blocks(f, p, static_cast<std::size_t>(s.dims[0] / static_cast<std::int64_t>(p)),
                        s.lambda.values[0], rng);
      break;
    }
  }
  require(classify_relation(out, s.lambda, s.v).nearly, ErrorCode::AssertionFailed,
          "generated instance is not nearly");
  return out;
}

PairRep weyl_pair(std::uint64_t p, std::size_t m, std::uint64_t seed) {
  require(is_prime(p) && m >= 1, ErrorCode::PreconditionFailed, "weyl_pair needs a prime p and m ≥ 1");
  const Field f = Field::prime(p);
  Rng rng(seed);
  return weyl_blocks(f, p, m, f.one(), rng);
}

Weights random_balanced_weights(const Quiver& q, const Field& field, Rng& rng, double zero_chance) {
  const AffineData aff = affine_classify(q);
  require(aff.is_affine, ErrorCode::NotAffine, "balanced weights need an affine quiver");
  Weights w = Weights::zero(field, q.vertex_count());
  if (zero_chance > 0 && static_cast<double>(rng.below(1u << 20)) < zero_chance * (1u << 20)) return w;
  const std::size_t e = aff.extending_vertices.front();
  Scalar rest = field.zero();
  for (std::size_t i = 0; i < q.vertex_count(); ++i) {
    if (i == e) continue;
    w.values[i] = field.random(rng);
    rest = field.add(rest, field.mul(w.values[i], field.from_int(aff.delta[i])));
  }
  w.values[e] = field.neg(rest);
  return w;
}

ACInstance random_almost_commuting(const Field& field, std::size_t n, Rng& rng) {
  const Quiver q = named_quiver("jordan");
  auto solve = [&](const Matrix& a) {
    const Representation x(q, field, {static_cast<std::int64_t>(n)}, {a});
    const auto pair = solve_nearly(x, Weights::zero(field, 1), 0, random_nonzero_vector(field, n, rng), rng);
    require(pair.has_value(), ErrorCode::AssertionFailed, "rank-one commutator system is always solvable");
    return pair->xi(0);
  };
  if (!field.is_rationals()) {
    Matrix a = Matrix::random(field, n, n, rng);
    Matrix b = solve(a);
    return ACInstance(std::move(a), std::move(b));
  }
  // Solve against an integral triangular T, then conjugate by a unimodular
  // P = L U so that entries stay small.
  // A scalar T would leave only the eigenvectors of b, which need not be
  // rational, so T(0, 1) is kept nonzero.
  Matrix t(field, n, n), l = Matrix::identity(field, n), u = Matrix::identity(field, n);
  for (std::size_t i = 0; i < n; ++i) {
    t(i, i) = field.from_int(rng.between(-3, 3));
    for (std::size_t j = i + 1; j < n; ++j) {
      t(i, j) = field.from_int(rng.between(-2, 2));
      l(j, i) = field.from_int(rng.between(-1, 1));
      u(i, j) = field.from_int(rng.between(-1, 1));
    }
  }
  if (n > 1 && field.is_zero(t(0, 1))) t(0, 1) = field.one();
  const Matrix s = solve(t);
  const Matrix p = l * u, p_inv = *inverse(p);
  return ACInstance(p * t * p_inv, p * s * p_inv);
}

}  // namespace preproj
