#include "preproj/almost_commuting.hpp"

#include <algorithm>

#include "preproj/error.hpp"

namespace preproj {

ACInstance::ACInstance(Matrix a_in, Matrix b_in) : a(std::move(a_in)), b(std::move(b_in)) {
  require(a.is_square() && b.is_square() && a.rows() == b.rows(), ErrorCode::DimensionMismatch,
          "a and b must be square of equal size");
  c = a * b - b * a;
}

ACInstance extend_scalars(const ACInstance& inst, const Field& field) {
  if (inst.a.field() == field) return inst;
  Embedding e(inst.a.field(), field);
  return ACInstance(extend_scalars(inst.a, e), extend_scalars(inst.b, e));
}

namespace {

/// Least eigenvalue over the smallest extension holding any eigenvalue.
Scalar first_eigenvalue(const Matrix& m, Field& field) {
  const Field base = m.field();
  const Poly cp = char_poly(m);
  if (base.is_finite()) {
    const auto factors = factor(cp);
    int least = factors.front().poly.degree();
    for (const auto& fc : factors) least = std::min(least, fc.poly.degree());
    if (least > 1) {
      const Field big = base.extend(static_cast<unsigned>(least));
      const auto rs = roots(map_coefficients(cp, Embedding(base, big)));
      field = big;
      return rs.front().first;
    }
  }
  const auto rs = roots(cp);
  require(!rs.empty(), ErrorCode::RootsUnavailable, "no eigenvalue in the field of definition");
  field = base;
  return rs.front().first;
}

}  // namespace

Subspace common_invariant(const ACInstance& input) {
  const std::size_t m = input.a.rows();
  require(m > 1, ErrorCode::DimensionMismatch, "need matrices of size at least 2");
  require(rank(input.c) <= 1, ErrorCode::RankTooHigh, "commutator has rank above one");

  Field field = input.a.field();
  const Scalar alpha = first_eigenvalue(input.a, field);
  const ACInstance inst = extend_scalars(input, field);
  const Matrix shifted = inst.a - Matrix::identity(field, m).scaled(alpha);

  Subspace u;
  if (shifted.is_zero()) {
    Field bf = field;
    const Scalar beta = first_eigenvalue(inst.b, bf);
    Matrix b = extend_scalars(inst.b, Embedding(field, bf));
    auto ker = rank_ker_im(b - Matrix::identity(bf, m).scaled(beta)).kernel;
    u = Subspace(ker.basis().block(0, 0, m, 1));
    field = bf;
  } else {
    auto rki = rank_ker_im(shifted);
    const Subspace im_c = rank_ker_im(inst.c).image;
    u = rki.image.contains(im_c) ? rki.image : rki.kernel;
  }

  const ACInstance fin = extend_scalars(inst, field);
  require(u.dim() > 0 && u.dim() < m, ErrorCode::AssertionFailed, "invariant subspace is not proper");
  require(spin(field, m, u.basis().columns(), {fin.a, fin.b}) == u, ErrorCode::AssertionFailed,
          "subspace failed the invariance re-check");
  return u;
}

}  // namespace preproj
