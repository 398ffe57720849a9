#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "preproj/field.hpp"

namespace preproj {

/// Univariate polynomial with little-endian coefficients. The representation
/// is kept trimmed: the leading coefficient is nonzero unless the polynomial
/// is zero, in which case the coefficient list is empty.
class Poly {
 public:
  explicit Poly(Field field);
  Poly(Field field, std::vector<Scalar> coeffs);

  static Poly constant(const Field& field, const Scalar& c);
  static Poly x(const Field& field);
  static Poly monomial(const Field& field, const Scalar& c, std::size_t degree);

  const Field& field() const { return field_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const;
  Scalar coeff(std::size_t i) const;
  Scalar lead() const;
  const std::vector<Scalar>& coeffs() const { return coeffs_; }

  Poly monic() const;
  Poly derivative() const;
  Scalar eval(const Scalar& at) const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b);

 private:
  void trim();

  Field field_;
  std::vector<Scalar> coeffs_;
};

struct DivMod {
  Poly quotient;
  Poly remainder;
};

DivMod divmod(const Poly& a, const Poly& b);
inline Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).remainder; }
inline Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).quotient; }

/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(Poly a, Poly b);
Poly powmod(const Poly& base, std::uint64_t exponent, const Poly& modulus);
Poly map_coefficients(const Poly& f, const Embedding& embed);

struct Factor {
  Poly poly;  // monic irreducible
  int multiplicity;
};

/// Complete factorisation over a finite field (square-free, distinct-degree,
/// then equal-degree splitting). Factors come sorted by degree, then by
/// coefficients in canonical order. The leading coefficient is dropped.
std::vector<Factor> factor(const Poly& f);

bool is_irreducible(const Poly& f);

/// Least common multiple of the degrees of the irreducible factors: the
/// degree of the splitting field over the coefficient field.
unsigned splitting_degree(const Poly& f);

/// Roots lying in the coefficient field, with multiplicity, in canonical
/// order. Over Q only rational roots are returned.
std::vector<std::pair<Scalar, int>> roots(const Poly& f);

}  // namespace preproj
