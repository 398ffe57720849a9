#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "preproj/rng.hpp"

namespace preproj {

/// A field element. The value carries no field; arithmetic goes through the
/// owning Field. Finite-field elements are stored as an integer code
/// sum(c_i * p^i) over the coefficients c_i of the polynomial basis.
class Scalar {
 public:
  Scalar() = default;
  explicit Scalar(std::uint64_t code) : value_(code) {}
  explicit Scalar(mpq_class q) : value_(std::move(q)) {}

  bool is_rational() const { return value_.index() == 1; }
  std::uint64_t code() const { return std::get<0>(value_); }
  const mpq_class& rational() const { return std::get<1>(value_); }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.value_ == b.value_; }

 private:
  std::variant<std::uint64_t, mpq_class> value_{std::uint64_t{0}};
};

enum class FieldKind { Rationals, Finite };

/// An exact field: the rationals, a prime field GF(p), or GF(p^k) presented
/// as GF(p)[x]/(modulus). Handles are cheap to copy and immutable.
///
/// A field produced by extend() remembers the field it came from together
/// with the image of that field's generator, so repeated extensions embed
/// data consistently along the tower.
class Field {
 public:
  Field();  // the rationals

  static Field rationals();
  static Field prime(std::uint64_t p);
  /// GF(p^k) with an explicit monic modulus (k+1 coefficients, little-endian).
  static Field finite(std::uint64_t p, std::vector<std::uint64_t> modulus);
  /// GF(p^k) with the canonical modulus: the least monic irreducible of
  /// degree k in coefficient order (c0 varies fastest).
  static Field galois(std::uint64_t p, unsigned degree);

  /// Degree-`factor` extension with the canonical modulus, linked to *this.
  Field extend(unsigned factor) const;

  FieldKind kind() const;
  bool is_finite() const { return kind() == FieldKind::Finite; }
  bool is_rationals() const { return kind() == FieldKind::Rationals; }
  std::uint64_t characteristic() const;  // 0 for the rationals
  unsigned degree() const;               // 1 for prime fields and the rationals
  std::uint64_t order() const;           // finite fields only
  /// Monic modulus, degree()+1 coefficients. Empty for prime fields and Q.
  const std::vector<std::uint64_t>& modulus() const;

  /// The field this one was extended from, if any, and the image of that
  /// field's generator (meaningless when the parent is a prime field).
  std::optional<Field> parent() const;
  const Scalar& parent_generator_image() const;

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(std::int64_t n) const;
  Scalar from_rational(const mpq_class& q) const;  // Q only
  Scalar from_coeffs(std::span<const std::uint64_t> coeffs) const;
  std::vector<std::uint64_t> coeffs(const Scalar& a) const;
  /// Finite fields: the element with the given code, code < order().
  Scalar element(std::uint64_t code) const;
  /// The polynomial generator x (finite fields with degree > 1).
  Scalar generator() const;

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar inv(const Scalar& a) const;
  Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }
  Scalar pow(const Scalar& a, std::uint64_t e) const;
  bool is_zero(const Scalar& a) const;
  bool is_one(const Scalar& a) const { return a == one(); }

  Scalar random(Rng& rng) const;
  Scalar random_nonzero(Rng& rng) const;

  /// Canonical total order: numerator then denominator over Q,
  /// coefficient vectors lexicographically (c0 first) over GF(p^k).
  bool less(const Scalar& a, const Scalar& b) const;
  bool contains(const Scalar& a) const;

  std::string format(const Scalar& a) const;
  std::string name() const;

  friend bool operator==(const Field& a, const Field& b);

  struct Core;

 private:
  struct Lineage;
  Field(std::shared_ptr<const Core> core, std::shared_ptr<const Lineage> lineage);

  std::shared_ptr<const Core> core_;
  std::shared_ptr<const Lineage> lineage_;
};

/// A field embedding source -> target. Identity when the fields are equal;
/// otherwise determined by the extension tower or, failing that, by the
/// least root of the source modulus in the target.
class Embedding {
 public:
  Embedding(const Field& source, const Field& target);

  const Field& source() const { return source_; }
  const Field& target() const { return target_; }
  bool is_identity() const { return identity_; }
  Scalar operator()(const Scalar& a) const;

 private:
  Field source_;
  Field target_;
  bool identity_ = false;
  std::vector<Scalar> powers_;  // images of x^0 .. x^(k-1)
};

bool is_prime(std::uint64_t n);

}  // namespace preproj
