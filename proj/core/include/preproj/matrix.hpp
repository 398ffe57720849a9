#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "preproj/field.hpp"
#include "preproj/poly.hpp"

namespace preproj {

using Vector = std::vector<Scalar>;

/// Dense row-major matrix over a Field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Field field, std::size_t rows, std::size_t cols);

  static Matrix identity(const Field& field, std::size_t n);
  static Matrix from_rows(const Field& field, const std::vector<std::vector<Scalar>>& rows);
  static Matrix from_ints(const Field& field, const std::vector<std::vector<std::int64_t>>& rows);
  static Matrix from_columns(const Field& field, std::size_t rows, const std::vector<Vector>& columns);
  static Matrix random(const Field& field, std::size_t rows, std::size_t cols, Rng& rng);
  static Matrix random_invertible(const Field& field, std::size_t n, Rng& rng);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  Vector column(std::size_t c) const;
  std::vector<Vector> columns() const;
  Vector row(std::size_t r) const;

  Matrix transpose() const;
  Matrix scaled(const Scalar& s) const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& m);
  Matrix select_columns(std::span<const std::size_t> cols) const;
  Matrix hstack(const Matrix& right) const;
  Matrix vstack(const Matrix& below) const;

  bool is_zero() const;
  Scalar trace() const;
  Matrix power(std::uint64_t e) const;

  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

Vector mul_vector(const Matrix& m, const Vector& v);
Matrix block_diagonal(const Field& field, const std::vector<Matrix>& blocks);
Matrix extend_scalars(const Matrix& m, const Embedding& embed);
Vector extend_scalars(const Vector& v, const Embedding& embed);
bool is_zero_vector(const Field& field, const Vector& v);

/// Reduced row echelon form with first-nonzero pivoting.
struct Echelon {
  Matrix rref;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};
Echelon row_reduce(const Matrix& m);
std::size_t rank(const Matrix& m);
std::optional<Matrix> inverse(const Matrix& m);
Scalar determinant(const Matrix& m);

/// A subspace of K^ambient given by a basis stored as matrix columns.
class Subspace {
 public:
  Subspace() = default;
  Subspace(Field field, std::size_t ambient);  // zero subspace
  /// Columns must be linearly independent.
  explicit Subspace(Matrix basis);
  /// Column span of an arbitrary matrix (a basis is extracted).
  static Subspace span(const Matrix& generators);
  static Subspace span(const Field& field, std::size_t ambient, const std::vector<Vector>& vectors);
  static Subspace full(const Field& field, std::size_t ambient);

  const Field& field() const { return basis_.field(); }
  std::size_t ambient() const { return basis_.rows(); }
  std::size_t dim() const { return basis_.cols(); }
  const Matrix& basis() const { return basis_; }

  bool contains(const Vector& v) const;
  bool contains(const Subspace& other) const;
  /// Coordinates of v in the basis; v must lie in the subspace.
  Vector coordinates(const Vector& v) const;
  /// Basis extended by standard basis vectors in index order.
  Matrix completion() const;
  /// Columns added by completion().
  Matrix complement() const;
  Subspace sum(const Subspace& other) const;
  Subspace intersection(const Subspace& other) const;
  bool is_invariant(const Matrix& op) const;

  friend bool operator==(const Subspace& a, const Subspace& b);

 private:
  Matrix basis_;
};

struct RankKerIm {
  std::size_t rank;
  Subspace kernel;
  Subspace image;
};
/// Kernel basis from the reduced echelon form (one vector per free column);
/// image basis is the pivot columns of the input.
RankKerIm rank_ker_im(const Matrix& m);

struct AffineSolution {
  Vector particular;
  Subspace nullspace;
};
/// Solve A x = b. std::nullopt when b is not in the image of A.
std::optional<AffineSolution> solve_affine(const Matrix& a, const Vector& b);

/// Smallest subspace containing the vectors and closed under the operators.
Subspace spin(const Field& field, std::size_t ambient, const std::vector<Vector>& vectors,
              const std::vector<Matrix>& operators);

struct FittingParts {
  Subspace ker_part;  // Ker(phi^n)
  Subspace im_part;   // Im(phi^n)
};
FittingParts fitting(const Matrix& phi);

Poly char_poly(const Matrix& m);
/// Evaluate a polynomial at a square matrix.
Matrix eval_poly(const Poly& f, const Matrix& m);

struct CharRoots {
  Field field;  // field holding the roots (possibly an extension)
  std::vector<std::pair<Scalar, int>> roots;
  bool splits = true;  // false only over Q
};
/// Eigenvalues with algebraic multiplicity. Over a finite field the roots live
/// in the splitting field of the characteristic polynomial, reached through
/// Field::extend. Over Q only rational roots are returned.
CharRoots char_roots(const Matrix& m);

/// Incrementally maintained echelon basis used for spinning and membership.
class EchelonBasis {
 public:
  EchelonBasis(Field field, std::size_t ambient);

  /// Reduce v against the basis; returns the remainder.
  Vector reduce(Vector v) const;
  /// Add v if independent; returns whether the dimension grew.
  bool insert(const Vector& v);
  std::size_t dim() const { return rows_.size(); }
  Matrix basis() const;

 private:
  Field field_;
  std::size_t ambient_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace preproj
