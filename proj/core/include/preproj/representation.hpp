#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "preproj/matrix.hpp"
#include "preproj/quiver.hpp"

namespace preproj {

/// Matrices X_a : X_{t(a)} -> X_{h(a)}, one per arrow, shaped dims(h) x dims(t).
class Representation {
 public:
  Representation() = default;
  /// All maps zero.
  Representation(Quiver quiver, Field field, DimVector dims);
  Representation(Quiver quiver, Field field, DimVector dims, std::vector<Matrix> matrices);

  const Quiver& quiver() const { return quiver_; }
  const Field& field() const { return field_; }
  const DimVector& dims() const { return dims_; }
  std::size_t dim(std::size_t i) const { return static_cast<std::size_t>(dims_.at(i)); }
  std::size_t total_dim() const;
  const Matrix& matrix(std::size_t a) const { return matrices_.at(a); }
  const Matrix& matrix(const std::string& arrow) const { return matrices_.at(quiver_.arrow_index(arrow)); }
  const std::vector<Matrix>& matrices() const { return matrices_; }
  void set_matrix(std::size_t a, Matrix m);

  friend bool operator==(const Representation& a, const Representation& b);

 private:
  Quiver quiver_;
  Field field_;
  DimVector dims_;
  std::vector<Matrix> matrices_;
};

/// A representation of the double quiver viewed as a pair (X, ξ): X on the
/// arrows of the base quiver, ξ_a = X_{a*} on the starred arrows.
class PairRep {
 public:
  PairRep() = default;
  /// rep.quiver() must equal double_quiver(base).
  PairRep(Quiver base, Representation rep);
  static PairRep from_pair(const Quiver& base, const Field& field, const DimVector& dims, std::vector<Matrix> x,
                           std::vector<Matrix> xi);

  const Quiver& base() const { return base_; }
  const Representation& rep() const { return rep_; }
  const Field& field() const { return rep_.field(); }
  const DimVector& dims() const { return rep_.dims(); }
  std::size_t total_dim() const { return rep_.total_dim(); }
  const Matrix& x(std::size_t a) const { return rep_.matrix(a); }
  const Matrix& xi(std::size_t a) const { return rep_.matrix(base_.arrow_count() + a); }
  std::vector<Matrix> xi_all() const;
  /// The underlying Q-representation X.
  Representation underlying() const;

  friend bool operator==(const PairRep& a, const PairRep& b) { return a.base_ == b.base_ && a.rep_ == b.rep_; }

 private:
  Quiver base_;
  Representation rep_;
};

struct MomentDefect {
  std::vector<Matrix> per_vertex;
  std::vector<std::size_t> ranks;
};

/// X_{c,i} = Σ_{h(a)=i} X_a X_{a*} − Σ_{t(a)=i} X_{a*} X_a − λ_i·1, summed over base arrows.
MomentDefect moment_defect(const PairRep& r, const Weights& lambda);

enum class Relation { Module, Nearly, Neither };
std::string to_string(Relation r);

struct Classification {
  Relation relation;
  bool nearly;  // true for Module as well
  MomentDefect defect;
};
Classification classify_relation(const PairRep& r, const Weights& lambda, std::size_t v);

/// I-graded subspace; spaces[i] lives in the parent's space at vertex i.
struct SubRep {
  std::vector<Subspace> spaces;

  DimVector dims() const;
  std::size_t total_dim() const;
};

bool is_subrep(const Representation& r, const SubRep& s);
SubRep zero_subrep(const Representation& r);
SubRep full_subrep(const Representation& r);
SubRep subrep_sum(const SubRep& a, const SubRep& b);
bool subrep_contains(const SubRep& a, const SubRep& b);
bool operator==(const SubRep& a, const SubRep& b);

struct DirectSum {
  Representation rep;
  std::vector<DimVector> offsets;  // per part, per vertex
};
DirectSum direct_sum(const std::vector<Representation>& parts);
PairRep direct_sum(const std::vector<PairRep>& parts);
/// Submatrix of a block-diagonal arrow matrix between two parts.
Matrix extract_block(const DirectSum& s, std::size_t arrow, std::size_t row_part, std::size_t col_part);

using GradedVector = std::pair<std::size_t, Vector>;
SubRep spin_submodule(const Representation& r, const std::vector<GradedVector>& vectors);

/// The representation carried by a SubRep, in the coordinates of its bases.
Representation restrict_to(const Representation& r, const SubRep& s);
PairRep restrict_to(const PairRep& r, const SubRep& s);

struct Quotient {
  Representation rep;
  std::vector<Matrix> complement;  // per vertex, columns spanning the chosen complement
};
/// Complements extend the SubRep basis by standard vectors in index order. Throws InvalidSubrep.
Quotient quotient(const Representation& r, const SubRep& s);

/// Full preimage in r of a SubRep of the quotient.
SubRep preimage(const Representation& r, const SubRep& s, const Quotient& q, const SubRep& t);

/// Graded base change: X_a -> B_h^{-1} X_a B_t. Columns of B_i are the new basis.
Representation change_basis(const Representation& r, const std::vector<Matrix>& basis);
PairRep change_basis(const PairRep& r, const std::vector<Matrix>& basis);

/// Flip arrows: (a, a*) -> (old a*, −old a).
PairRep reorient(const PairRep& r, const std::vector<std::size_t>& flips);

Representation extend_scalars(const Representation& r, const Field& field);
PairRep extend_scalars(const PairRep& r, const Field& field);
Weights extend_scalars(const Weights& w, const Field& field);
SubRep extend_scalars(const SubRep& s, const Field& field);

/// Arrows reversed, matrices transposed.
Representation dual(const Representation& r);

Representation simple_rep(const Quiver& q, const Field& field, std::size_t i);
/// Path bases; acyclic quivers only.
Representation projective_rep(const Quiver& q, const Field& field, std::size_t i);
Representation injective_rep(const Quiver& q, const Field& field, std::size_t i);

Representation random_rep(const Quiver& q, const Field& field, const DimVector& dims, Rng& rng);

}  // namespace preproj
