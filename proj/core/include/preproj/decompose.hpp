#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "preproj/homological.hpp"

namespace preproj {

enum class RegClass { Unclassified, Preprojective, Regular, Preinjective };
std::string to_string(RegClass c);

struct Summand {
  Representation rep;
  RegClass cls = RegClass::Unclassified;
};

/// X ≅ ⊕ summands. `source` is the input, extended to the field the
/// summands live in (eigenvalues may force an extension). Column block k of
/// basis[i] spans summand k at vertex i, so change_basis(source, basis) is
/// block diagonal with the summands on the diagonal.
struct Decomposition {
  Representation source;
  std::vector<Summand> summands;
  std::vector<Matrix> basis;
  std::vector<DimVector> offsets;  // per summand, per vertex

  const Field& field() const { return source.field(); }
  /// Columns of basis[i] belonging to the given summands, in order.
  std::vector<Matrix> columns_of(const std::vector<std::size_t>& parts) const;
};

struct DecomposeOptions {
  std::size_t failures_to_stop = 40;
  std::size_t extend_after = 8;  // non-splitting draws before extending the field
};

/// Krull–Schmidt decomposition by Fitting splitting of random endomorphisms.
/// Throws BudgetExhausted when splitting stalls.
Decomposition decompose(const Representation& x, std::uint64_t seed, const DecomposeOptions& opts = {});

/// Tag summands by the sign of their defect; all Regular on quivers with an
/// oriented cycle.
Decomposition pri_split(const Quiver& q, const AffineData& aff, Decomposition d);

struct TubePartition {
  std::vector<std::vector<std::size_t>> groups;  // ordered by least member
  std::vector<DimVector> sums;
};
/// Connected components of the graph joining summands with nonzero Hom or
/// Ext¹ in either direction.
TubePartition tube_partition(const std::vector<Representation>& regulars);

/// f ∈ Hom(P, I) with f_v(x) = y. Throws NoLift.
GradedMap hom_lift(const Representation& p, const Representation& i, std::size_t v, const Vector& x,
                   const Vector& y);

}  // namespace preproj
