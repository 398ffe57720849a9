#pragma once

#include "preproj/matrix.hpp"

namespace preproj {

/// Square a, b of equal size with cached commutator c = ab − ba.
struct ACInstance {
  Matrix a;
  Matrix b;
  Matrix c;

  ACInstance(Matrix a, Matrix b);
};

/// Proper nonzero subspace invariant under a and b when rank(ab − ba) ≤ 1.
/// The result may live over an extension of the input field (see
/// Subspace::field()). Throws RankTooHigh or RootsUnavailable.
Subspace common_invariant(const ACInstance& inst);

ACInstance extend_scalars(const ACInstance& inst, const Field& field);

}  // namespace preproj
