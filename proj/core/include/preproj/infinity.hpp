#pragma once

#include "preproj/representation.hpp"

namespace preproj {

/// A pair representation over Q_∞ together with its weights (λ_∞ = 0).
struct InfRep {
  PairRep pair;
  Weights lambda;
  std::size_t infinity;  // vertex ∞
  std::size_t arrow;     // connecting arrow ∞ -> v in the base quiver
};

/// X_∞ = X_v, X_a = −X_{c,v}, X_{a*} = 1.
InfRep ell(const PairRep& r, const Weights& lambda, std::size_t v);
/// X_∞ = X_v, X_a = 1, X_{a*} = −X_{c,v}.
InfRep rr(const PairRep& r, const Weights& lambda, std::size_t v);
/// Image of the natural map ell(R) -> rr(R). Throws NotNearly.
InfRep gamma(const PairRep& r, const Weights& lambda, std::size_t v);

/// The natural map ell(R) -> rr(R): identity on I, −X_{c,v} at ∞.
std::vector<Matrix> natural_map(const PairRep& r, const Weights& lambda, std::size_t v);

/// Drop vertex ∞ and the connecting arrows.
PairRep restrict(const InfRep& y);

/// No nonzero maps to or from S(∞). Throws NotAModule.
bool is_bistable(const InfRep& y);

}  // namespace preproj
