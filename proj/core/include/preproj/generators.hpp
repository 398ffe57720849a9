#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "preproj/almost_commuting.hpp"
#include "preproj/representation.hpp"

namespace preproj {

enum class GenMode { SolveNearly, ConjugatedSum, EllLift, WeylSum };
std::string to_string(GenMode m);
std::optional<GenMode> parse_gen_mode(const std::string& s);

struct GenSpec {
  Quiver quiver;
  std::size_t v = 0;
  Weights lambda;
  DimVector dims;
  Field field;
  std::uint64_t seed = 0;
  GenMode mode = GenMode::SolveNearly;
  std::size_t retries = 32;
};

/// A nearly representation at v with the requested dimension vector,
/// re-verified before it is returned. Throws Infeasible (λ·dims ≠ 0),
/// RetriesExhausted, or PreconditionFailed (WeylSum outside its domain).
PairRep gen_nearly(const GenSpec& spec);

/// Solve for the starred maps with X fixed: Φ(ξ)_i = λ_i·1 off v and
/// Φ(ξ)_v − λ_v·1 = x·yᵀ with y unknown. An empty x asks for a module.
/// std::nullopt when the system has no solution.
std::optional<PairRep> solve_nearly(const Representation& x_rep, const Weights& lambda, std::size_t v,
                                    const Vector& x, Rng& rng);

/// m copies of the p-dimensional pair (d/dt, t) on K[t]/(t^p) over GF(p),
/// conjugated by a seeded random matrix; xy − yx = 1.
PairRep weyl_pair(std::uint64_t p, std::size_t m, std::uint64_t seed);

/// Random weights with λ·δ = 0 for an affine quiver; zero with
/// probability `zero_chance`.
Weights random_balanced_weights(const Quiver& q, const Field& field, Rng& rng, double zero_chance = 0.0);

/// Square pair of size n with rank(ab − ba) ≤ 1. Over ℚ, a has integer
/// eigenvalues.
ACInstance random_almost_commuting(const Field& field, std::size_t n, Rng& rng);

}  // namespace preproj
