#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "preproj/representation.hpp"

namespace preproj {

struct SearchBudget {
  std::size_t random_elements = 200;    // random algebra elements tried
  std::size_t vectors_per_kernel = 4;   // random kernel vectors spun per factor
  std::uint64_t exhaustive_limit = 1u << 20;
};

struct SimpleCertificate {
  bool basis_spins = false;  // every standard basis vector spins to the whole
  bool norton = false;       // Norton's criterion passed for some random element
  bool exhaustive = false;   // every homogeneous vector up to scalar spins to the whole
};

struct SimplicityResult {
  bool simple = false;
  SimpleCertificate certificate;
  SubRep witness;  // proper nonzero subrepresentation when !simple
};

/// MeatAxe-style decision over the field of definition. Throws BudgetExhausted
/// when undecided. Any witness returned has been re-verified.
SimplicityResult simplicity(const Representation& r, const SearchBudget& budget, std::uint64_t seed);

/// Number of vectors scanned by the exhaustive check: Σ_i |F|^{dim_i}, or
/// nullopt over Q or on overflow.
std::optional<std::uint64_t> exhaustive_cost(const Representation& r);

/// Spin every nonzero homogeneous vector up to scalar. Returns a witness if one
/// exists, std::nullopt if the representation is simple. Finite fields only.
std::optional<SubRep> exhaustive_submodule(const Representation& r);

/// Distinct proper cyclic subrepresentations. Spins every homogeneous vector
/// up to scalar when that costs at most `exhaustive_limit` spins; otherwise
/// spins `samples` random homogeneous vectors and kernel vectors of random
/// algebra elements.
std::vector<SubRep> cyclic_submodules(const Representation& r, std::size_t samples, std::uint64_t exhaustive_limit,
                                      Rng& rng);

/// Proper nonzero and closed under the arrows.
bool is_proper_witness(const Representation& r, const SubRep& s);

/// Vertexwise SubRep from a subspace of the total space ⊕_i R_i that is
/// stable under the vertex idempotents.
SubRep split_total(const Representation& r, const Subspace& total);

}  // namespace preproj
