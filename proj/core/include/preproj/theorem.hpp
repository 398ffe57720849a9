#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "preproj/decompose.hpp"
#include "preproj/simplicity.hpp"

namespace preproj {

enum class Provenance { NonRegular, MultiTube, SingleTubeSearch, CycleReorient, LoopLemma, GenericSearch };
std::string to_string(Provenance p);

/// A proper nonzero subrepresentation of `parent`, which is the input pair
/// extended to the field the witness was found over.
struct SubmoduleWitness {
  PairRep parent;
  SubRep sub;
  std::vector<Provenance> path;  // outermost case first

  Provenance provenance() const { return path.front(); }
  std::string provenance_string() const;
};

/// Independent re-check against the original input: parent is the input
/// extended to parent.field(), and sub is proper, nonzero and closed under
/// every arrow of the double quiver.
bool verify_witness(const PairRep& input, const SubmoduleWitness& w);

struct EngineOptions {
  SearchBudget budget;
  std::uint64_t seed = 0;
  std::size_t regular_candidates = 200;         // random cyclic submodules when a regular one is required
  std::uint64_t cyclic_exhaustive_limit = 20000;  // spin every homogeneous vector below this cost
  std::size_t lattice_limit = 2000;             // sums and intersections examined
  std::size_t extension_rounds = 4;      // field extensions tried by the generic search
};

SubmoduleWitness find_submodule_nonregular(const PairRep& r, const Weights& lambda, const AffineData& aff,
                                           const EngineOptions& opts = {});
SubmoduleWitness find_submodule_multitube(const PairRep& r, const Weights& lambda, const AffineData& aff,
                                          std::size_t v, const EngineOptions& opts = {});
SubmoduleWitness find_submodule_cycle(const PairRep& r, const Weights& lambda, std::size_t v,
                                      const EngineOptions& opts = {});
/// Certified search via the simplicity procedure, extending the field when
/// the input is simple over its field but has a larger endomorphism ring.
/// With `regular_over`, only submodules whose underlying representation has
/// defect zero are accepted. Throws BudgetExhausted or HypothesisViolated
/// (the input is absolutely simple).
SubmoduleWitness generic_submodule(const PairRep& r, const EngineOptions& opts,
                                   const AffineData* regular_over = nullptr);

/// Dispatcher: oriented cycle, then non-regular, then several tubes, then
/// single-tube search. Throws PreconditionFailed naming the failed hypothesis.
SubmoduleWitness nontrivial_submodule(const PairRep& r, const Weights& lambda, std::size_t v,
                                      const EngineOptions& opts = {});

struct TubeReductionData {
  Weights lambda_prime;
  DimVector delta_prime;
  std::size_t v_prime = 0;
  std::vector<DimVector> s_dims;
  std::vector<DimVector> p_dims;
};

/// λ′_j = Σ_i λ_i ⟨P(i), S_j⟩. With empty p_dims the pairing ⟨P(i), β⟩ = β_i
/// is used directly (valid on any quiver, including oriented cycles).
/// Throws BadTubeData.
TubeReductionData reduced_weights(const Weights& lambda, const std::vector<DimVector>& p_dims,
                                  const std::vector<DimVector>& s_dims, const Quiver& q, std::size_t v);

}  // namespace preproj
