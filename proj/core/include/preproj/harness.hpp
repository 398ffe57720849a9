#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "preproj/error.hpp"
#include "preproj/generators.hpp"
#include "preproj/serialize.hpp"
#include "preproj/theorem.hpp"

namespace preproj {

struct TrialSpec {
  Quiver quiver;
  std::int64_t m = 2;
  Field field;
  std::uint64_t seed = 0;              // already offset by the trial index
  std::optional<GenMode> mode;         // unset: chosen from the seed
  std::optional<Weights> lambda;       // unset: random with λ·δ = 0
  std::optional<std::size_t> vertex;   // unset: first extending vertex
  SearchBudget budget;
};

struct TrialReport {
  std::size_t index = 0;
  std::string instance_hash;
  GenMode mode = GenMode::SolveNearly;
  Relation classification = Relation::Neither;
  std::string provenance;
  DimVector witness_dims;
  std::string witness_field;
  bool verified = false;
  std::optional<ErrorCode> error;
  std::string message;
  double elapsed_ms = 0;
};

/// Generate one nearly instance with dims mδ and run the submodule engine
/// on it. Engine errors are recorded in the report, not thrown.
TrialReport run_theorem_trial(const TrialSpec& spec, std::size_t index);

Json to_json(const TrialReport& r);

}  // namespace preproj
