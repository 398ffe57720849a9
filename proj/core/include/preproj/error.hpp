#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace preproj {

enum class ErrorCode {
  FieldMismatch,
  IncompatibleFields,
  RootsUnavailable,
  FieldTooLarge,
  DimensionMismatch,
  NameCollision,
  UnknownName,
  DisconnectedQuiver,
  CyclicQuiver,
  NotAffine,
  InvalidSubrep,
  BudgetExhausted,
  RankTooHigh,
  NotNearly,
  NotAModule,
  NoLift,
  HypothesisViolated,
  AssertionFailed,
  SingleTube,
  NotACycle,
  PreconditionFailed,
  BadTubeData,
  Infeasible,
  RetriesExhausted,
  Parse,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) throw Error(code, what);
}

}  // namespace preproj
