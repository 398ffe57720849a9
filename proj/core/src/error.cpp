#include "preproj/error.hpp"

namespace preproj {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::IncompatibleFields: return "IncompatibleFields";
    case ErrorCode::RootsUnavailable: return "RootsUnavailable";
    case ErrorCode::FieldTooLarge: return "FieldTooLarge";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NameCollision: return "NameCollision";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::DisconnectedQuiver: return "DisconnectedQuiver";
    case ErrorCode::CyclicQuiver: return "CyclicQuiver";
    case ErrorCode::NotAffine: return "NotAffine";
    case ErrorCode::InvalidSubrep: return "InvalidSubrep";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::RankTooHigh: return "RankTooHigh";
    case ErrorCode::NotNearly: return "NotNearly";
    case ErrorCode::NotAModule: return "NotAModule";
    case ErrorCode::NoLift: return "NoLift";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::AssertionFailed: return "AssertionFailed";
    case ErrorCode::SingleTube: return "SingleTube";
    case ErrorCode::NotACycle: return "NotACycle";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::BadTubeData: return "BadTubeData";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::RetriesExhausted: return "RetriesExhausted";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace preproj
