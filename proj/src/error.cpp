#include "gcert/error.hpp"

namespace gcert {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownGenerator: return "UnknownGenerator";
    case ErrorCode::MalformedToken: return "MalformedToken";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::IdentityHasNoRoot: return "IdentityHasNoRoot";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::ElementCapExceeded: return "ElementCapExceeded";
    case ErrorCode::NotInverse: return "NotInverse";
    case ErrorCode::NotCommuting: return "NotCommuting";
    case ErrorCode::ExponentCapExceeded: return "ExponentCapExceeded";
    case ErrorCode::ShiftDimensionMismatch: return "ShiftDimensionMismatch";
    case ErrorCode::InvalidGeneratingSet: return "InvalidGeneratingSet";
    case ErrorCode::QuotientLawFails: return "QuotientLawFails";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
  }
  return "Unknown";
}

}  // namespace gcert
