#include "semihilb/error.hpp"

namespace semihilb {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::ZeroWeight: return "ZeroWeight";
    case ErrorCode::ContextMismatch: return "ContextMismatch";
    case ErrorCode::ANullVector: return "ANullVector";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotABounded: return "NotABounded";
    case ErrorCode::NotAAdjointable: return "NotAAdjointable";
    case ErrorCode::ZeroRank: return "ZeroRank";
    case ErrorCode::BadRank: return "BadRank";
    case ErrorCode::UnknownCheckName: return "UnknownCheckName";
    case ErrorCode::PreconditionNotParallel: return "PreconditionNotParallel";
    case ErrorCode::NotUpperTriangular: return "NotUpperTriangular";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian:
    case ErrorCode::NotPSD:
    case ErrorCode::ZeroWeight:
    case ErrorCode::ContextMismatch:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::BadRank:
    case ErrorCode::UnknownCheckName:
    case ErrorCode::ParseError:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void raise(ErrorCode code, const std::string& detail) { throw Error(code, detail); }

}  // namespace semihilb
