#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace semihilb {

enum class ErrorCode {
  NotHermitian,
  NotPSD,
  ZeroWeight,
  ContextMismatch,
  ANullVector,
  DimensionMismatch,
  NotABounded,
  NotAAdjointable,
  ZeroRank,
  BadRank,
  UnknownCheckName,
  PreconditionNotParallel,
  NotUpperTriangular,
  ParseError,
};

std::string_view to_string(ErrorCode code);

// Input errors are malformed or inconsistent data; everything else is a
// mathematical precondition the data failed to meet.
bool is_input_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& detail);

}  // namespace semihilb
