#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace permsq {

enum class ErrorCode {
  kDuplicateLetter,
  kOutOfRange,
  kInvalidPermutation,
  kNonPositiveLetter,
  kSizeLimit,
  kOddSize,
  kNotInImage,
  kMalformedMatching,
  kInvalidWitness,
  kPreconditionViolation,
  kWitnessCheckFailed,
  kParse,
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDuplicateLetter: return "DuplicateLetter";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kInvalidPermutation: return "InvalidPermutation";
    case ErrorCode::kNonPositiveLetter: return "NonPositiveLetter";
    case ErrorCode::kSizeLimit: return "SizeLimit";
    case ErrorCode::kOddSize: return "OddSize";
    case ErrorCode::kNotInImage: return "NotInImage";
    case ErrorCode::kMalformedMatching: return "MalformedMatching";
    case ErrorCode::kInvalidWitness: return "InvalidWitness";
    case ErrorCode::kPreconditionViolation: return "PreconditionViolation";
    case ErrorCode::kWitnessCheckFailed: return "WitnessCheckFailed";
    case ErrorCode::kParse: return "ParseError";
  }
  return "Unknown";
}

// Every failure raised by the library carries one of the codes above so
// callers (notably the CLI) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace permsq
