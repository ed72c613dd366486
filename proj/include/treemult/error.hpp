#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace treemult {

enum class ErrorCode {
  NonDivisible,
  NotPalindromic,
  OddDegree,
  InvalidSpec,
  ZeroPolynomial,
  LimitExceeded,
  MalformedGraph6,
  NotATree,
  IoFailure,
  EngineMismatch,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonDivisible: return "NON_DIVISIBLE";
    case ErrorCode::NotPalindromic: return "NOT_PALINDROMIC";
    case ErrorCode::OddDegree: return "ODD_DEGREE";
    case ErrorCode::InvalidSpec: return "INVALID_SPEC";
    case ErrorCode::ZeroPolynomial: return "ZERO_POLYNOMIAL";
    case ErrorCode::LimitExceeded: return "LIMIT_EXCEEDED";
    case ErrorCode::MalformedGraph6: return "MALFORMED_GRAPH6";
    case ErrorCode::NotATree: return "NOT_A_TREE";
    case ErrorCode::IoFailure: return "IO_FAILURE";
    case ErrorCode::EngineMismatch: return "ENGINE_MISMATCH";
  }
  return "UNKNOWN";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace treemult
