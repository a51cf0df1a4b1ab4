#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tdpair {

enum class Errc {
  DivisionByZero,
  CtxMismatch,
  InvalidArgument,
  ParseError,
  DimensionMismatch,
  IndexOutOfRange,
  RootOfUnity,
  UnsupportedDiameter,
  NotFeasible,
  ConstraintViolated,
  NotDistinct,
  InconsistentType,
  NotApplicable,
  NotZigzagBracketType,
};

inline std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::CtxMismatch: return "CtxMismatch";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ParseError: return "ParseError";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::RootOfUnity: return "RootOfUnity";
    case Errc::UnsupportedDiameter: return "UnsupportedDiameter";
    case Errc::NotFeasible: return "NotFeasible";
    case Errc::ConstraintViolated: return "ConstraintViolated";
    case Errc::NotDistinct: return "NotDistinct";
    case Errc::InconsistentType: return "InconsistentType";
    case Errc::NotApplicable: return "NotApplicable";
    case Errc::NotZigzagBracketType: return "NotZigzagBracketType";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace tdpair
