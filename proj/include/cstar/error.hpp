// Error type shared by every cstar module.

#ifndef CSTAR_ERROR_HPP_
#define CSTAR_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace cstar {

enum class ErrorCode {
  InvalidMatrix,
  ShapeMismatch,
  NotInSpan,
  EmptyAlgebra,
  NotInAlgebra,
  NoQuasiBasis,
  NotIntermediate,
  NotUnitary,
  NotCompatible,
  ConstructionFailure,
  NonCentralIndex,
  DegenerateIntermediate,
  ClosedFormMismatch,
  NumericIntegrity,
  TooLarge,
  NotSubgroup,
  ParseError,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidMatrix: return "InvalidMatrix";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotInSpan: return "NotInSpan";
    case ErrorCode::EmptyAlgebra: return "EmptyAlgebra";
    case ErrorCode::NotInAlgebra: return "NotInAlgebra";
    case ErrorCode::NoQuasiBasis: return "NoQuasiBasis";
    case ErrorCode::NotIntermediate: return "NotIntermediate";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotCompatible: return "NotCompatible";
    case ErrorCode::ConstructionFailure: return "ConstructionFailure";
    case ErrorCode::NonCentralIndex: return "NonCentralIndex";
    case ErrorCode::DegenerateIntermediate: return "DegenerateIntermediate";
    case ErrorCode::ClosedFormMismatch: return "ClosedFormMismatch";
    case ErrorCode::NumericIntegrity: return "NumericIntegrity";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotSubgroup: return "NotSubgroup";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(to_string(code)) + ": " + msg), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace cstar

#endif  // CSTAR_ERROR_HPP_
