#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hyplyap {

enum class ErrorCode {
  InvalidParams,
  SingularSystem,
  SingularMatrix,
  TableInconsistent,
  Overflow,
  InsufficientData,
  IntegerGamma,
  NonUnimodular,
  NoRealization,
  ChamberWall,
  ParseError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::TableInconsistent: return "TableInconsistent";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::IntegerGamma: return "IntegerGamma";
    case ErrorCode::NonUnimodular: return "NonUnimodular";
    case ErrorCode::NoRealization: return "NoRealization";
    case ErrorCode::ChamberWall: return "ChamberWall";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace hyplyap
