#include "ccpp/error.hpp"

namespace ccpp {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MissingValue: return "MissingValue";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::HeaderMismatch: return "HeaderMismatch";
    case ErrorCode::EmptyFile: return "EmptyFile";
    case ErrorCode::UnknownColumn: return "UnknownColumn";
    case ErrorCode::BadRatios: return "BadRatios";
    case ErrorCode::ZeroDeviation: return "ZeroDeviation";
    case ErrorCode::BadBinCount: return "BadBinCount";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::DegenerateColumn: return "DegenerateColumn";
    case ErrorCode::NonPositive: return "NonPositive";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ConstantColumn: return "ConstantColumn";
    case ErrorCode::NoAdmissibleForm: return "NoAdmissibleForm";
    case ErrorCode::DegenerateR: return "DegenerateR";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::BadArchitecture: return "BadArchitecture";
    case ErrorCode::InvalidModel: return "InvalidModel";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::FormatVersionMismatch: return "FormatVersionMismatch";
    case ErrorCode::CorruptModel: return "CorruptModel";
    case ErrorCode::ConstantTargets: return "ConstantTargets";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::NonFiniteLoss: return "NonFiniteLoss";
    case ErrorCode::ZeroTarget: return "ZeroTarget";
    case ErrorCode::EmptyBox: return "EmptyBox";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

std::string_view module_of(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MissingValue:
    case ErrorCode::ParseError:
    case ErrorCode::HeaderMismatch:
    case ErrorCode::EmptyFile:
    case ErrorCode::UnknownColumn:
    case ErrorCode::BadRatios:
    case ErrorCode::ZeroDeviation:
    case ErrorCode::BadBinCount: return "dataset";
    case ErrorCode::EmptyInput:
    case ErrorCode::DegenerateColumn:
    case ErrorCode::NonPositive: return "scaling";
    case ErrorCode::LengthMismatch:
    case ErrorCode::ConstantColumn:
    case ErrorCode::NoAdmissibleForm:
    case ErrorCode::DegenerateR:
    case ErrorCode::TooFewSamples: return "correlation";
    case ErrorCode::DimensionMismatch:
    case ErrorCode::NonFiniteInput:
    case ErrorCode::BadArchitecture:
    case ErrorCode::InvalidModel:
    case ErrorCode::FormatVersionMismatch:
    case ErrorCode::CorruptModel: return "network";
    case ErrorCode::ConstantTargets:
    case ErrorCode::BracketFailure:
    case ErrorCode::NonFiniteLoss: return "training";
    case ErrorCode::ZeroTarget: return "evaluation";
    case ErrorCode::EmptyBox: return "optimizer";
    case ErrorCode::IoError: return "io";
    case ErrorCode::InvalidArgument: return "core";
  }
  return "core";
}

Error::Error(ErrorCode code, const std::string& message, std::optional<CellLocation> cell)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      cell_(cell) {}

}  // namespace ccpp
