#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ccpp {

enum class ErrorCode {
  // dataset
  MissingValue,
  ParseError,
  HeaderMismatch,
  EmptyFile,
  UnknownColumn,
  BadRatios,
  ZeroDeviation,
  BadBinCount,
  // scaling
  EmptyInput,
  DegenerateColumn,
  NonPositive,
  // correlation
  LengthMismatch,
  ConstantColumn,
  NoAdmissibleForm,
  DegenerateR,
  TooFewSamples,
  // network / model file
  DimensionMismatch,
  NonFiniteInput,
  BadArchitecture,
  InvalidModel,
  IoError,
  FormatVersionMismatch,
  CorruptModel,
  // training
  ConstantTargets,
  BracketFailure,
  NonFiniteLoss,
  // evaluation
  ZeroTarget,
  // optimizer
  EmptyBox,
  // shared
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Library module that raises `code`.
std::string_view module_of(ErrorCode code) noexcept;

struct CellLocation {
  std::size_t row = 0;  // 1-based data row (header excluded)
  std::size_t column = 0;  // 1-based
};

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<CellLocation> cell = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  const std::optional<CellLocation>& cell() const noexcept { return cell_; }

 private:
  ErrorCode code_;
  std::optional<CellLocation> cell_;
};

}  // namespace ccpp
