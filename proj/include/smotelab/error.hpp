#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace smotelab {

enum class ErrorCode {
  InvalidSample,
  SampleTooSmall,
  IndexOutOfRange,
  RankOutOfRange,
  InvalidCount,
  InvalidDistribution,
  DomainError,
  EmptySample,
  DegenerateSupport,
  InvalidArgument,
  InsufficientData,
  FileNotFound,
  ColumnNotFound,
  ParseError,
  EmptyAfterCleaning,
  DegenerateRange,
  IoError,
  ConfigError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries a machine-readable code next to
/// the human-readable message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace smotelab
