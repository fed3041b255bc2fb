#include "smotelab/error.hpp"

namespace smotelab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidSample: return "InvalidSample";
    case ErrorCode::SampleTooSmall: return "SampleTooSmall";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::RankOutOfRange: return "RankOutOfRange";
    case ErrorCode::InvalidCount: return "InvalidCount";
    case ErrorCode::InvalidDistribution: return "InvalidDistribution";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::DegenerateSupport: return "DegenerateSupport";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::ColumnNotFound: return "ColumnNotFound";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::EmptyAfterCleaning: return "EmptyAfterCleaning";
    case ErrorCode::DegenerateRange: return "DegenerateRange";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace smotelab
