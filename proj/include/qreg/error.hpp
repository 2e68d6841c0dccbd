#pragma once

#include <stdexcept>
#include <string>

namespace qreg {

enum class ErrorCode {
    InvalidArgument,
    DimensionMismatch,
    NotHermitian,
    IndexOutOfRange,
    TooSmall,
    TooLarge,
    InvalidQuantumNumbers,
    InvalidModel,
    OrderingViolated,
    NotPositive,
    InvalidPartition,
    NonPositiveXi,
    EmptyModeList,
    UnstableStep,
    NotSimultaneouslyDiagonalizable,
    InvalidClusterSize,
    ConfigError,
    IoError,
};

const char* to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so
// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline const char* to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InvalidQuantumNumbers: return "InvalidQuantumNumbers";
    case ErrorCode::InvalidModel: return "InvalidModel";
    case ErrorCode::OrderingViolated: return "OrderingViolated";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::NonPositiveXi: return "NonPositiveXi";
    case ErrorCode::EmptyModeList: return "EmptyModeList";
    case ErrorCode::UnstableStep: return "UnstableStep";
    case ErrorCode::NotSimultaneouslyDiagonalizable: return "NotSimultaneouslyDiagonalizable";
    case ErrorCode::InvalidClusterSize: return "InvalidClusterSize";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

} // namespace qreg
