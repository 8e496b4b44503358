#pragma once

#include <stdexcept>
#include <string>

namespace uroc {

enum class ErrorCode {
    // input validation
    LengthMismatch,
    NonFiniteValue,
    TooFewInstances,
    NotBinaryOutcome,
    InvalidThinningParams,
    GridTooCoarse,
    MovieWeightMismatch,
    OutOfRange,
    SizeCapExceeded,
    Overflow,
    MissingColumn,
    ParseError,
    EmptyFile,
    // degenerate data
    DegenerateOutcomes,
    SingleClassOutcome,
    TiesPresent,
    TiesInOutcomes,
    NotPositiveDefinite,
    // i/o
    IoFailure,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message, long long index = -1)
        : std::runtime_error(std::move(message)), code_(code), index_(index) {}

    ErrorCode code() const noexcept { return code_; }

    // 1-based position of the offending element/row, or -1 when not applicable.
    long long index() const noexcept { return index_; }

private:
    ErrorCode code_;
    long long index_;
};

// Process exit code classes: 2 input error, 3 degenerate data, 4 i/o.
inline int exit_code_for(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::DegenerateOutcomes:
        case ErrorCode::SingleClassOutcome:
        case ErrorCode::TiesPresent:
        case ErrorCode::TiesInOutcomes:
        case ErrorCode::NotPositiveDefinite:
            return 3;
        case ErrorCode::IoFailure:
            return 4;
        default:
            return 2;
    }
}

inline const char* error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::NonFiniteValue: return "NonFiniteValue";
        case ErrorCode::TooFewInstances: return "TooFewInstances";
        case ErrorCode::NotBinaryOutcome: return "NotBinaryOutcome";
        case ErrorCode::InvalidThinningParams: return "InvalidThinningParams";
        case ErrorCode::GridTooCoarse: return "GridTooCoarse";
        case ErrorCode::MovieWeightMismatch: return "MovieWeightMismatch";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::SizeCapExceeded: return "SizeCapExceeded";
        case ErrorCode::Overflow: return "Overflow";
        case ErrorCode::MissingColumn: return "MissingColumn";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::EmptyFile: return "EmptyFile";
        case ErrorCode::DegenerateOutcomes: return "DegenerateOutcomes";
        case ErrorCode::SingleClassOutcome: return "SingleClassOutcome";
        case ErrorCode::TiesPresent: return "TiesPresent";
        case ErrorCode::TiesInOutcomes: return "TiesInOutcomes";
        case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
        case ErrorCode::IoFailure: return "IoFailure";
    }
    return "Unknown";
}

}  // namespace uroc
