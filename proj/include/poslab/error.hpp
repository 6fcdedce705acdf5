#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace poslab {

enum class ErrorCode {
    SingularMetric,
    StencilOutOfChart,
    FrameNotNormalized,
    LengthMismatch,
    DimMismatch,
    ParamDomain,
    BidegreeOutOfRange,
    NonpositivePolarization,
    Unsupported,
    UnknownBundle,
    ParseError,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::SingularMetric: return "SINGULAR_METRIC";
        case ErrorCode::StencilOutOfChart: return "STENCIL_OUT_OF_CHART";
        case ErrorCode::FrameNotNormalized: return "FRAME_NOT_NORMALIZED";
        case ErrorCode::LengthMismatch: return "LENGTH_MISMATCH";
        case ErrorCode::DimMismatch: return "DIM_MISMATCH";
        case ErrorCode::ParamDomain: return "PARAM_DOMAIN";
        case ErrorCode::BidegreeOutOfRange: return "BIDEGREE_OUT_OF_RANGE";
        case ErrorCode::NonpositivePolarization: return "NONPOSITIVE_POLARIZATION";
        case ErrorCode::Unsupported: return "UNSUPPORTED";
        case ErrorCode::UnknownBundle: return "UNKNOWN_BUNDLE";
        case ErrorCode::ParseError: return "PARSE_ERROR";
    }
    return "UNKNOWN";
}

/// Library-wide exception; every throw site carries a machine-readable code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace poslab
