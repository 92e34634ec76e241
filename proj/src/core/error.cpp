#include "cvpoly/error.hpp"

namespace cvpoly {

const char *error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument:
            return "InvalidArgument";
        case ErrorCode::GridTooNarrow:
            return "GridTooNarrow";
        case ErrorCode::AsymmetricGrid:
            return "AsymmetricGrid";
        case ErrorCode::GridMismatch:
            return "GridMismatch";
        case ErrorCode::IllConditioned:
            return "IllConditioned";
        case ErrorCode::SingularAncilla:
            return "SingularAncilla";
        case ErrorCode::ZeroNorm:
            return "ZeroNorm";
        case ErrorCode::ZeroAncilla:
            return "ZeroAncilla";
        case ErrorCode::UnsupportedInput:
            return "UnsupportedInput";
        case ErrorCode::EmptyScanRange:
            return "EmptyScanRange";
        case ErrorCode::EmptyEnsemble:
            return "EmptyEnsemble";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {
}

bool is_numerical_failure(ErrorCode code) {
    switch (code) {
        case ErrorCode::ZeroNorm:
        case ErrorCode::SingularAncilla:
        case ErrorCode::ZeroAncilla:
        case ErrorCode::IllConditioned:
        case ErrorCode::GridTooNarrow:
            return true;
        default:
            return false;
    }
}

}  // namespace cvpoly
