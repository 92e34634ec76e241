#pragma once

#include <stdexcept>
#include <string>

namespace cvpoly {

/// Failure categories shared by every module. The numeric values are part of
/// the C API (see cvpoly.h) and must stay in sync with `cvp_status`.
enum class ErrorCode : int {
    InvalidArgument = 1,
    GridTooNarrow = 2,
    AsymmetricGrid = 3,
    GridMismatch = 4,
    IllConditioned = 5,
    SingularAncilla = 6,
    ZeroNorm = 7,
    ZeroAncilla = 8,
    UnsupportedInput = 9,
    EmptyScanRange = 10,
    EmptyEnsemble = 11,
};

const char *error_code_name(ErrorCode code);

class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message);
    ErrorCode code() const noexcept {
        return code_;
    }

   private:
    ErrorCode code_;
};

/// True for the failures the CLI reports as "numerical" (exit code 3).
bool is_numerical_failure(ErrorCode code);

}  // namespace cvpoly
