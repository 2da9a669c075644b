#pragma once

#include <stdexcept>
#include <string>

namespace qgls {

/// Failure categories shared by the whole library. The CLI maps these onto
/// its exit-code contract, tests match on them, and the Python bindings
/// surface them by name.
enum class ErrorCode {
    NotHermitian,
    NegativeEigenvalue,
    DimensionMismatch,
    GainNotLoss,
    LossNotGain,
    ConstraintViolated,
    InadmissibleState,
    NegativeOccupation,
    EmptyWindow,
    SubunityGain,
    DomainError,
    AsymmetricSampling,
    TruncationOverflow,
    SyntaxError,
    SemanticError,
    BadGrid,
    IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

} // namespace qgls
