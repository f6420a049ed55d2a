#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wulff {

enum class ErrorCode {
    NonPositiveSupport,
    NonConvexAnisotropy,
    AsymmetricAnisotropy,
    ConvexityLost,
    NonFiniteState,
    NegativeDiscriminant,
    EnvelopeViolated,
    InequalityViolated,
    GridMismatch,
    InvalidArgument,
    ParseError,
    ValidationError,
    IoError,
};

[[nodiscard]] std::string_view error_name(ErrorCode code) noexcept;

// All library failures are reported through this exception; what() starts
// with the constant name so messages can be matched by callers and tests.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail);

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }
    [[nodiscard]] const std::string& detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::string detail_;
};

} // namespace wulff
