#include "wulff/errors.hpp"

namespace wulff {

std::string_view error_name(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::NonPositiveSupport: return "NonPositiveSupport";
    case ErrorCode::NonConvexAnisotropy: return "NonConvexAnisotropy";
    case ErrorCode::AsymmetricAnisotropy: return "AsymmetricAnisotropy";
    case ErrorCode::ConvexityLost: return "ConvexityLost";
    case ErrorCode::NonFiniteState: return "NonFiniteState";
    case ErrorCode::NegativeDiscriminant: return "NegativeDiscriminant";
    case ErrorCode::EnvelopeViolated: return "EnvelopeViolated";
    case ErrorCode::InequalityViolated: return "InequalityViolated";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IoError: return "IoError";
    }
    return "UnknownError";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(error_name(code)) + ": " + detail),
      code_(code), detail_(detail) {}

} // namespace wulff
