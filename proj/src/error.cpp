#include "sumsetlab/error.hpp"

namespace sumsetlab {

const char *to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::cap_exceeded: return "cap_exceeded";
    case ErrorCode::group_mismatch: return "group_mismatch";
    case ErrorCode::hypothesis_violation: return "hypothesis_violation";
    case ErrorCode::zero_function: return "zero_function";
    case ErrorCode::not_found: return "not_found";
    case ErrorCode::internal: return "internal";
    }
    return "unknown";
}

} // namespace sumsetlab
