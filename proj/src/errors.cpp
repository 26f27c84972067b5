#include "asianjump/errors.hpp"

namespace asianjump {

const char* error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::invalid_argument: return "invalid_argument";
        case ErrorCode::domain: return "domain";
        case ErrorCode::regime: return "regime";
        case ErrorCode::assumption: return "assumption";
        case ErrorCode::no_solution: return "no_solution";
        case ErrorCode::non_converged: return "non_converged";
        case ErrorCode::unsupported: return "unsupported";
        case ErrorCode::io: return "io";
        case ErrorCode::internal: return "internal";
    }
    return "internal";
}

}  // namespace asianjump
