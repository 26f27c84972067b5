#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace asianjump {

enum class ErrorCode {
    invalid_argument,  // malformed inputs / broken type invariants
    domain,            // argument outside a function's mathematical domain
    regime,            // wrong moneyness regime for the requested formula
    assumption,        // model violates a validity assumption (moments/tails)
    no_solution,       // root bracketing failed
    non_converged,     // iteration or refinement budget exhausted
    unsupported,       // operation not defined for this model kind / style
    io,                // file or JSON problems
    internal
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    // Non-convergence errors carry the best estimate reached before giving up.
    Error(ErrorCode code, const std::string& what, double best_estimate)
        : std::runtime_error(what), code_(code), best_estimate_(best_estimate) {}

    ErrorCode code() const noexcept { return code_; }
    std::optional<double> best_estimate() const noexcept { return best_estimate_; }

private:
    ErrorCode code_;
    std::optional<double> best_estimate_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
    throw Error(code, msg);
}

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg, double best_estimate) {
    throw Error(code, msg, best_estimate);
}

}  // namespace asianjump
