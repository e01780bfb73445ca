#pragma once

#include <stdexcept>
#include <string>

namespace comdf {

/// Error categories, kept coarse so they map one-to-one onto the C API
/// status codes and the CLI exit-code contract (1 = infeasible design or
/// failed precondition, 2 = bad input).
enum class ErrorCode {
    InvalidArgument,   ///< malformed value or dimension mismatch in inputs
    Parse,             ///< scenario file cannot be parsed or validated
    Infeasible,        ///< a design/stability precondition does not hold
    Numeric,           ///< an iterative solver failed to converge
    Io,                ///< file cannot be read or written
};

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

}  // namespace comdf
