#pragma once

#include <stdexcept>
#include <string>

namespace isospec {

// Stable error codes. The numeric values are part of the CLI contract
// (machine-format reports print them), so never renumber.
enum class ErrorCode : int {
    DegenerateConfiguration = 10,
    InvalidGraph = 20,
    InvalidEdge = 21,
    UnsupportedSignature = 22,
    OutOfRange = 30,
    SignatureMismatch = 31,
    UnsupportedCuspCase = 40,
    LoopEdge = 41,
    NumericalInstability = 50,
    ResourceLimit = 51,
    ParseError = 60,
    ValidationError = 61,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace isospec
