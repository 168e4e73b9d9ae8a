#include "isospec/errors.hpp"

namespace isospec {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::DegenerateConfiguration: return "DegenerateConfiguration";
        case ErrorCode::InvalidGraph: return "InvalidGraph";
        case ErrorCode::InvalidEdge: return "InvalidEdge";
        case ErrorCode::UnsupportedSignature: return "UnsupportedSignature";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::SignatureMismatch: return "SignatureMismatch";
        case ErrorCode::UnsupportedCuspCase: return "UnsupportedCuspCase";
        case ErrorCode::LoopEdge: return "LoopEdge";
        case ErrorCode::NumericalInstability: return "NumericalInstability";
        case ErrorCode::ResourceLimit: return "ResourceLimit";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ValidationError: return "ValidationError";
    }
    return "Unknown";
}

}  // namespace isospec
