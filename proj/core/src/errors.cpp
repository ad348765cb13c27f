#include "gof/errors.hpp"

namespace gof {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::EmptyInput: return "EmptyInput";
        case ErrorKind::NonFiniteValue: return "NonFiniteValue";
        case ErrorKind::TooFewObservations: return "TooFewObservations";
        case ErrorKind::DegenerateSample: return "DegenerateSample";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::DegenerateBinning: return "DegenerateBinning";
        case ErrorKind::InsufficientDF: return "InsufficientDF";
        case ErrorKind::NumericalUnderflow: return "NumericalUnderflow";
        case ErrorKind::SampleSizeOutOfRange: return "SampleSizeOutOfRange";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::IOError: return "IOError";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace gof
